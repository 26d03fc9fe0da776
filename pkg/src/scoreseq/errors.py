"""Exception types shared across the package."""


class ConsistencyError(ArithmeticError):
    """An exact identity that must hold by construction did not.

    Raised when, e.g., a sum that must be divisible by ``n`` is not. This
    always indicates a bug (or a deliberate mutation), never bad input.
    """


class VerificationError(AssertionError):
    """Two independent computations of the same quantity disagree."""


class GuardError(ValueError):
    """Requested size exceeds a resource guard (brute force, sampler DP)."""
