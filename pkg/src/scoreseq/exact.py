"""Exact integers/rationals and outward-rounded decimal enclosures.

Exact values are plain Python ``int`` and :class:`fractions.Fraction`.
Real constants are carried as :class:`Enclosure` objects: closed intervals
whose endpoints are fixed-point decimals with ``precision`` places. Every
operation evaluates its endpoints exactly (as rationals) and then rounds the
lower end down and the upper end up, so the true value is always inside.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from numbers import Rational
from typing import Union

Exact = Union[int, Fraction]

# 40 decimal places of pi, truncated and bumped.
PI_LO = Decimal("3.1415926535897932384626433832795028841971")
PI_HI = Decimal("3.1415926535897932384626433832795028841972")
PI_PLACES = 40

EXP_RANGE = 10


def binomial(n: int, k: int) -> int:
    """Exact C(n, k), zero when k > n."""
    return math.comb(n, k)


def gcd(a: int, b: int) -> int:
    if a < 1 or b < 1:
        raise ValueError(f"gcd expects positive integers, got {a}, {b}")
    return math.gcd(a, b)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Decimal)) or isinstance(x, Rational):
        return Fraction(x)
    raise TypeError(f"not an exact value: {x!r}")


def _scaled_to_decimal(scaled: int, places: int) -> Decimal:
    # String construction is exact regardless of the decimal context.
    return Decimal(f"{scaled}E-{places}")


def floor_decimal(q, places: int) -> Decimal:
    q = _as_fraction(q)
    return _scaled_to_decimal(q.numerator * 10**places // q.denominator, places)


def ceil_decimal(q, places: int) -> Decimal:
    q = _as_fraction(q)
    return _scaled_to_decimal(-(-q.numerator * 10**places // q.denominator), places)


def round_decimal(q, places: int) -> Decimal:
    """Nearest ``places``-digit decimal to ``q`` (ties to even)."""
    r = round(_as_fraction(q), places)
    return _scaled_to_decimal(r.numerator * 10**places // r.denominator, places)


def floor_sqrt_decimal(q, places: int) -> Decimal:
    """floor(sqrt(q)) at ``places`` decimals, computed with one exact rounding."""
    q = _as_fraction(q)
    if q < 0:
        raise ValueError("square root of a negative number")
    return _scaled_to_decimal(
        math.isqrt(q.numerator * 10 ** (2 * places) // q.denominator), places)


def _ceil_sqrt_scaled(q: Fraction, places: int) -> int:
    c = -(-q.numerator * 10 ** (2 * places) // q.denominator)
    r = math.isqrt(c)
    return r if r * r == c else r + 1


@dataclass(frozen=True)
class Enclosure:
    """Closed interval ``[lo, hi]`` of fixed-point decimals."""

    lo: Decimal
    hi: Decimal
    precision: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty enclosure [{self.lo}, {self.hi}]")

    @classmethod
    def from_bounds(cls, lo, hi, precision: int) -> "Enclosure":
        """Smallest ``precision``-place enclosure of the exact interval [lo, hi]."""
        return cls(floor_decimal(lo, precision), ceil_decimal(hi, precision), precision)

    @classmethod
    def point(cls, q, precision: int) -> "Enclosure":
        return cls.from_bounds(q, q, precision)

    @property
    def lo_q(self) -> Fraction:
        return Fraction(self.lo)

    @property
    def hi_q(self) -> Fraction:
        return Fraction(self.hi)

    @property
    def width(self) -> Decimal:
        return ceil_decimal(self.hi_q - self.lo_q, self.precision)

    @property
    def midpoint(self) -> Fraction:
        return (self.lo_q + self.hi_q) / 2

    def contains(self, x) -> bool:
        if isinstance(x, Enclosure):
            return self.lo <= x.lo and x.hi <= self.hi
        x = _as_fraction(x)
        return self.lo_q <= x <= self.hi_q

    __contains__ = contains

    def truncated(self, places: int) -> Decimal | None:
        """Digits shared by both endpoints when truncated to ``places``, else None.

        This is the sense of a printed constant like ``0.718...``.
        """
        a, b = floor_decimal(self.lo_q, places), floor_decimal(self.hi_q, places)
        return a if a == b else None

    def rounded(self, places: int) -> Decimal | None:
        """The ``places``-digit rounding if both endpoints agree on it, else None."""
        a, b = round_decimal(self.lo_q, places), round_decimal(self.hi_q, places)
        return a if a == b else None

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "Enclosure":
        if isinstance(other, Enclosure):
            return other
        q = _as_fraction(other)
        return Enclosure.point(q, self.precision)

    def _exact_pair(self, other):
        other = self._coerce(other)
        return other, min(self.precision, other.precision)

    def __neg__(self) -> "Enclosure":
        # unary minus would round to the decimal context; copy_negate is exact
        return Enclosure(self.hi.copy_negate(), self.lo.copy_negate(), self.precision)

    def __add__(self, other) -> "Enclosure":
        other, p = self._exact_pair(other)
        return Enclosure.from_bounds(self.lo_q + other.lo_q, self.hi_q + other.hi_q, p)

    __radd__ = __add__

    def __sub__(self, other) -> "Enclosure":
        other, p = self._exact_pair(other)
        return Enclosure.from_bounds(self.lo_q - other.hi_q, self.hi_q - other.lo_q, p)

    def __rsub__(self, other) -> "Enclosure":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Enclosure":
        other, p = self._exact_pair(other)
        products = [a * b for a in (self.lo_q, self.hi_q) for b in (other.lo_q, other.hi_q)]
        return Enclosure.from_bounds(min(products), max(products), p)

    __rmul__ = __mul__

    def reciprocal(self) -> "Enclosure":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError(f"enclosure {self} contains zero")
        return Enclosure.from_bounds(1 / self.hi_q, 1 / self.lo_q, self.precision)

    def __truediv__(self, other) -> "Enclosure":
        other, p = self._exact_pair(other)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError(f"enclosure {other} contains zero")
        quotients = [a / b for a in (self.lo_q, self.hi_q) for b in (other.lo_q, other.hi_q)]
        return Enclosure.from_bounds(min(quotients), max(quotients), p)

    def __rtruediv__(self, other) -> "Enclosure":
        return self._coerce(other) / self

    def __pow__(self, k: int) -> "Enclosure":
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        a, b = self.lo_q ** k, self.hi_q ** k
        if k % 2 == 1 or self.lo >= 0:
            return Enclosure.from_bounds(a, b, self.precision)
        if self.hi <= 0:
            return Enclosure.from_bounds(b, a, self.precision)
        return Enclosure.from_bounds(0, max(a, b), self.precision)

    def sqrt(self) -> "Enclosure":
        if self.lo < 0:
            raise ValueError(f"square root of enclosure {self} with negative part")
        p = self.precision
        return Enclosure(floor_sqrt_decimal(self.lo_q, p),
                         _scaled_to_decimal(_ceil_sqrt_scaled(self.hi_q, p), p), p)

    def exp(self, precision: int | None = None) -> "Enclosure":
        return exp_enclosure(self, self.precision if precision is None else precision)

    def __str__(self) -> str:
        return f"[{self.lo:f}, {self.hi:f}]"


def rat_to_enclosure(q, precision: int) -> Enclosure:
    """Tightest ``precision``-place decimal interval containing ``q``."""
    return Enclosure.point(_as_fraction(q), precision)


PI_ENCLOSURE = Enclosure(PI_LO, PI_HI, PI_PLACES)


def sqrt_pi_enclosure(precision: int) -> Enclosure:
    """Enclosure of sqrt(pi) from the embedded 40-place pi interval."""
    if precision < 10:
        raise ValueError(f"precision {precision} is too small to certify (need >= 10)")
    if precision > PI_PLACES:
        raise ValueError(f"precision {precision} exceeds the embedded pi ({PI_PLACES} places)")
    return Enclosure(PI_LO, PI_HI, precision).sqrt()


def _exp_terms(a: Fraction, places: int) -> int:
    """Smallest series length whose Lagrange remainder at ``a >= 0`` is tiny enough.

    Never below 2a + 2, so the upper bounds shrink monotonically with length.
    """
    bound = 3 ** math.ceil(a)
    target = Fraction(1, 10 ** (places + 2))
    k, term = 0, Fraction(1)  # term = a^k / k!
    while k < 2 * a + 2 or term * bound >= target:
        k += 1
        term = term * a / k
    return k


def _exp_bounds(a: Fraction, places: int) -> tuple[Fraction, Fraction]:
    """Exact rational bounds lo <= e^a <= hi with hi - lo < 10^-(places+2)."""
    if a < 0:
        lo, hi = _exp_bounds(-a, places)
        return 1 / hi, 1 / lo
    if a == 0:
        return Fraction(1), Fraction(1)
    k = _exp_terms(a, places)
    partial, term = Fraction(0), Fraction(1)
    for j in range(k):
        partial += term
        term = term * a / (j + 1)
    # term is now a^k / k!; e^xi <= 3^ceil(a) for 0 <= xi <= a.
    return partial, partial + term * 3 ** math.ceil(a)


def exp_enclosure(x: Enclosure, precision: int) -> Enclosure:
    """Enclosure of e^x by truncated Taylor series plus explicit remainder."""
    if max(abs(x.lo), abs(x.hi)) > EXP_RANGE:
        raise ValueError(f"exp argument {x} outside the supported range |x| <= {EXP_RANGE}")
    lo, _ = _exp_bounds(x.lo_q, precision)
    _, hi = _exp_bounds(x.hi_q, precision)
    return Enclosure.from_bounds(lo, hi, precision)
