"""Score-sequence counts and exact power-series transforms.

The count S_n of score sequences on n teams satisfies

    n S_n = sum_{k=1..n} N_k S_{n-k},    S_0 = 1,

with N_k the EGZ numbers. In the language of generating functions N is the
*log transform* of S: the sequence with  sum N_k x^k = x d/dx log S(x).
This module provides that transform, its inverse, convolution powers and
roots on exact series, and the cycle-type (partition) formula for S_n.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .egz import egz_table
from .errors import ConsistencyError, GuardError

try:  # GMP multiplication makes the packed products near-linear.
    from gmpy2 import mpz as _big
except ImportError:  # pragma: no cover
    _big = int

CYCLE_TYPE_MAX = 20
_FAST_MIN_LENGTH = 24


def _normalize(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    if isinstance(c, (int, Fraction)):
        return c
    return Fraction(c)


class ExactSeries:
    """Coefficients c_0, c_1, ... of a power series truncated to ``len`` terms.

    Coefficients are ``int`` when integral and ``Fraction`` otherwise, so
    integer series stay on fast integer arithmetic.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        self.coeffs = tuple(_normalize(c) for c in coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return ExactSeries(self.coeffs[i])
        return self.coeffs[i]

    def __iter__(self) -> Iterator:
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, ExactSeries):
            return self.coeffs == other.coeffs
        if isinstance(other, (tuple, list)):
            return self.coeffs == tuple(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs[:8])
        more = ", ..." if len(self) > 8 else ""
        return f"ExactSeries([{head}{more}], len={len(self)})"

    def truncate(self, length: int) -> "ExactSeries":
        return ExactSeries(self.coeffs[:length])

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def __add__(self, other: "ExactSeries") -> "ExactSeries":
        n = min(len(self), len(other))
        return ExactSeries(a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n]))

    def __sub__(self, other: "ExactSeries") -> "ExactSeries":
        n = min(len(self), len(other))
        return ExactSeries(a - b for a, b in zip(self.coeffs[:n], other.coeffs[:n]))

    def scale(self, factor) -> "ExactSeries":
        return ExactSeries(c * factor for c in self.coeffs)

    def __truediv__(self, divisor) -> "ExactSeries":
        return ExactSeries(Fraction(c) / divisor for c in self.coeffs)

    def __mul__(self, other: "ExactSeries") -> "ExactSeries":
        """Product as power series: truncated to the shorter length."""
        return convolve(self, other, min(len(self), len(other)))


def _as_series(a) -> ExactSeries:
    return a if isinstance(a, ExactSeries) else ExactSeries(a)


def _schoolbook(a: Sequence, b: Sequence, length: int) -> list:
    out = []
    for n in range(length):
        lo, hi = max(0, n - len(b) + 1), min(n, len(a) - 1)
        out.append(sum(a[k] * b[n - k] for k in range(lo, hi + 1)))
    return out


def _kronecker(a: Sequence[int], b: Sequence[int], length: int) -> list[int]:
    """Product of non-negative integer sequences via one big-integer multiply."""
    bits = (max(a).bit_length() + max(b).bit_length()
            + min(len(a), len(b)).bit_length() + 1)
    width = (bits + 7) // 8

    def pack(seq):
        return _big(int.from_bytes(b"".join(c.to_bytes(width, "little") for c in seq), "little"))

    raw = int(pack(a) * pack(b)).to_bytes(width * (len(a) + len(b)), "little")
    return [int.from_bytes(raw[i * width:(i + 1) * width], "little") for i in range(length)]


def _fast_ok(a: Sequence, b: Sequence) -> bool:
    return (min(len(a), len(b)) >= _FAST_MIN_LENGTH
            and all(isinstance(c, int) and c >= 0 for c in a)
            and all(isinstance(c, int) and c >= 0 for c in b))


def convolve(a, b, length: int | None = None, fast: bool = True) -> ExactSeries:
    """Cauchy product of ``a`` and ``b``, keeping ``length`` coefficients.

    ``length`` defaults to the full polynomial product. The packed-integer
    path is used for long non-negative integer inputs and gives identical
    coefficients to the schoolbook loop.
    """
    a, b = _as_series(a).coeffs, _as_series(b).coeffs
    if not a or not b:
        return ExactSeries([])
    full = len(a) + len(b) - 1
    length = full if length is None else length
    a, b = a[:length], b[:length]
    if fast and _fast_ok(a, b) and any(a) and any(b):
        coeffs = _kronecker(a, b, min(length, full))
    else:
        coeffs = _schoolbook(a, b, min(length, full))
    return ExactSeries(coeffs + [0] * (length - len(coeffs)))


def convolution_power(b, r: int, length: int | None = None, fast: bool = True) -> ExactSeries:
    """r-fold convolution b * b * ... * b (r >= 1)."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    b = _as_series(b)
    if length is None:
        length = r * (len(b) - 1) + 1
    result = b.truncate(length)
    for _ in range(r - 1):
        result = convolve(b, result, length, fast=fast)
    return ExactSeries(list(result) + [0] * (length - len(result)))


def log_transform(a) -> ExactSeries:
    """The series h with h_0 = 0 and n a_n = sum_{k=1..n} h_k a_{n-k}."""
    a = _as_series(a)
    if not len(a) or a[0] != 1:
        raise ValueError("log transform needs a_0 = 1")
    h = [0]
    for n in range(1, len(a)):
        h.append(n * a[n] - sum(h[k] * a[n - k] for k in range(1, n)))
    return ExactSeries(h)


def exp_transform(h) -> ExactSeries:
    """Inverse of :func:`log_transform`: A(x) = exp(sum h_k x^k / k)."""
    h = _as_series(h)
    if not len(h) or h[0] != 0:
        raise ValueError("exp transform needs h_0 = 0")
    a = [1]
    for n in range(1, len(h)):
        total = sum(h[k] * a[n - k] for k in range(1, n + 1))
        q, r = divmod(total, n) if isinstance(total, int) else (None, 1)
        a.append(q if r == 0 else Fraction(total) / n)
    return ExactSeries(a)


def convolution_root(a, r: int) -> ExactSeries:
    """The series b with b_0 = 1 and b^{*r} = a, via exp(log(a) / r)."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    return exp_transform(log_transform(a) / r)


@dataclass(frozen=True)
class ScoreTable:
    """S_0..S_{n_max}."""

    values: tuple[int, ...]

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)

    def series(self) -> ExactSeries:
        return ExactSeries(self.values)


def score_recurrence(N: Sequence[int], n_max: int, start: Sequence[int] = (1,)) -> list[int]:
    """Extend S_0, S_1, ... (given as ``start``) to S_{n_max}; ``N[k-1]`` is N_k.

    Every step checks that the convolution sum is divisible by n.
    """
    S = list(start)
    for n in range(len(S), n_max + 1):
        total = sum(N[k - 1] * S[n - k] for k in range(1, n + 1))
        q, r = divmod(total, n)
        if r:
            raise ConsistencyError(
                f"score-divisibility: sum N_k S_(n-k) = {total} not divisible by n={n}")
        S.append(q)
    return S


_score_cache: list[int] = [1]


def count_scores(n_max: int) -> ScoreTable:
    """Exact S_0..S_{n_max} from the EGZ convolution recurrence."""
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    if n_max >= len(_score_cache):
        _score_cache[:] = score_recurrence(egz_table(n_max).values, n_max, _score_cache)
    return ScoreTable(tuple(_score_cache[:n_max + 1]))


def seed_score_cache(values: Sequence[int]) -> None:
    """Adopt externally stored S_0, S_1, ... if they extend the in-memory table."""
    if len(values) > len(_score_cache) and values[0] == 1:
        _score_cache[:] = values


def partitions(n: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """Integer partitions of n as ((part, multiplicity), ...) with parts decreasing.

    Generated in lexicographic order of the part sequence, largest first.
    """
    def rec(remaining: int, max_part: int):
        if remaining == 0:
            yield ()
            return
        for part in range(min(remaining, max_part), 0, -1):
            for mult in range(remaining // part, 0, -1):
                for rest in rec(remaining - part * mult, part - 1):
                    yield ((part, mult),) + rest

    yield from rec(n, n)


def scores_via_cycle_types(n: int) -> int:
    """S_n = (1/n!) sum over permutations of prod N_(cycle length), grouped by cycle type."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > CYCLE_TYPE_MAX:
        raise GuardError(f"cycle-type sum limited to n <= {CYCLE_TYPE_MAX}, got {n}")
    N = egz_table(n)
    total = Fraction(0)
    for parts in partitions(n):
        num, den = 1, 1
        for length, mult in parts:
            num *= N[length] ** mult
            den *= length**mult * math.factorial(mult)
        total += Fraction(num, den)
    if total.denominator != 1:
        raise ConsistencyError(f"cycle-type sum for n={n} is not an integer: {total}")
    return total.numerator
