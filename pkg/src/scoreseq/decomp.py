"""Irreducible decomposition of score sequences.

A score sequence splits at every k where its prefix sum equals C(k, 2); the
number of blocks is its count of irreducible subscores. Writing S_{n,m} for
the number of score sequences on n teams with m blocks,

    S(x) = 1 / (1 - S_1(x)),    sum_n S_{n,m} x^n = S_1(x)^m,

where S_1(x) = sum_n S_{n,1} x^n counts the strong (single-block) sequences.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .egz import egz_number
from .errors import ConsistencyError, VerificationError
from .scores import ExactSeries, convolve, count_scores

DEFAULT_M_MAX = 40

_strong_cache: list[int] = [0]


def strong_series(n_max: int) -> ExactSeries:
    """S_{0,1}, ..., S_{n_max,1} by inverting S(x) = 1/(1 - S_1(x))."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    if n_max >= len(_strong_cache):
        S = count_scores(n_max).values
        F = _strong_cache
        for n in range(len(F), n_max + 1):
            value = S[n] - sum(F[k] * S[n - k] for k in range(1, n))
            if value < 0:
                raise ConsistencyError(f"negative strong count S_({n},1) = {value}")
            F.append(value)
    return ExactSeries(_strong_cache[:n_max + 1])


def seed_strong_cache(values) -> None:
    """Adopt externally stored S_{0,1}, S_{1,1}, ... if they extend the in-memory table."""
    if len(values) > len(_strong_cache) and values[0] == 0:
        _strong_cache[:] = values


@dataclass(frozen=True)
class SubscoreTable:
    """S_{n,m} for 0 <= n <= n_max and 1 <= m <= min(n, m_max).

    ``rows[n][m - 1]`` is S_{n,m}; use :meth:`count` for bounds-safe access.
    """

    n_max: int
    m_max: int
    rows: tuple[tuple[int, ...], ...]

    def count(self, n: int, m: int) -> int:
        if m < 1 or m > n:
            return 0
        if m > self.m_max:
            raise IndexError(f"m={m} beyond the table's m_max={self.m_max}")
        return self.rows[n][m - 1]

    def row(self, n: int) -> tuple[int, ...]:
        return self.rows[n]


@lru_cache(maxsize=8)
def _subscore_rows(n_max: int, m_max: int) -> tuple[tuple[int, ...], ...]:
    strong = strong_series(n_max)
    columns = [strong]
    for _ in range(1, m_max):
        # S_{n,m} = sum_k S_{k,1} S_{n-k,m-1}
        columns.append(convolve(strong, columns[-1], n_max + 1))
    return tuple(tuple(columns[m][n] for m in range(min(n, m_max)))
                 for n in range(n_max + 1))


def subscore_counts(n_max: int, m_max: int) -> SubscoreTable:
    """Exact table of S_{n,m}; row n sums to S_n whenever m_max >= n."""
    if n_max < 1 or m_max < 1:
        raise ValueError(f"n_max and m_max must be >= 1, got {n_max}, {m_max}")
    return SubscoreTable(n_max, m_max, _subscore_rows(n_max, m_max))


def egz_identity_value(table: SubscoreTable, n: int) -> Fraction:
    """n * sum_m S_{n,m} / m from a table with m_max >= n."""
    if table.m_max < n:
        raise ValueError(f"need m_max >= n={n}, table has {table.m_max}")
    return n * sum(Fraction(c, m) for m, c in enumerate(table.row(n), start=1))


def verify_egz_identity(n: int, table: SubscoreTable | None = None) -> int:
    """Check N_n = n * sum_m S_{n,m}/m exactly; return the common value."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    table = table if table is not None and table.n_max >= n else subscore_counts(n, n)
    lhs = egz_identity_value(table, n)
    rhs = egz_number(n)
    if lhs != rhs:
        raise VerificationError(f"egz-identity: n*sum S_(n,m)/m = {lhs} but N_{n} = {rhs}")
    return rhs


@dataclass(frozen=True)
class SubscorePmf:
    """Exact law of the irreducible-subscore count I_n.

    ``probs[m - 1]`` is P(I_n = m) for m = 1..len(probs). When the table was
    truncated below n, ``tail`` holds the exact remaining mass P(I_n > m_max)
    and the moment properties cover only the listed support.
    """

    n: int
    probs: tuple[Fraction, ...]
    tail: Fraction

    def __getitem__(self, m: int) -> Fraction:
        if 1 <= m <= len(self.probs):
            return self.probs[m - 1]
        if m > self.n or m < 1:
            return Fraction(0)
        raise IndexError(f"P(I_{self.n} = {m}) is in the truncated tail")

    @property
    def mean(self) -> Fraction:
        return sum((m * p for m, p in enumerate(self.probs, 1)), Fraction(0))

    @property
    def variance(self) -> Fraction:
        second = sum((m * m * p for m, p in enumerate(self.probs, 1)), Fraction(0))
        return second - self.mean**2

    @property
    def inverse_mean(self) -> Fraction:
        """E[1 / I_n]."""
        return sum((p / m for m, p in enumerate(self.probs, 1)), Fraction(0))


def subscore_pmf(n: int, m_max: int | None = None) -> SubscorePmf:
    """P(I_n = m) = S_{n,m} / S_n for m <= m_max (default min(n, 40))."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    m_max = min(n, DEFAULT_M_MAX) if m_max is None else min(n, m_max)
    total = count_scores(n)[n]
    row = subscore_counts(n, m_max).row(n)
    probs = tuple(Fraction(c, total) for c in row)
    return SubscorePmf(n, probs, 1 - sum(probs, Fraction(0)))
