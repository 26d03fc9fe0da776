"""Erdős–Ginzburg–Ziv numbers for the consecutive set {1, ..., 2n-1}.

``N_n`` counts the n-element subsets of {1, ..., 2n-1} whose sum is divisible
by n. The closed form is

    N_n = (1 / 2n) * sum_{k=1..n} (-1)^(n+d) * C(2d, d),   d = gcd(n, k),

evaluated here as an exact signed integer sum followed by one checked
division by 2n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import ConsistencyError, GuardError
from .exact import Enclosure, sqrt_pi_enclosure

BRUTE_FORCE_MAX = 13


def _signed_term(n: int, d: int) -> int:
    """(-1)^(n+d) * C(2d, d)."""
    c = math.comb(2 * d, d)
    return c if (n + d) % 2 == 0 else -c


def egz_signed_sum(n: int) -> int:
    return sum(_signed_term(n, math.gcd(n, k)) for k in range(1, n + 1))


def _checked_divide(total: int, n: int) -> int:
    q, r = divmod(total, 2 * n)
    if r:
        raise ConsistencyError(
            f"egz-divisibility: signed sum {total} for n={n} is not divisible by {2 * n}")
    return q


def egz_number(n: int) -> int:
    """Exact N_n from the gcd-sum formula, term by term over k = 1..n."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return _checked_divide(egz_signed_sum(n), n)


def egz_brute_force(n: int) -> int:
    """Count n-subsets of {1..2n-1} with sum divisible by n by enumeration."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > BRUTE_FORCE_MAX:
        raise GuardError(f"brute force limited to n <= {BRUTE_FORCE_MAX}, got {n}")
    return sum(1 for c in combinations(range(1, 2 * n), n) if sum(c) % n == 0)


@dataclass(frozen=True)
class EgzTable:
    """N_1..N_{n_max}; index with the natural 1-based ``n``."""

    values: tuple[int, ...]

    @property
    def n_max(self) -> int:
        return len(self.values)

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= len(self.values):
            raise IndexError(f"N_{n} outside table range 1..{len(self.values)}")
        return self.values[n - 1]

    def __len__(self) -> int:
        return len(self.values)


def _totients(n_max: int) -> list[int]:
    phi = list(range(n_max + 1))
    for p in range(2, n_max + 1):
        if phi[p] == p:
            for m in range(p, n_max + 1, p):
                phi[m] -= phi[m] // p
    return phi


_table_cache: list[int] = []


def _extend_cache(n_max: int) -> None:
    start = len(_table_cache) + 1
    if n_max < start:
        return
    phi = _totients(n_max)
    divisors: list[list[int]] = [[] for _ in range(n_max + 1)]
    for d in range(1, n_max + 1):
        for m in range(d, n_max + 1, d):
            divisors[m].append(d)
    # Exactly phi(n/d) of the k in 1..n have gcd(n, k) = d.
    new = [_checked_divide(sum(phi[n // d] * _signed_term(n, d) for d in divisors[n]), n)
           for n in range(start, n_max + 1)]
    _table_cache.extend(new)


def seed_egz_cache(values) -> None:
    """Adopt externally stored N_1, N_2, ... if they extend the in-memory table."""
    if len(values) > len(_table_cache):
        _table_cache[:] = values


def egz_table(n_max: int) -> EgzTable:
    """N_1..N_{n_max}, grouping the gcd sum by divisor."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    _extend_cache(n_max)
    return EgzTable(tuple(_table_cache[:n_max]))


def egz_bounds(n: int, precision: int = 30) -> tuple[Enclosure, Enclosure]:
    """Enclosures of the lower and upper bounds on N_n valid for n >= 10.

    lower = 4^n / (2 sqrt(pi) n^(3/2)) * (1 - 1/(4n)),  upper = 4^n / (2 sqrt(pi) n^(3/2)).
    """
    if n < 10:
        raise ValueError(f"the bounds on N_n hold only for n >= 10, got {n}")
    n_three_halves = Enclosure.point(n, precision).sqrt() * n
    upper = 4**n / (2 * sqrt_pi_enclosure(precision) * n_three_halves)
    lower = upper * (1 - Fraction(1, 4 * n))
    return lower, upper


def central_binomial_bounds(n: int, precision: int = 30) -> tuple[Enclosure, Enclosure]:
    """Enclosures of 4^n/sqrt(pi n) * (1 - 1/(8n)) and 4^n/sqrt(pi n) * (1 - 1/(9n))."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    sqrt_pi_n = sqrt_pi_enclosure(precision) * Enclosure.point(n, precision).sqrt()
    base = 4**n / sqrt_pi_n
    return base * (1 - Fraction(1, 8 * n)), base * (1 - Fraction(1, 9 * n))

