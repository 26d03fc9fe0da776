"""Certified constants and convergence diagnostics for S_n and its decomposition.

The constant lambda = sum_{k>=1} N_k / (k 4^k) governs everything here:

* S_n ~ e^lambda / (2 sqrt(pi)) * 4^n / n^(5/2),
* S_{n,1} / S_n -> e^(-2 lambda),  N_n / (n S_n) -> e^(-lambda),
* I_n -> 1 + NB(r=2, p=e^(-lambda)) in distribution,
* sum_n S_n / 4^n = e^lambda.

lambda is enclosed by an exact partial sum plus the tail bounds

    (1 - 2/n) / (3 sqrt(pi) n^(3/2)) <= sum_{k>n} N_k/(k 4^k) <= 1 / (3 sqrt(pi) n^(3/2)),

valid for n >= 10.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from decimal import Decimal
from fractions import Fraction

from .decomp import strong_series, subscore_pmf
from .egz import egz_table
from .exact import (
    Enclosure,
    ceil_decimal,
    exp_enclosure,
    floor_decimal,
    floor_sqrt_decimal,
    sqrt_pi_enclosure,
)
from .scores import convolve, count_scores

DEFAULT_PRECISION = 30
NB_M_MAX = 40


@dataclass(frozen=True)
class LambdaEnclosure:
    terms: int
    partial_sum: Fraction
    tail_lo: Enclosure
    tail_hi: Enclosure
    enclosure: Enclosure


def lambda_partial_sum(terms: int) -> Fraction:
    """Exact sum_{k<=terms} N_k / (k 4^k)."""
    N = egz_table(terms)
    lcm = math.lcm(*range(1, terms + 1))
    num = sum(N[k] * (lcm // k) * 4 ** (terms - k) for k in range(1, terms + 1))
    return Fraction(num, lcm * 4**terms)


def lambda_enclosure(terms: int, precision: int = DEFAULT_PRECISION) -> LambdaEnclosure:
    if terms < 10:
        raise ValueError(f"the tail bounds need terms >= 10, got {terms}")
    partial = lambda_partial_sum(terms)
    n_three_halves = Enclosure.point(terms, precision).sqrt() * terms
    tail_hi = 1 / (3 * sqrt_pi_enclosure(precision) * n_three_halves)
    tail_lo = tail_hi * (1 - Fraction(2, terms))
    total = Enclosure.from_bounds(partial + tail_lo.lo_q, partial + tail_hi.hi_q, precision)
    return LambdaEnclosure(terms, partial, tail_lo, tail_hi, total)


@dataclass(frozen=True)
class ConstantSet:
    e_lambda: Enclosure
    takacs: Enclosure
    inv_e_lambda: Enclosure
    strong_frac: Enclosure
    strong_takacs: Enclosure
    nb_mean: Enclosure
    nb_variance: Enclosure

    def items(self):
        return [(f.name, getattr(self, f.name)) for f in fields(self)]


def constants(lam: LambdaEnclosure, precision: int = DEFAULT_PRECISION) -> ConstantSet:
    x = lam.enclosure
    e = exp_enclosure(x, precision)
    inv = exp_enclosure(-x, precision)
    two_sqrt_pi = 2 * sqrt_pi_enclosure(precision)
    return ConstantSet(
        e_lambda=e,
        takacs=e / two_sqrt_pi,
        inv_e_lambda=inv,
        strong_frac=exp_enclosure(-2 * x, precision),
        strong_takacs=inv / two_sqrt_pi,
        # 2(1 - e^-l) e^l + 1 = 2 e^l - 1 and 2(1 - e^-l) e^2l = 2 e^l (e^l - 1),
        # both increasing in e^l, so endpoint evaluation is exact.
        nb_mean=2 * e - 1,
        nb_variance=2 * e * (e - 1),
    )


@dataclass(frozen=True)
class DiagnosticRow:
    """Finite-n versions of the limit statements, each floored once to ``precision`` places."""

    n: int
    takacs_ratio: Decimal     # n^(5/2) S_n / 4^n
    strong_ratio: Decimal     # S_{n,1} / S_n
    inv_mean: Decimal         # N_n / (n S_n) = E[1 / I_n]
    beta_conv_ratio: Decimal  # beta^{*2}_n / (2 beta_n), beta_n = N_n / (n 4^n)
    partial_gf: Decimal       # sum_{k<=n} S_k / 4^k


def beta_series(n_max: int) -> list[Fraction]:
    N = egz_table(n_max)
    return [Fraction(0)] + [Fraction(N[k], k * 4**k) for k in range(1, n_max + 1)]


def beta_conv_ratio(n: int) -> Fraction:
    beta = beta_series(n)
    square = sum(beta[k] * beta[n - k] for k in range(1, n))
    return square / (2 * beta[n])


def diagnostics(n_grid, precision: int = 12) -> list[DiagnosticRow]:
    n_grid = list(n_grid)
    if not n_grid or min(n_grid) < 1:
        raise ValueError("n_grid must be a non-empty list of positive integers")
    top = max(n_grid)
    S = count_scores(top).values
    N = egz_table(top)
    F = strong_series(top)
    rows = []
    for n in n_grid:
        gf = Fraction(sum(S[k] * 4 ** (n - k) for k in range(n + 1)), 4**n)
        rows.append(DiagnosticRow(
            n=n,
            takacs_ratio=floor_sqrt_decimal(Fraction(n**5 * S[n] ** 2, 16**n), precision),
            strong_ratio=floor_decimal(Fraction(F[n], S[n]), precision),
            inv_mean=floor_decimal(Fraction(N[n], n * S[n]), precision),
            beta_conv_ratio=floor_decimal(beta_conv_ratio(n), precision),
            partial_gf=floor_decimal(gf, precision),
        ))
    return rows


@dataclass(frozen=True)
class TournamentPmf:
    """p_n = e^(-lambda) S_n / 4^n for n = 0..n_max with running totals."""

    n_max: int
    probs: tuple[Enclosure, ...]
    partial_sums: tuple[Enclosure, ...]


def tournament_pmf(n_max: int, lam: LambdaEnclosure,
                   precision: int = DEFAULT_PRECISION) -> TournamentPmf:
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    S = count_scores(n_max).values
    weight = exp_enclosure(-lam.enclosure, precision)
    probs, sums = [], []
    alpha_total = Fraction(0)
    for n in range(n_max + 1):
        alpha = Fraction(S[n], 4**n)
        alpha_total += alpha
        probs.append(weight * alpha)
        sums.append(weight * alpha_total)
    return TournamentPmf(n_max, tuple(probs), tuple(sums))


def nb_pmf(m: int, lam: LambdaEnclosure, precision: int = DEFAULT_PRECISION) -> Enclosure:
    """Limit probability of I_n = m: m (1 - e^-lambda)^(m-1) e^(-2 lambda)."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    p = exp_enclosure(-lam.enclosure, precision)
    return m * (1 - p) ** (m - 1) * p**2


def nb_tail(m_max: int, lam: LambdaEnclosure, precision: int = DEFAULT_PRECISION) -> Enclosure:
    """Limit P(I > m_max) = q^m_max (1 + m_max p), p = e^-lambda, q = 1 - p."""
    p = exp_enclosure(-lam.enclosure, precision)
    return (1 - p) ** m_max * (1 + m_max * p)


def total_variation(p, q) -> Fraction:
    """Half the l1 distance between two finite probability vectors (zero padded)."""
    length = max(len(p), len(q))
    p = list(p) + [0] * (length - len(p))
    q = list(q) + [0] * (length - len(q))
    return sum((abs(Fraction(a) - Fraction(b)) for a, b in zip(p, q)), Fraction(0)) / 2


@dataclass(frozen=True)
class LimitDistance:
    """TV distance over m <= m_max plus an upper bound on what the cut-off hides."""

    n: int
    distance: Decimal
    slack: Decimal


def nb_limit_distance(n: int, lam: LambdaEnclosure, m_max: int = NB_M_MAX,
                      precision: int = DEFAULT_PRECISION) -> LimitDistance:
    """TV distance between P(I_n = .) and the shifted NB limit, NB at enclosure midpoints."""
    pmf = subscore_pmf(n, m_max)
    limit = [nb_pmf(m, lam, precision).midpoint for m in range(1, m_max + 1)]
    distance = total_variation(pmf.probs, limit)
    slack = (pmf.tail + nb_tail(m_max, lam, precision).hi_q) / 2
    return LimitDistance(n, ceil_decimal(distance, precision), ceil_decimal(slack, precision))


@dataclass(frozen=True)
class CompoundPoissonCheck:
    """Maximum certified deviations (upper bounds) of the compound-Poisson forms.

    ``nb_deviation``: rate 2 lambda with logarithmic(1 - e^-lambda) jumps vs the
    NB limit pmf. ``tournament_deviation``: rate lambda with jump law
    beta_k / lambda vs the tournament distribution. ``swapped_deviation``:
    rate -2 log(1 - e^-lambda) with logarithmic(e^-lambda) jumps vs the NB pmf;
    this parameterization produces NB(2, 1 - e^-lambda) and does not match.
    """

    truncation: int
    nb_deviation: Decimal
    tournament_deviation: Decimal
    swapped_deviation: Decimal

    @property
    def max_deviation(self) -> Decimal:
        return max(self.nb_deviation, self.tournament_deviation)


def _gap(a: Enclosure, b: Enclosure) -> Fraction:
    return max(abs(a.hi_q - b.lo_q), abs(b.hi_q - a.lo_q))


def _poisson_mixture(c: list[int], scale: int, multiplier: int, length: int) -> list[Fraction]:
    """sum_j multiplier^j / j! * (g^{*j})_n for n < length, where g = c / scale and g_0 = 0."""
    out = [Fraction(1)] + [Fraction(0)] * (length - 1)
    power = c[:length]
    for j in range(1, length):
        weight = Fraction(multiplier**j, math.factorial(j) * scale**j)
        for n in range(j, length):
            out[n] += weight * power[n]
        power = list(convolve(power, c, length))
    return out


def compound_poisson_check(lam: LambdaEnclosure, truncation: int,
                           precision: int = DEFAULT_PRECISION) -> CompoundPoissonCheck:
    """Rebuild the NB limit and the tournament law as compound Poisson sums.

    Both sides are evaluated at the same point lambda* (the enclosure midpoint)
    so the deviation measures the identities, not the width of lambda. The
    Poisson count is summed up to ``truncation`` jumps; since every jump is
    >= 1 this is exact for indices <= truncation.
    """
    if truncation < 10:
        raise ValueError(f"truncation must be >= 10, got {truncation}")
    length = truncation + 1
    point = Enclosure.point(lam.enclosure.midpoint, precision)
    point_lam = LambdaEnclosure(lam.terms, lam.partial_sum, lam.tail_lo, lam.tail_hi, point)
    p = exp_enclosure(-point, precision)
    q = 1 - p
    lcm = math.lcm(*range(1, length))

    # Logarithmic jumps: (2 lambda)^i f^{*i}_j = 2^i q^j (g^{*i})_j with g_k = 1/k.
    log_c = [0] + [lcm // k for k in range(1, length)]
    log_weights = _poisson_mixture(log_c, lcm, 2, length)
    nb_dev = swapped_dev = Fraction(0)
    for j in range(length):
        target = nb_pmf(j + 1, point_lam, precision)
        rebuilt = p**2 * q**j * log_weights[j]
        swapped = q**2 * p**j * log_weights[j]
        nb_dev = max(nb_dev, _gap(rebuilt, target))
        swapped_dev = max(swapped_dev, _gap(swapped, target))

    # Tournament law: lambda^i (beta/lambda)^{*i}_n = (beta^{*i})_n,
    # beta_k = N_k / (k 4^k) = (N_k lcm/k) / (lcm 4^k).
    N = egz_table(truncation)
    beta_c = [0] + [N[k] * (lcm // k) for k in range(1, length)]
    beta_weights = _poisson_mixture(beta_c, lcm, 1, length)
    S = count_scores(truncation).values
    tour_dev = Fraction(0)
    for n in range(length):
        rebuilt = p * (beta_weights[n] / 4**n)
        target = p * Fraction(S[n], 4**n)
        tour_dev = max(tour_dev, _gap(rebuilt, target))

    return CompoundPoissonCheck(
        truncation,
        ceil_decimal(nb_dev, precision),
        ceil_decimal(tour_dev, precision),
        ceil_decimal(swapped_dev, precision),
    )
