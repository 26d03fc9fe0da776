from decimal import Decimal
from fractions import Fraction

import mpmath
import pytest

from scoreseq.asympt import (
    beta_conv_ratio,
    compound_poisson_check,
    diagnostics,
    lambda_enclosure,
    lambda_partial_sum,
    nb_limit_distance,
    nb_pmf,
    nb_tail,
    total_variation,
    tournament_pmf,
)
from scoreseq.decomp import subscore_pmf
from scoreseq.egz import egz_table

mpmath.mp.dps = 40


def test_partial_sum_value():
    assert round(lambda_partial_sum(100), 10) == Fraction("0.3300510246")


def test_partial_sum_against_mpmath():
    N = egz_table(100)
    oracle = mpmath.fsum(mpmath.mpf(N[k]) / (k * mpmath.mpf(4) ** k) for k in range(1, 101))
    q = lambda_partial_sum(100)
    assert abs(mpmath.mpf(q.numerator) / q.denominator - oracle) < mpmath.mpf(10) ** -35


def test_lambda_enclosure_matches_tail_bounds(lam100):
    enc = lam100.enclosure
    tail = 1 / (3 * mpmath.sqrt(mpmath.pi) * mpmath.mpf(100) ** 1.5)
    q = lam100.partial_sum
    partial = mpmath.mpf(q.numerator) / q.denominator
    assert mpmath.mpf(str(enc.lo)) <= partial + tail * (1 - mpmath.mpf(2) / 100)
    assert partial + tail <= mpmath.mpf(str(enc.hi))
    assert enc.hi - enc.lo < Decimal("3.8e-6")
    assert lam100.tail_lo.hi <= lam100.tail_hi.lo
    assert Decimal("0.330235") <= enc.lo


def test_lambda_nesting():
    encs = [lambda_enclosure(t).enclosure for t in (10, 50, 100, 1000)]
    for outer, inner in zip(encs, encs[1:]):
        assert outer.contains(inner)


def test_lambda_domain():
    with pytest.raises(ValueError):
        lambda_enclosure(9)


def test_constants_values(consts):
    assert consts.takacs.rounded(3) == Decimal("0.392")
    assert consts.nb_mean.rounded(3) == Decimal("1.783")
    assert consts.nb_mean.truncated(3) == Decimal("1.782")
    assert consts.nb_variance.rounded(3) == Decimal("1.089")
    assert consts.nb_variance.truncated(3) == Decimal("1.088")
    assert Decimal("0.5160") <= consts.strong_frac.lo and consts.strong_frac.hi <= Decimal("0.5172")
    assert consts.inv_e_lambda.truncated(3) == Decimal("0.718")


def test_constants_against_mpmath(consts, lam100):
    enc = lam100.enclosure
    for lam in (mpmath.mpf(str(enc.lo)), mpmath.mpf(str(enc.hi))):
        e = mpmath.exp(lam)
        # each constant is monotone in lambda, so endpoint values must be inside
        checks = {
            "e_lambda": e,
            "takacs": e / (2 * mpmath.sqrt(mpmath.pi)),
            "inv_e_lambda": 1 / e,
            "strong_frac": mpmath.exp(-2 * lam),
            "strong_takacs": 1 / (e * 2 * mpmath.sqrt(mpmath.pi)),
            "nb_mean": 2 * (1 - 1 / e) * e + 1,
            "nb_variance": 2 * (1 - 1 / e) * e**2,
        }
        for name, value in consts.items():
            assert mpmath.mpf(str(value.lo)) <= checks[name] <= mpmath.mpf(str(value.hi)), name


def test_diagnostics_small():
    one, six = diagnostics([1, 6])
    assert one.takacs_ratio == Decimal("0.25")
    oracle = mpmath.mpf(6) ** 2.5 * 22 / 4096
    assert abs(mpmath.mpf(str(six.takacs_ratio)) - oracle) < mpmath.mpf(10) ** -12
    assert six.inv_mean == Decimal("0.575757575757")
    assert six.strong_ratio == Decimal("0.318181818181")


def test_beta_conv_ratio_small():
    # beta_1 = 1/4, beta_2 = 1/32: beta^{*2}_2 = 1/16, ratio = (1/16) / (1/16) = 1
    assert beta_conv_ratio(2) == 1


def test_tournament_pmf(lam100):
    pmf = tournament_pmf(2000, lam100)
    assert pmf.probs[0].truncated(3) == Decimal("0.718")
    p0, p1 = pmf.probs[0], pmf.probs[1]
    assert abs(4 * p1.lo_q - p0.lo_q) <= Fraction(4, 10**30)
    assert abs(4 * p1.hi_q - p0.hi_q) <= Fraction(4, 10**30)
    sums = pmf.partial_sums
    assert all(a.lo <= b.lo for a, b in zip(sums, sums[1:]))
    assert sums[-1].hi_q <= 1 + Fraction(1, 10**5) and sums[-1].lo_q >= 1 - Fraction(1, 10**5)


def test_nb_pmf(lam100, consts):
    first = nb_pmf(1, lam100)
    assert abs(first.lo_q - consts.strong_frac.lo_q) < Fraction(1, 10**25)
    assert abs(first.hi_q - consts.strong_frac.hi_q) < Fraction(1, 10**25)
    mids = [nb_pmf(m, lam100).midpoint for m in range(1, 201)]
    assert abs(sum(mids) - 1) < Fraction(1, 10**10)
    mean = sum(m * p for m, p in enumerate(mids, 1))
    assert consts.nb_mean.lo_q - Fraction(1, 10**8) <= mean <= consts.nb_mean.hi_q + Fraction(1, 10**8)
    # E[1/I] of the limit is e^-lambda
    inv = sum(p / m for m, p in enumerate(mids, 1))
    assert abs(inv - consts.inv_e_lambda.midpoint) < Fraction(1, 10**5)


def test_nb_tail_matches_sum(lam100):
    head = sum(nb_pmf(m, lam100).midpoint for m in range(1, 41))
    tail = nb_tail(40, lam100)
    assert abs(1 - head - tail.midpoint) < Fraction(1, 10**8)


def test_total_variation_basics():
    p = [Fraction(1, 3), Fraction(2, 3)]
    assert total_variation(p, p) == 0
    assert total_variation([1], [0, 1]) == 1


def test_limit_distance_regression(lam100):
    result = nb_limit_distance(6, lam100)
    lam = mpmath.mpf(str(lam100.enclosure.lo + lam100.enclosure.hi)) / 2
    p = mpmath.exp(-lam)
    exact = [mpmath.mpf(c) / 22 for c in (7, 7, 3, 4, 0, 1)] + [0] * 34
    limit = [m * (1 - p) ** (m - 1) * p**2 for m in range(1, 41)]
    oracle = mpmath.fsum(abs(a - b) for a, b in zip(exact, limit)) / 2
    # the NB column is the midpoint of each enclosure, not the value at the midpoint
    assert abs(mpmath.mpf(str(result.distance)) - oracle) < mpmath.mpf(10) ** -10
    assert 0 < result.distance < 1
    assert round(result.distance, 8) == Decimal("0.21721502")


def test_limit_distance_trend(lam100):
    d = [nb_limit_distance(n, lam100).distance for n in (100, 300, 1000)]
    assert d[0] > d[1] > d[2]
    assert d[2] < Decimal("0.05")


def test_limit_distance_identical_is_zero():
    pmf = subscore_pmf(30)
    assert total_variation(pmf.probs, pmf.probs) == 0


def test_compound_poisson(lam100):
    check = compound_poisson_check(lam100, 60)
    assert check.tournament_deviation < Decimal("1e-8")
    assert check.nb_deviation < Decimal("1e-8")
    assert check.swapped_deviation > Decimal("0.1")


def test_compound_poisson_domain(lam100):
    with pytest.raises(ValueError):
        compound_poisson_check(lam100, 9)
