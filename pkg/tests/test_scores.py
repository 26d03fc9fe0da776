from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scoreseq.egz import egz_table
from scoreseq.errors import ConsistencyError, GuardError
from scoreseq.scores import (
    ExactSeries,
    convolution_power,
    convolution_root,
    convolve,
    count_scores,
    exp_transform,
    log_transform,
    partitions,
    score_recurrence,
    scores_via_cycle_types,
)

nonneg_fractions = st.fractions(min_value=0, max_value=50, max_denominator=100)
int_series = st.lists(st.integers(-10**6, 10**6), min_size=1, max_size=40)


@pytest.mark.parametrize("n_max,expected", [(0, (1,)), (3, (1, 1, 1, 2))])
def test_count_scores_examples(n_max, expected):
    assert count_scores(n_max).values == expected


def test_s6():
    assert count_scores(6)[6] == 22


def test_scores_nondecreasing():
    S = count_scores(300).values
    assert all(S[n] <= S[n + 1] for n in range(1, 300))


def test_score_recurrence_divisibility_failure():
    bad = [1, 2, 4]  # N_2 = 2 breaks 2 S_2 = N_1 S_1 + N_2 S_0 divisibility
    with pytest.raises(ConsistencyError, match="score-divisibility"):
        score_recurrence(bad, 2)


def test_log_transform_recovers_egz():
    S = count_scores(200).series()
    assert list(log_transform(S)) == [0, *egz_table(200).values]


def test_exp_transform_recovers_scores():
    h = ExactSeries([0, *egz_table(60).values])
    assert exp_transform(h) == count_scores(60).values


def test_transform_trivial_cases():
    assert list(log_transform([1, 0, 0, 0])) == [0, 0, 0, 0]
    assert list(exp_transform([0, 0, 0, 0])) == [1, 0, 0, 0]


@pytest.mark.parametrize("c", [2, Fraction(1, 3), -5])
def test_geometric_fixed_point(c):
    a = [c**n for n in range(20)]
    assert list(log_transform(a))[1:] == a[1:]


def test_transform_domain_errors():
    with pytest.raises(ValueError):
        log_transform([2, 1])
    with pytest.raises(ValueError):
        exp_transform([1, 1])
    with pytest.raises(ValueError):
        convolution_root([0, 1], 2)


@settings(max_examples=50, deadline=None)
@given(st.lists(nonneg_fractions, min_size=29, max_size=29))
def test_exp_log_round_trip(tail):
    h = ExactSeries([0, *tail])
    assert log_transform(exp_transform(h)) == h
    a = ExactSeries([1, *tail])
    assert exp_transform(log_transform(a)) == a


@given(int_series, int_series, int_series)
def test_convolution_algebra(a, b, c):
    assert convolve(a, b) == convolve(b, a)
    assert convolve(convolve(a, b), c) == convolve(a, convolve(b, c))


@given(st.lists(st.integers(0, 10**30), min_size=24, max_size=80),
       st.lists(st.integers(0, 10**30), min_size=24, max_size=80))
def test_fast_path_matches_schoolbook(a, b):
    assert convolve(a, b, fast=True) == convolve(a, b, fast=False)
    assert convolve(a, b, 30, fast=True) == convolve(a, b, 30, fast=False)


def test_fast_path_on_score_table():
    S = count_scores(500).values
    assert convolve(S, S, 501) == convolve(S, S, 501, fast=False)


def test_convolution_power_examples():
    assert list(convolution_power([0, 1, 0, 0], 2, 4)) == [0, 0, 1, 0]
    assert list(convolution_power([1, 1], 2)) == [1, 2, 1]
    assert list(convolution_power([1, 1], 4)) == [1, 4, 6, 4, 1]


def test_convolution_root_inverse():
    S = count_scores(39).series()
    assert convolution_power(convolution_root(S, 3), 3, 40) == S
    assert convolution_root(S, 1) == S


@pytest.mark.parametrize("r", [2, 3, 5])
def test_score_series_infinitely_divisible(r):
    root = convolution_root(count_scores(39).series(), r)
    assert all(c >= 0 for c in root)


def test_partition_count_against_dp():
    # p(n) by the standard coin-change recurrence
    dp = [1] + [0] * 20
    for part in range(1, 21):
        for n in range(part, 21):
            dp[n] += dp[n - part]
    for n in range(1, 21):
        assert sum(1 for _ in partitions(n)) == dp[n]
    assert dp[20] == 627


def test_partitions_sum():
    for parts in partitions(9):
        assert sum(p * m for p, m in parts) == 9


@pytest.mark.parametrize("n,expected", [(1, 1), (3, 2), (6, 22)])
def test_cycle_type_examples(n, expected):
    assert scores_via_cycle_types(n) == expected


def test_cycle_types_match_recurrence():
    S = count_scores(15)
    for n in range(1, 16):
        assert scores_via_cycle_types(n) == S[n]


def test_cycle_type_guard():
    with pytest.raises(GuardError):
        scores_via_cycle_types(21)
