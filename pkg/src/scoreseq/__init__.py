"""Exact counts and certified asymptotics for tournament score sequences."""

from .asympt import (
    compound_poisson_check,
    constants,
    diagnostics,
    lambda_enclosure,
    nb_limit_distance,
    nb_pmf,
    tournament_pmf,
)
from .decomp import strong_series, subscore_counts, subscore_pmf, verify_egz_identity
from .egz import egz_bounds, egz_brute_force, egz_number, egz_table
from .exact import Enclosure, exp_enclosure, rat_to_enclosure, sqrt_pi_enclosure
from .oracle import (
    completion_counts,
    count_by_subscores_brute,
    enumerate_scores,
    irreducible_count,
    is_score_sequence,
    is_strong,
    sample_uniform,
    score_to_subset,
)
from .scores import (
    ExactSeries,
    convolution_power,
    convolution_root,
    count_scores,
    exp_transform,
    log_transform,
    scores_via_cycle_types,
)

__version__ = "0.1.0"
