"""
Irreducible subscores
=====================

A score sequence splits wherever a prefix sum hits C(k, 2). Counting
sequences by their number of blocks recovers the EGZ numbers, and the
block count has a negative-binomial limit law.
"""

# %%
from fractions import Fraction

from scoreseq import count_by_subscores_brute, subscore_counts, subscore_pmf, verify_egz_identity

table = subscore_counts(6, 6)
print("S_(6,m):", table.row(6))
print("brute force:", count_by_subscores_brute(6))

# %%
# n * sum_m S_(n,m) / m reproduces N_n exactly
print([6 * Fraction(c, m) for m, c in enumerate(table.row(6), 1)])
print(verify_egz_identity(6), verify_egz_identity(120))

# %%
# The law of the block count for a uniform random sequence
pmf = subscore_pmf(6)
print([str(p) for p in pmf.probs], "mean", pmf.mean, "E[1/I]", pmf.inverse_mean)

# %%
# Compare with the limit 1 + NB(2, e^-lambda) as n grows
from scoreseq import lambda_enclosure, nb_limit_distance

lam = lambda_enclosure(100)
for n in (6, 30, 100, 300):
    d = nb_limit_distance(n, lam)
    print(n, round(d.distance, 6), "slack", d.slack)
