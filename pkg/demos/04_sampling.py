"""
Uniform sampling
================

Completion counts over Landau's constraints let us unrank a uniformly
drawn integer below S_n, which gives exactly uniform score sequences.
"""

# %%
from collections import Counter

from scoreseq import completion_counts, count_scores, irreducible_count, sample_uniform, subscore_pmf

print(completion_counts(12).total, count_scores(12)[12])

# %%
for s in sample_uniform(15, seed=1, count=5):
    print(s)

# %%
# Block counts of 20000 samples on 10 teams against the exact law
draws = 20_000
hist = Counter(irreducible_count(s) for s in sample_uniform(10, seed=2, count=draws))
pmf = subscore_pmf(10)
for m in range(1, 11):
    print(m, hist[m], round(float(pmf[m]) * draws, 1))
