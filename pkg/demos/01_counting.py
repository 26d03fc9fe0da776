"""
Counting score sequences exactly
================================

Score sequences on n teams are counted through the EGZ numbers N_n:
n S_n = sum_k N_k S_(n-k). This walk-through checks the small cases by
brute force and then pushes the recurrence to a few hundred teams.
"""

# %%
# The EGZ numbers from the gcd sum, against direct enumeration of subsets
from scoreseq import egz_brute_force, egz_number, egz_table

for n in range(1, 9):
    print(n, egz_number(n), egz_brute_force(n))

# %%
# Score counts from the recurrence, against Landau enumeration
from scoreseq import count_scores, enumerate_scores

S = count_scores(12)
for n in range(1, 13):
    print(n, S[n], len(enumerate_scores(n)))

# %%
# The same numbers summed over cycle types of permutations
from scoreseq import scores_via_cycle_types

print([scores_via_cycle_types(n) for n in range(1, 11)])

# %%
# The log transform of S is N, and S has nonnegative cube root
from scoreseq import convolution_root, log_transform

series = count_scores(30).series()
print(list(log_transform(series))[1:11])
print(list(egz_table(10).values))
root = convolution_root(series, 3)
print(min(root) >= 0, root[:8])

# %%
# S_300 has this many digits
print(len(str(count_scores(300)[300])))
