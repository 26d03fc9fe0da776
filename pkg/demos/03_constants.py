"""
Certified constants
===================

lambda = sum_k N_k / (k 4^k) is enclosed by an exact partial sum plus
explicit tail bounds, and every derived constant inherits a rigorous
decimal interval.
"""

# %%
from scoreseq import constants, lambda_enclosure

for terms in (10, 50, 100, 1000):
    lam = lambda_enclosure(terms)
    print(terms, lam.enclosure, "width", lam.enclosure.width)

# %%
lam = lambda_enclosure(100)
for name, enc in constants(lam, 20).items():
    print(f"{name:14s} {enc}  truncated {enc.truncated(3)}  rounded {enc.rounded(3)}")

# %%
# Finite-n ratios drift toward their limits
from scoreseq import diagnostics

for row in diagnostics([50, 100, 200, 400], precision=8):
    print(row.n, row.takacs_ratio, row.strong_ratio, row.inv_mean, row.partial_gf)

# %%
# Both compound-Poisson representations rebuild their targets
from scoreseq import compound_poisson_check

check = compound_poisson_check(lam, 40)
print(check.nb_deviation, check.tournament_deviation)
print("swapped parameters:", check.swapped_deviation)
