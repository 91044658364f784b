"""
Exhaustive search on small cases
================================

Steiner triple systems exist exactly when n is 1 or 3 mod 6.
"""

# %%
from almost_steiner import brute_force_design_search

for n in (6, 7, 8, 9, 13):
    r = brute_force_design_search(n, 3, 2, {1}, 200_000)
    print(n, n % 6, r.status, r.nodes)

# %%
# the Fano plane
fano = brute_force_design_search(7, 3, 2, {1}).design
for e in fano.edges:
    print(e)

# %%
# lambda = 2 on six points, and S(3,4,8)
print(len(brute_force_design_search(6, 3, 2, {2}).design))
print(len(brute_force_design_search(8, 4, 3, {1}).design))
