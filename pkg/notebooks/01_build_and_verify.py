"""
Building a near-Steiner system and checking it
==============================================

Pack greedily, patch the leftover t-sets, then count every t-set again.
"""

# %%
from almost_steiner import construct, design_stats, verify_multiplicity

run = construct(50, 3, 2, seed=0)
print("partial edges:", len(run.partial), "leave:", len(run.leave), "total:", len(run.design))

# %%
# every pair should be covered once or twice, and the leftover pairs exactly once
print(verify_multiplicity(run.design, 2, {1, 2}))
for line in design_stats(run.design, 2).lines():
    print(line)

# %%
# the repair edges never share a pair with each other
new = run.new_edges
print(max(len(set(a) & set(b)) for i, a in enumerate(new) for b in new[i + 1:]))

# %%
# a bigger block size, with triples as the covered sets
run = construct(20, 4, 3, seed=1)
print(verify_multiplicity(run.design, 3, {1, 2}), len(run.leave), len(run.design))
