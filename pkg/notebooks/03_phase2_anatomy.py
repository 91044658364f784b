"""
Inside the augmentation step
============================

Sampled candidates, the greedy family that meets pairwise in A, the selection
and the repair search.
"""

# %%
from almost_steiner import AugmentConfig, ConstructionFailure, augment, leave_hypergraph, pack
from almost_steiner.augmenter import AugmentReport
from almost_steiner.packer import PackingConfig

n, k, t = 30, 4, 2

# %%
# plain greedy leaves more pairs than disjoint new blocks can ever cover
# (each block uses six pairs), so the augmentation cannot succeed
partial = pack(n, k, t, PackingConfig(seed=3, refine_factor=0))
leave = leave_hypergraph(partial, t)
print(len(partial), len(leave), "room for", (435 - 6 * len(partial)) // 6, "more blocks")
try:
    augment(partial, leave, AugmentConfig(master_seed=3, max_retries=1))
except ConstructionFailure as exc:
    print(exc)

# %%
# the refined packing is much tighter
partial = pack(n, k, t, PackingConfig(seed=3))
leave = leave_hypergraph(partial, t)
report, trace = AugmentReport(), []
design = augment(partial, leave, AugmentConfig(master_seed=3), report, trace)
print("\n".join(report.lines()))

# %%
# one leave edge up close
state = trace[-1]
a = leave.sorted_edges()[0]
es = state.edges[a]
print("A =", a)
print("|R_A| =", len(es.sampled_R), " Q_A =", es.family_Q)
print("chosen:", es.chosen, " repaired:", state.repaired.get(a))

# %%
# without repair the strict rule alone usually gets stuck at this size
try:
    augment(partial, leave, AugmentConfig(master_seed=3, repair=False, max_retries=2))
except ConstructionFailure as exc:
    print(type(exc).__name__, "blocked per retry:", exc.blocked_per_retry)
