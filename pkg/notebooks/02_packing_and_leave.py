"""
How much does the packer leave behind?
======================================

Greedy, nibble, and the hill-climb refinement on top of either.
"""

# %%
from almost_steiner import PackingConfig, leave_hypergraph, leave_profile, pack
from almost_steiner.packer import epsilon_estimate

n, k, t = 40, 4, 2
for name, cfg in [
    ("greedy", PackingConfig(seed=0, refine_factor=0)),
    ("nibble", PackingConfig(strategy="nibble", seed=0, refine_factor=0)),
    ("greedy + refine", PackingConfig(seed=0)),
]:
    prof = leave_profile(leave_hypergraph(pack(n, k, t, cfg), t))
    print(f"{name:16s} leave_fraction={prof.leave_fraction:.4f} "
          f"max_degree={prof.max_degree} epsilon~{epsilon_estimate(prof):.3f}")

# %%
# leave fraction of plain greedy as n grows (triples)
import numpy as np

for n in (21, 41, 81):
    fr = [leave_profile(leave_hypergraph(pack(n, 3, 2, PackingConfig(seed=s, refine_factor=0)), 2)).leave_fraction
          for s in range(5)]
    print(n, np.round(np.mean(fr), 4))
