"""
Why ICTT keeps going at high K
==============================

Count, after every step, how many nodes could still raise their own
sub-unit's contribution. At K=2 ICTT1 quickly runs out of such moves; at
K=19 the landscape is close to uncorrelated and moves stay available.
"""
# %%
import numpy as np

from nkictt import ExperimentSpec
from nkictt.harness import moves_trace_matrix

spec = ExperimentSpec(n=20, iterations=300, master_seed=5)
traces = {k: moves_trace_matrix(spec, k, steps=100) for k in (2, 19)}

# %%
for step in (1, 10, 25, 50, 100):
    row = "  ".join(f"K={k}: {traces[k][:, step - 1].mean():5.2f}" for k in traces)
    print(f"step {step:3d}  {row}")

# %%
for k, m in traces.items():
    print(f"K={k}: {np.mean(m[:, -1] == 0):.0%} of runs have no move left at step 100")
