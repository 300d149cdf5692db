"""
Checking walkers against exhaustive enumeration
===============================================

For small N every configuration can be scored, which gives the true
optimum and the number of local optima.
"""
# %%
import numpy as np

from nkictt import (count_local_optima, enumerate_global_optimum, generate_landscape,
                    is_local_optimum, make_rng, random_configuration, run_cs)

# %%
# Ruggedness: local optima multiply as K grows.
for k in (0, 2, 5, 9, 13):
    counts = [count_local_optima(generate_landscape(14, k, s)) for s in range(10)]
    print(f"K={k:2d}: {np.mean(counts):8.1f} local optima on average")

# %%
# CS always stops on a local optimum, rarely the global one.
land = generate_landscape(14, 5, seed=3)
optimum, best = enumerate_global_optimum(land)
hits = 0
for r in range(50):
    rng = make_rng(r)
    out = run_cs(land, random_configuration(14, rng), 1000, rng)
    assert is_local_optimum(land, out.best)
    hits += np.array_equal(out.best, optimum)
print(f"global optimum {best:.4f}; CS found it in {hits} of 50 starts")
