"""
NK landscape basics
===================

Build a landscape, look up a node's contribution by hand and compare with
the library, then evaluate a whole configuration.
"""
# %%
# A five-node landscape where each node depends on three others. The fitness
# matrix has 2**(K+1) = 16 rows and one column per node.
import numpy as np

from nkictt import (configuration_fitness, contribution_row_index, fitness_after_flip,
                    generate_landscape, node_contribution)

land = generate_landscape(n=5, k=3, seed=1)
print("matrix shape:", land.fitness_matrix.shape)
print("dependencies:\n", land.deps)

# %%
# Row addressing. Node p's own bit picks the upper (0) or lower (1) half;
# inside that half the dependent bits, read in ascending node order with the
# first one most significant, give the row. Rows are numbered from 1 here.
config = np.array([0, 1, 1, 0, 1], dtype=np.uint8)
p = 3
dep_bits = "".join(str(config[q]) for q in land.deps[p])
by_hand = 1 + int(dep_bits, 2) + (2 ** land.k if config[p] else 0)
print(f"node {p}: dependent bits {dep_bits} -> row {by_hand}")
print("library row:", contribution_row_index(land, config, p))
print("contribution:", node_contribution(land, config, p),
      "==", land.fitness_matrix[by_hand - 1, p])

# %%
# Overall fitness is the mean contribution. Flipping one node only touches
# that node and the nodes depending on it, which fitness_after_flip exploits.
print("fitness:", configuration_fitness(land, config))
for q in range(5):
    print(f"  flip {q}: {fitness_after_flip(land, config, q):.6f}")
