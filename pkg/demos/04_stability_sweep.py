"""
Stability on random weighted hypergraphs
========================================

Perturb the weights of random hypergraphs and compare the bottleneck
distance between diagrams with the interleaving distance between
filtrations. For exclusivity the first never exceeds the second.
"""

import random

import numpy as np

from srp import EXCLUSIVITY, bottleneck, diagram, persistence_function
from srp.filtration import WeightedHypergraph, interleaving_distance_exact, sublevel_filtration
from srp.generate import perturb_weights, random_hypergraph, random_weights

rng = random.Random(2024)
rows = []
for _ in range(60):
    H = random_hypergraph(rng, 5, 5, min_edges=2)
    w = random_weights(rng, H)
    F = sublevel_filtration(WeightedHypergraph(H, w))
    G = sublevel_filtration(WeightedHypergraph(H, perturb_weights(rng, H, w, scale=1.0)))
    d_int = interleaving_distance_exact(F, G).value
    for mode in ("steady", "ranging"):
        d_b = bottleneck(
            diagram(persistence_function(EXCLUSIVITY, F, mode)),
            diagram(persistence_function(EXCLUSIVITY, G, mode)),
        )
        rows.append((d_b, d_int))

# %%
arr = np.array(rows)
slack = arr[:, 1] - arr[:, 0]
print("pairs:", len(arr))
print("mean bottleneck %.3f, mean interleaving %.3f" % tuple(arr.mean(axis=0)))
print("min slack:", slack.min())
assert (slack >= 0).all()
