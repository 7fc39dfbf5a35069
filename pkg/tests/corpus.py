"""Seeded random corpora shared by the property and acceptance tests."""

import functools
import random

from srp.filtration import WeightedHypergraph, sublevel_filtration
from srp.generate import perturb_weights, random_relabeling, random_sublevel_filtration
from srp.hypergraph import MonoClass

CORPUS_SIZE = 200
CORPUS_SEED = 7


@functools.lru_cache(maxsize=None)
def sublevel_corpus(size=CORPUS_SIZE, seed=CORPUS_SEED):
    """Size-preserving sublevel filtrations: at most 6 edges, at most 4 critical values."""
    rng = random.Random(seed)
    return tuple(random_sublevel_filtration(rng, 6, 6, levels=4, min_edges=3) for _ in range(size))


@functools.lru_cache(maxsize=None)
def perturbed_pairs(size=100, seed=11):
    """(W, F, W2, G): G has perturbed weights on a relabeled copy of W's hypergraph."""
    rng = random.Random(seed)
    out = []
    for _ in range(size):
        W, F = random_sublevel_filtration(rng, 6, 6, levels=4, min_edges=2)
        H = W.hypergraph
        w2 = perturb_weights(rng, H, dict(W.weights), scale=rng.choice((0.5, 1.0, 2.0)))
        names = random_relabeling(rng, H)
        H2 = H.relabel(names)
        W2 = WeightedHypergraph(H2, {names[x]: w for x, w in w2.items()})
        G = sublevel_filtration(W2, MonoClass.SIZE_PRESERVING)
        out.append((W, F, W2, G))
    return tuple(out)
