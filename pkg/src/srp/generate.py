"""Hypergraph and filtration generators.

Two kinds of generators live here: exhaustive ones producing small hypergraphs
and their sub-objects in a fixed canonical order (used by witness searches),
and seeded random ones used by the property suites and the CLI sweeps.
"""

from __future__ import annotations

import itertools
import random
import string
from typing import Iterator

from .filtration import TameFiltration, WeightedHypergraph, sublevel_filtration
from .hypergraph import Hypergraph, MonoClass

VERTEX_NAMES = string.ascii_lowercase


def vertex_name(i: int) -> str:
    return VERTEX_NAMES[i] if i < len(VERTEX_NAMES) else f"v{i}"


def edge_name(i: int) -> str:
    return f"e{i}"


def _from_masks(n_vertices: int, masks: tuple[int, ...]) -> Hypergraph:
    names = [vertex_name(i) for i in range(n_vertices)]
    return Hypergraph(
        names,
        {
            edge_name(k): [names[i] for i in range(n_vertices) if mask >> i & 1]
            for k, mask in enumerate(masks)
        },
    )


def canonical_hypergraphs(n_vertices: int, n_edges: int) -> Iterator[Hypergraph]:
    """Hypergraphs on ``n_vertices`` with ``n_edges`` edges and no isolated vertex.

    Edges are listed as nondecreasing vertex bitmasks, which removes edge
    relabelings but not vertex relabelings.
    """
    full = (1 << n_vertices) - 1
    for masks in itertools.combinations_with_replacement(range(1, full + 1), n_edges):
        union = 0
        for m in masks:
            union |= m
        if union == full:
            yield _from_masks(n_vertices, masks)


def hypergraphs_by_size(max_vertices: int, max_edges: int) -> Iterator[Hypergraph]:
    """Canonical hypergraphs ordered by ``|V| + |E|``, then by ``|V|``."""
    for total in range(2, max_vertices + max_edges + 1):
        for nv in range(1, max_vertices + 1):
            ne = total - nv
            if 1 <= ne <= max_edges:
                yield from canonical_hypergraphs(nv, ne)


def _subsets(items):
    items = sorted(items)
    for r in range(len(items) + 1):
        yield from itertools.combinations(items, r)


def sub_objects(Y: Hypergraph, mono_class: MonoClass) -> Iterator[Hypergraph]:
    """Sub-hypergraphs ``X`` of ``Y`` whose inclusion lies in ``mono_class``.

    Every monomorphism into ``Y`` is isomorphic to one of these inclusions, up
    to isolated vertices: for the size-preserving class the vertex set of
    ``X`` is exactly the union of its edges.
    """
    if mono_class == MonoClass.SIZE_PRESERVING:
        for edges in _subsets(Y.edges):
            verts = set().union(*(Y.edges[e] for e in edges)) if edges else set()
            yield Y.sub(verts, edges)
        return
    for verts in _subsets(Y.vertices):
        vs = frozenset(verts)
        live = [e for e in sorted(Y.edges) if Y.edges[e] & vs]
        for edges in _subsets(live):
            if mono_class == MonoClass.MEMBERSHIP_REFLECTING:
                yield Hypergraph(vs, {e: Y.edges[e] & vs for e in edges})
                continue
            choices = [
                [frozenset(c) for c in _subsets(Y.edges[e] & vs) if c] for e in edges
            ]
            for incidence in itertools.product(*choices):
                yield Hypergraph(vs, dict(zip(edges, incidence)))


def random_sub_object(rng: random.Random, Y: Hypergraph, mono_class: MonoClass) -> Hypergraph:
    """A random sub-object of ``Y`` in ``mono_class`` (may keep isolated vertices)."""
    edges = [e for e in sorted(Y.edges) if rng.random() < 0.6]
    needed = set().union(*(Y.edges[e] for e in edges)) if edges else set()
    if mono_class == MonoClass.SIZE_PRESERVING:
        extra = {v for v in sorted(Y.vertices - needed) if rng.random() < 0.3}
        return Y.sub(needed | extra, edges)
    verts = {v for v in sorted(Y.vertices) if rng.random() < 0.7}
    edges = [e for e in edges if Y.edges[e] & verts]
    if mono_class == MonoClass.MEMBERSHIP_REFLECTING:
        return Hypergraph(verts, {e: Y.edges[e] & verts for e in edges})
    incidence = {}
    for e in edges:
        pool = sorted(Y.edges[e] & verts)
        keep = {v for v in pool if rng.random() < 0.7} or {rng.choice(pool)}
        incidence[e] = keep
    return Hypergraph(verts, incidence)


def random_hypergraph(
    rng: random.Random, max_vertices: int = 6, max_edges: int = 6, min_edges: int = 1
) -> Hypergraph:
    """Random hypergraph with every vertex covered by some edge."""
    nv = rng.randint(1, max_vertices)
    ne = rng.randint(min(min_edges, max_edges), max_edges)
    names = [vertex_name(i) for i in range(nv)]
    edges = {}
    for k in range(ne):
        size = rng.randint(1, min(nv, 3))
        edges[edge_name(k)] = rng.sample(names, size)
    covered = set().union(*edges.values()) if edges else set()
    return Hypergraph(covered, edges)


def random_weights(
    rng: random.Random, H: Hypergraph, levels: int = 4, step: float = 1.0
) -> dict[str, float]:
    """Weights on ``{0, step, ..., (levels-1)*step}`` with vertices no heavier than their edges."""
    top = levels - 1
    weights = {v: float(rng.randint(0, top)) * step for v in sorted(H.vertices)}
    for e, members in sorted(H.edges.items()):
        floor = max(weights[v] for v in members)
        weights[e] = float(rng.randint(int(floor / step), top)) * step
    return weights


def random_sublevel_filtration(
    rng: random.Random,
    max_vertices: int = 6,
    max_edges: int = 6,
    levels: int = 4,
    min_edges: int = 1,
) -> tuple[WeightedHypergraph, TameFiltration]:
    H = random_hypergraph(rng, max_vertices, max_edges, min_edges)
    W = WeightedHypergraph(H, random_weights(rng, H, levels))
    return W, sublevel_filtration(W, MonoClass.SIZE_PRESERVING)


def perturb_weights(
    rng: random.Random, H: Hypergraph, weights: dict[str, float], scale: float = 1.0
) -> dict[str, float]:
    """Shift each weight by a multiple of ``scale/2`` in ``[-scale, scale]``,
    then lift edges so that no vertex is heavier than its edge."""
    out = {x: w + scale * rng.choice((-1.0, -0.5, 0.0, 0.5, 1.0)) for x, w in sorted(weights.items())}
    for e, members in sorted(H.edges.items()):
        out[e] = max(out[e], *(out[v] for v in members))
    return out


def random_relabeling(rng: random.Random, H: Hypergraph) -> dict[str, str]:
    """A random renaming of ``H`` onto fresh ids (vertices ``x*``, edges ``f*``)."""
    verts = sorted(H.vertices)
    edges = sorted(H.edges)
    vnames = [f"x{i}" for i in range(len(verts))]
    enames = [f"f{i}" for i in range(len(edges))]
    rng.shuffle(vnames)
    rng.shuffle(enames)
    return {**dict(zip(verts, vnames)), **dict(zip(edges, enames))}
