"""Brute-force reference implementations used by the tests.

Nothing here goes through the library's filtration or persistence code: the
oracles rebuild sublevel objects from weights, walk step maps by hand and
enumerate bijections directly. Only ``Hypergraph`` and the feature predicates
are shared.
"""

from __future__ import annotations

import itertools
import math

INF = math.inf


# hypergraph-level oracles


def brute_class(vmap, emap, H, H2):
    """'=', '<=', 'any' or None (not a monomorphism), straight from the definitions."""
    if set(vmap) != set(H.vertices) or set(emap) != set(H.edges):
        return None
    if not set(vmap.values()) <= set(H2.vertices) or not set(emap.values()) <= set(H2.edges):
        return None
    if len(set(vmap.values())) != len(vmap) or len(set(emap.values())) != len(emap):
        return None
    for e, members in H.edges.items():
        for v in members:
            if vmap[v] not in H2.edges[emap[e]]:
                return None
    reflecting = all(
        (vmap[u] in H2.edges[emap[e]]) <= (u in H.edges[e]) for u in H.vertices for e in H.edges
    )
    sizes = all(len(H.edges[e]) == len(H2.edges[emap[e]]) for e in H.edges)
    if sizes and reflecting:
        return "="
    return "<=" if reflecting else "any"


def brute_isomorphisms(H, H2):
    """Every pair of bijections carrying the incidence of H exactly onto H2."""
    V, V2 = sorted(H.vertices), sorted(H2.vertices)
    E, E2 = sorted(H.edges), sorted(H2.edges)
    if len(V) != len(V2) or len(E) != len(E2):
        return []
    out = []
    for pv in itertools.permutations(V2):
        vmap = dict(zip(V, pv))
        for pe in itertools.permutations(E2):
            emap = dict(zip(E, pe))
            if all({vmap[v] for v in H.edges[e]} == set(H2.edges[emap[e]]) for e in E):
                out.append((vmap, emap))
    return out


# filtration-level oracles


def sublevel_objects(H, weights):
    """(levels, objects) of the sublevel filtration, built directly."""
    from srp.hypergraph import Hypergraph

    levels = sorted(set(weights.values()))

    def at(u):
        return Hypergraph(
            [v for v in H.vertices if weights[v] <= u],
            {e: H.edges[e] for e in H.edges if weights[e] <= u},
        )

    return levels, at


def object_index(levels, u):
    k = 0
    for a in levels:
        if a <= u:
            k += 1
    return k


def walk(F, i, j):
    """Carrier map from interval i to interval j, composing the steps one by one."""
    m = {x: x for x in F.objects[i].carrier}
    for k in range(i, j):
        step = {**F.steps[k].vertex_map, **F.steps[k].edge_map}
        m = {x: step[y] for x, y in m.items()}
    return m


def edge_singletons(H):
    return [frozenset((e,)) for e in sorted(H.edges)]


def oracle_count(holds, F, mode, u, v):
    """|S(u<=v)| or |R(u<=v)| by scanning representative levels.

    Representative levels: every critical value, ``u`` and ``v``, one level
    below everything and one past the last critical value. Feature sets are
    taken among singleton hyperedges.
    """
    crit = list(F.critical_values)
    low = (crit[0] if crit else 0.0) - 10.0
    high = (crit[-1] if crit else 0.0) + 10.0
    reps = sorted({*crit, u, low, high} | ({v} if v != INF else set()))
    idx = lambda t: object_index(crit, t)  # noqa: E731
    iu = idx(u)
    Hu = F.objects[iu]
    if mode == "steady":
        count = 0
        for A in edge_singletons(Hu):
            if not holds(A, Hu):
                continue
            top = high if v == INF else v
            ok = True
            for w in reps:
                if u <= w <= top:
                    m = walk(F, iu, idx(w))
                    if not holds(frozenset(m[x] for x in A), F.objects[idx(w)]):
                        ok = False
            count += ok
        return count
    born = set()
    for x in reps:
        if x <= u:
            ix = idx(x)
            m = walk(F, ix, iu)
            for A0 in edge_singletons(F.objects[ix]):
                if holds(A0, F.objects[ix]):
                    born.add(frozenset(m[y] for y in A0))
    top = high if v == INF else v
    count = 0
    for A in born:
        for y in reps:
            if v == INF and y != high:
                continue
            if y >= top:
                m = walk(F, iu, idx(y))
                if holds(frozenset(m[x] for x in A), F.objects[idx(y)]):
                    count += 1
                    break
    return count


def oracle_diagram(count, critical_values):
    """Cornerpoints from the neighbourhood form of the multiplicity.

    ``count(u, v)`` must accept any reals (and ``v = inf``). Each candidate
    cornerpoint is probed at ``±delta`` with ``delta`` below a quarter of
    the smallest gap between critical values.
    """
    crit = list(critical_values)
    gaps = [b - a for a, b in zip(crit, crit[1:])]
    delta = min(gaps) / 4 if gaps else 0.25
    low = (crit[0] if crit else 0.0) - 5.0
    high = (crit[-1] if crit else 0.0) + 5.0
    out = {}
    for b in [-INF, *crit]:
        for d in [*crit, INF]:
            if not b < d:
                continue
            u_in, u_out = (low, None) if b == -INF else (b + delta, b - delta)
            vs = [(high, None)] if d == INF else [(d - delta, d + delta)]
            v_in, v_out = vs[0]

            def c(u, v):
                return 0 if u is None or v is None else count(u, v)

            mu = c(u_in, v_in) - c(u_out, v_in) - c(u_in, v_out) + c(u_out, v_out)
            if mu:
                out[b, d] = mu
    return out


def oracle_interleaving(H, w1, H2, w2):
    """min over isomorphisms of max weight gap (equal infinities count as 0)."""
    best = INF
    for vmap, emap in brute_isomorphisms(H, H2):
        phi = {**vmap, **emap}
        gap = max((abs(w1[x] - w2[phi[x]]) for x in phi), default=0.0)
        best = min(best, gap)
    return best


# diagram oracles


def _coord(a, b):
    return 0.0 if a == b else abs(a - b)


def _dist(p, q):
    return max(_coord(p[0], q[0]), _coord(p[1], q[1]))


def _diag(p):
    return (p[1] - p[0]) / 2


def brute_bottleneck(A, B):
    """Minimum over all partial injections A -> B; unmatched points go to the diagonal."""
    best = INF
    n, m = len(A), len(B)
    for k in range(min(n, m) + 1):
        for left in itertools.combinations(range(n), k):
            for right in itertools.permutations(range(m), k):
                cost = 0.0
                for i, j in zip(left, right):
                    cost = max(cost, _dist(A[i], B[j]))
                for i in set(range(n)) - set(left):
                    cost = max(cost, _diag(A[i]))
                for j in set(range(m)) - set(right):
                    cost = max(cost, _diag(B[j]))
                best = min(best, cost)
    return best


def quadrant_sum(points, u, v):
    return sum(m for (b, d), m in points.items() if b < u and d > v)


def sublevel_count(holds, H, weights, mode, u, v):
    """Steady or ranging count for a sublevel filtration, from the weights alone.

    Objects are rebuilt at every representative level; every map is the
    identity on ids, so a tracked singleton keeps its name.
    """
    levels, at = sublevel_objects(H, weights)
    low, high = levels[0] - 10.0, levels[-1] + 10.0
    reps = sorted({*levels, u, low, high} | ({v} if v != INF else set()))
    top = high if v == INF else v
    here = at(u)
    if mode == "steady":
        return sum(
            1
            for A in edge_singletons(here)
            if all(holds(A, at(w)) for w in reps if u <= w <= top)
        )
    born = {A for x in reps if x <= u for A in edge_singletons(at(x)) if holds(A, at(x))}
    later = [y for y in reps if y >= top] if v != INF else [high]
    return sum(1 for A in born if any(holds(A, at(y)) for y in later))
