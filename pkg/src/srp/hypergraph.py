"""Finite hypergraphs and their monomorphisms.

A hypergraph is a finite vertex set, a finite set of identified hyperedges
and an incidence function sending each hyperedge to a nonempty vertex set.
Two hyperedges may share the same underlying vertex set; identity is by id.

Vertex ids and edge ids are plain strings drawn from disjoint namespaces, so
the carrier ``V ⊔ E`` of a hypergraph is just the union of both id sets.
"""

from __future__ import annotations

import enum
import itertools
import os
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import HypergraphError, MorphismError, SizeCapError

__all__ = [
    "Hypergraph",
    "HypergraphMorphism",
    "MonoClass",
    "EMPTY",
    "DEFAULT_SIZE_CAP",
    "validate_hypergraph",
    "ensure_valid",
    "classify_morphism",
    "morphism",
    "identity",
    "inclusion",
    "empty_morphism",
    "neighbors",
    "dual",
    "compose",
    "isomorphisms",
    "count_isomorphisms",
    "iter_isomorphism_maps",
    "size_cap",
]

DEFAULT_SIZE_CAP = 12


class MonoClass(enum.IntEnum):
    """Classes of hypergraph monomorphisms, ordered by strength.

    Size-preserving maps are membership-reflecting, which are general
    monomorphisms, so ``a >= b`` reads "class a satisfies class b".
    """

    GENERAL = 0
    MEMBERSHIP_REFLECTING = 1
    SIZE_PRESERVING = 2

    @property
    def symbol(self) -> str:
        return _SYMBOLS[self]

    @classmethod
    def from_symbol(cls, symbol: str) -> "MonoClass":
        for member, sym in _SYMBOLS.items():
            if sym == symbol:
                return member
        raise ValueError(f"unknown morphism class {symbol!r}; expected '=', '<=' or 'any'")


_SYMBOLS = {
    MonoClass.GENERAL: "any",
    MonoClass.MEMBERSHIP_REFLECTING: "<=",
    MonoClass.SIZE_PRESERVING: "=",
}


class Hypergraph:
    """Immutable hypergraph ``(V, E, h)``.

    The constructor does not validate; use :func:`validate_hypergraph` to list
    violations or :func:`ensure_valid` to raise on them.

    >>> H = Hypergraph("abc", {"e1": "ab", "e2": "bc", "e3": "c"})
    >>> sorted(H.edges["e2"])
    ['b', 'c']
    """

    __slots__ = ("_vertices", "_edges", "_hash")

    def __init__(self, vertices: Iterable[str], edges: Mapping[str, Iterable[str]]):
        self._vertices = frozenset(vertices)
        self._edges = {e: frozenset(members) for e, members in edges.items()}
        self._hash = None

    @property
    def vertices(self) -> frozenset[str]:
        return self._vertices

    @property
    def edges(self) -> Mapping[str, frozenset[str]]:
        return self._edges

    @property
    def edge_ids(self) -> frozenset[str]:
        return frozenset(self._edges)

    @property
    def carrier(self) -> frozenset[str]:
        return self._vertices | self._edges.keys()

    def __len__(self) -> int:
        return len(self._vertices) + len(self._edges)

    def is_vertex(self, x: str) -> bool:
        return x in self._vertices

    def is_edge(self, x: str) -> bool:
        return x in self._edges

    def degree(self, v: str) -> int:
        return sum(1 for members in self._edges.values() if v in members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._vertices, frozenset(self._edges.items())))
        return self._hash

    def __repr__(self) -> str:
        edges = ", ".join(
            f"{e}: {{{', '.join(sorted(self._edges[e]))}}}" for e in sorted(self._edges)
        )
        return f"Hypergraph(V={{{', '.join(sorted(self._vertices))}}}, E={{{edges}}})"

    def sub(self, vertices: Iterable[str], edges: Iterable[str]) -> "Hypergraph":
        """Sub-hypergraph keeping the given ids, with full incidence."""
        return Hypergraph(vertices, {e: self._edges[e] for e in edges})

    def relabel(self, mapping: Mapping[str, str]) -> "Hypergraph":
        """Rename carrier elements; ids missing from ``mapping`` are kept."""
        rename = lambda x: mapping.get(x, x)  # noqa: E731
        return Hypergraph(
            (rename(v) for v in self._vertices),
            {rename(e): {rename(v) for v in members} for e, members in self._edges.items()},
        )


EMPTY = Hypergraph((), {})


def validate_hypergraph(H: Hypergraph) -> list[str]:
    """Return the list of invariant violations of ``H`` (empty when valid)."""
    problems = []
    for e in sorted(H.edges):
        members = H.edges[e]
        if not members:
            problems.append(f"empty hyperedge {e}")
        for v in sorted(members - H.vertices):
            problems.append(f"unknown vertex {v} in hyperedge {e}")
    for x in sorted(H.vertices & H.edges.keys()):
        problems.append(f"id {x} is both a vertex and a hyperedge")
    return problems


def ensure_valid(H: Hypergraph) -> Hypergraph:
    problems = validate_hypergraph(H)
    if problems:
        raise HypergraphError("; ".join(problems))
    return H


def classify_morphism(
    vertex_map: Mapping[str, str],
    edge_map: Mapping[str, str],
    source: Hypergraph,
    target: Hypergraph,
) -> MonoClass:
    """Strongest monomorphism class satisfied by the maps.

    Raises :class:`MorphismError` naming the first violated clause when the
    maps do not define an injective hypergraph morphism.
    """
    missing_v = source.vertices - vertex_map.keys()
    if missing_v:
        raise MorphismError(f"vertex map undefined on {sorted(missing_v)[0]}")
    missing_e = source.edges.keys() - edge_map.keys()
    if missing_e:
        raise MorphismError(f"edge map undefined on {sorted(missing_e)[0]}")
    for v in sorted(source.vertices):
        if vertex_map[v] not in target.vertices:
            raise MorphismError(f"vertex {v} is sent to {vertex_map[v]}, not a target vertex")
    for e in sorted(source.edges):
        if edge_map[e] not in target.edges:
            raise MorphismError(f"edge {e} is sent to {edge_map[e]}, not a target edge")
    if len({vertex_map[v] for v in source.vertices}) != len(source.vertices):
        raise MorphismError("not injective on vertices")
    if len({edge_map[e] for e in source.edges}) != len(source.edges):
        raise MorphismError("not injective on edges")

    reflecting = True
    sizes = True
    for e in sorted(source.edges):
        members = source.edges[e]
        image = target.edges[edge_map[e]]
        for v in sorted(members):
            if vertex_map[v] not in image:
                raise MorphismError(
                    f"incidence not preserved: {v} in {e} but "
                    f"{vertex_map[v]} not in {edge_map[e]}"
                )
        if len(image) != len(members):
            sizes = False
        if reflecting:
            hit = sum(1 for v in source.vertices if vertex_map[v] in image)
            reflecting = hit == len(members)
    if sizes:
        return MonoClass.SIZE_PRESERVING
    if reflecting:
        return MonoClass.MEMBERSHIP_REFLECTING
    return MonoClass.GENERAL


@dataclass(frozen=True, eq=False)
class HypergraphMorphism:
    """Verified monomorphism ``source -> target``.

    Build instances through :func:`morphism` so that ``mono_class`` is always
    derived from the maps rather than trusted.
    """

    vertex_map: Mapping[str, str]
    edge_map: Mapping[str, str]
    source: Hypergraph
    target: Hypergraph
    mono_class: MonoClass

    @property
    def carrier_map(self) -> dict[str, str]:
        return {**self.vertex_map, **self.edge_map}

    def __call__(self, x: str) -> str:
        if x in self.vertex_map:
            return self.vertex_map[x]
        return self.edge_map[x]

    def image(self, elements: Iterable[str]) -> frozenset[str]:
        return frozenset(self(x) for x in elements)

    def inverse(self) -> "HypergraphMorphism":
        return morphism(
            {b: a for a, b in self.vertex_map.items()},
            {b: a for a, b in self.edge_map.items()},
            self.target,
            self.source,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HypergraphMorphism):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and dict(self.vertex_map) == dict(other.vertex_map)
            and dict(self.edge_map) == dict(other.edge_map)
        )

    def __repr__(self) -> str:
        pairs = ", ".join(f"{a}->{b}" for a, b in sorted(self.carrier_map.items()))
        return f"HypergraphMorphism({pairs}; class {self.mono_class.symbol!r})"


def morphism(
    vertex_map: Mapping[str, str],
    edge_map: Mapping[str, str],
    source: Hypergraph,
    target: Hypergraph,
) -> HypergraphMorphism:
    """Validate and classify a monomorphism."""
    cls = classify_morphism(vertex_map, edge_map, source, target)
    return HypergraphMorphism(dict(vertex_map), dict(edge_map), source, target, cls)


def identity(H: Hypergraph) -> HypergraphMorphism:
    return morphism({v: v for v in H.vertices}, {e: e for e in H.edges}, H, H)


def inclusion(H: Hypergraph, H2: Hypergraph) -> HypergraphMorphism:
    """The id-preserving map ``H -> H2``; raises if it is not a monomorphism."""
    return morphism({v: v for v in H.vertices}, {e: e for e in H.edges}, H, H2)


def empty_morphism(H: Hypergraph) -> HypergraphMorphism:
    """The unique map out of the empty hypergraph."""
    return morphism({}, {}, EMPTY, H)


def neighbors(H: Hypergraph, e: str) -> frozenset[str]:
    """Other hyperedges sharing at least one vertex with ``e``."""
    if e not in H.edges:
        raise HypergraphError(f"unknown edge {e}")
    members = H.edges[e]
    return frozenset(f for f, other in H.edges.items() if f != e and members & other)


def dual(H: Hypergraph) -> Hypergraph:
    """Swap vertices and hyperedges.

    >>> D = dual(Hypergraph("abc", {"e1": "ab", "e2": "bc", "e3": "c"}))
    >>> sorted(D.edges["c"])
    ['e2', 'e3']
    """
    incidence: dict[str, set[str]] = {v: set() for v in H.vertices}
    for e, members in H.edges.items():
        for v in members:
            incidence[v].add(e)
    for v in sorted(incidence):
        if not incidence[v]:
            raise HypergraphError(f"vertex {v} has empty dual edge")
    return Hypergraph(H.edges.keys(), incidence)


def compose(g: HypergraphMorphism, f: HypergraphMorphism) -> HypergraphMorphism:
    """``g ∘ f``, re-classified on the composite."""
    if f.target != g.source:
        raise MorphismError("cannot compose: target of f differs from source of g")
    return morphism(
        {v: g.vertex_map[w] for v, w in f.vertex_map.items()},
        {e: g.edge_map[d] for e, d in f.edge_map.items()},
        f.source,
        g.target,
    )


def size_cap() -> int:
    """Isomorphism-search cap, overridable through ``SRP_SIZE_CAP``."""
    raw = os.environ.get("SRP_SIZE_CAP")
    if raw is None:
        return DEFAULT_SIZE_CAP
    cap = int(raw)
    if cap <= 0:
        raise ValueError("SRP_SIZE_CAP must be positive")
    return cap


def iter_isomorphism_maps(
    H: Hypergraph, H2: Hypergraph, cap: int | None = None
) -> Iterator[tuple[dict[str, str], dict[str, str]]]:
    """Yield ``(vertex_map, edge_map)`` for every isomorphism ``H -> H2``.

    Edges are assigned by backtracking with pairwise-intersection pruning;
    once all edges are fixed, vertices are determined up to permutations
    inside classes of equal membership signature.
    """
    cap = size_cap() if cap is None else cap
    size = max(len(H), len(H2))
    if size > cap:
        raise SizeCapError(size, cap)
    if len(H.vertices) != len(H2.vertices) or len(H.edges) != len(H2.edges):
        return
    if sorted(map(len, H.edges.values())) != sorted(map(len, H2.edges.values())):
        return
    if sorted(H.degree(v) for v in H.vertices) != sorted(H2.degree(v) for v in H2.vertices):
        return

    edges = sorted(H.edges, key=lambda e: (-len(H.edges[e]), e))
    targets = sorted(H2.edges)
    edge_map: dict[str, str] = {}
    used: set[str] = set()

    def vertex_assignments():
        by_sig: dict[frozenset[str], list[str]] = {}
        for v in sorted(H.vertices):
            sig = frozenset(edge_map[e] for e in H.edges if v in H.edges[e])
            by_sig.setdefault(sig, []).append(v)
        by_sig2: dict[frozenset[str], list[str]] = {}
        for w in sorted(H2.vertices):
            sig = frozenset(f for f in H2.edges if w in H2.edges[f])
            by_sig2.setdefault(sig, []).append(w)
        if {s: len(vs) for s, vs in by_sig.items()} != {s: len(ws) for s, ws in by_sig2.items()}:
            return
        classes = sorted(by_sig, key=lambda s: sorted(s))
        yield from _product_of_bijections([(by_sig[s], by_sig2[s]) for s in classes])

    def extend(k: int):
        if k == len(edges):
            for vmap in vertex_assignments():
                yield vmap, dict(edge_map)
            return
        e = edges[k]
        for f in targets:
            if f in used or len(H2.edges[f]) != len(H.edges[e]):
                continue
            if any(
                len(H.edges[e] & H.edges[d]) != len(H2.edges[f] & H2.edges[edge_map[d]])
                for d in edges[:k]
            ):
                continue
            edge_map[e] = f
            used.add(f)
            yield from extend(k + 1)
            used.discard(f)
            del edge_map[e]

    yield from extend(0)


def _product_of_bijections(pairs):
    if not pairs:
        yield {}
        return
    (left, right), rest = pairs[0], pairs[1:]
    for tail in _product_of_bijections(rest):
        for perm in itertools.permutations(right):
            out = dict(tail)
            out.update(zip(left, perm))
            yield out


def isomorphisms(H: Hypergraph, H2: Hypergraph, cap: int | None = None) -> list[HypergraphMorphism]:
    """All isomorphisms ``H -> H2`` (exhaustive; refuses instances above the cap)."""
    return [morphism(vmap, emap, H, H2) for vmap, emap in iter_isomorphism_maps(H, H2, cap)]


def count_isomorphisms(H: Hypergraph, H2: Hypergraph, cap: int | None = None) -> int:
    return sum(1 for _ in iter_isomorphism_maps(H, H2, cap))
