"""Hypergraph features and convexity probes.

A feature is an isomorphism-invariant predicate on pairs ``(A, H)`` where
``A`` is a set of carrier elements of ``H``. The three built-in features
(hub, exclusivity, max-originality) only ever hold on a singleton ``{e}`` with
``e`` a hyperedge, so they are enumerated edge by edge. Features over
arbitrary subsets are supported but must opt into exponential enumeration.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .errors import FeatureError, HypergraphError
from .filtration import Witness
from .generate import hypergraphs_by_size, random_hypergraph, random_sub_object, sub_objects
from .hypergraph import Hypergraph, HypergraphMorphism, MonoClass, inclusion, neighbors

__all__ = [
    "Feature",
    "Witness",
    "WitnessSearch",
    "ContinuedCheck",
    "HUB",
    "EXCLUSIVITY",
    "MAX_ORIGINALITY",
    "FEATURES",
    "get_feature",
    "hub_holds",
    "exclusivity_holds",
    "max_originality_value",
    "max_originality_holds",
    "subset_feature",
    "maximal_version",
    "minimal_version",
    "verify_witness",
    "convexity_witness_search",
    "continued_check",
]

SINGLETON_EDGE = "singleton-edge"
SUBSETS = "subsets"

Predicate = Callable[[frozenset, Hypergraph], bool]


@dataclass(frozen=True)
class Feature:
    """A named feature.

    ``convex_in`` records the weakest monomorphism class in which the feature
    is known to be convex, or ``None`` when it is known not to be convex.
    """

    name: str
    holds: Predicate
    support: str = SINGLETON_EDGE
    convex_in: Optional[MonoClass] = None
    exponential: bool = False

    def __post_init__(self):
        if self.support not in (SINGLETON_EDGE, SUBSETS):
            raise FeatureError(f"unknown support shape {self.support!r}")
        if self.support == SUBSETS and not self.exponential:
            raise FeatureError(
                f"feature {self.name!r} ranges over all subsets; pass exponential=True"
            )

    def __call__(self, A: Iterable[str], H: Hypergraph) -> bool:
        return self.holds(frozenset(A), H)

    def enumerate(self, H: Hypergraph) -> list[frozenset[str]]:
        """All feature sets of ``H``, in canonical order."""
        if self.support == SINGLETON_EDGE:
            cands = (frozenset((e,)) for e in sorted(H.edges))
        else:
            carrier = sorted(H.carrier)
            cands = (
                frozenset(c)
                for r in range(len(carrier) + 1)
                for c in itertools.combinations(carrier, r)
            )
        return [A for A in cands if self.holds(A, H)]


def _single_edge(A: frozenset, H: Hypergraph) -> Optional[str]:
    if len(A) != 1:
        return None
    (e,) = A
    return e if e in H.edges else None


def hub_holds(A: Iterable[str], H: Hypergraph) -> bool:
    """``A = {e}`` with ``e`` having strictly more neighbours than any neighbour."""
    e = _single_edge(frozenset(A), H)
    if e is None:
        return False
    around = neighbors(H, e)
    if not around:
        return False
    return len(around) > max(len(neighbors(H, f)) for f in around)


def exclusivity_holds(A: Iterable[str], H: Hypergraph) -> bool:
    e = _single_edge(frozenset(A), H)
    if e is None:
        return False
    others = set().union(*(m for f, m in H.edges.items() if f != e))
    return not H.edges[e] <= others


def max_originality_value(H: Hypergraph, e: str) -> Fraction:
    """``1 - max_{f in N(e)} |e ∩ f| / |e|``, or 1 for an edge without neighbours."""
    if e not in H.edges:
        raise HypergraphError(f"unknown edge {e}")
    around = neighbors(H, e)
    if not around:
        return Fraction(1)
    members = H.edges[e]
    overlap = max(len(members & H.edges[f]) for f in around)
    return 1 - Fraction(overlap, len(members))


def max_originality_holds(A: Iterable[str], H: Hypergraph) -> bool:
    e = _single_edge(frozenset(A), H)
    return e is not None and max_originality_value(H, e) > Fraction(1, 2)


HUB = Feature("hub", hub_holds)
EXCLUSIVITY = Feature("exclusivity", exclusivity_holds, convex_in=MonoClass.SIZE_PRESERVING)
MAX_ORIGINALITY = Feature(
    "max-originality", max_originality_holds, convex_in=MonoClass.SIZE_PRESERVING
)
FEATURES = {f.name: f for f in (HUB, EXCLUSIVITY, MAX_ORIGINALITY)}


def get_feature(name: str) -> Feature:
    try:
        return FEATURES[name]
    except KeyError:
        raise FeatureError(f"unknown feature {name!r}; choose from {sorted(FEATURES)}") from None


def subset_feature(name: str, predicate: Predicate, convex_in: Optional[MonoClass] = None) -> Feature:
    """A feature enumerated over every subset of the carrier."""
    return Feature(name, predicate, SUBSETS, convex_in, exponential=True)


def maximal_version(F: Feature) -> Feature:
    """Keep the feature sets with no strictly larger feature set in the same hypergraph."""

    def holds(A, H):
        if not F.holds(A, H):
            return False
        return not any(A < B for B in F.enumerate(H))

    return Feature(f"M({F.name})", holds, F.support, None, F.exponential)


def minimal_version(F: Feature) -> Feature:
    def holds(A, H):
        if not F.holds(A, H):
            return False
        return not any(B < A for B in F.enumerate(H))

    return Feature(f"m({F.name})", holds, F.support, None, F.exponential)


def verify_witness(F: Feature, witness: Witness) -> list[str]:
    """Re-check the three defining conditions; returns the failed ones."""
    X, X1, X2 = witness.objects
    A = witness.elements
    failed = []
    if witness.first.target != witness.second.source:
        failed.append("the monomorphisms are not composable")
        return failed
    if not A <= X.carrier:
        failed.append(f"A={sorted(A)} is not a subset of X")
        return failed
    if not F.holds(A, X):
        failed.append(f"holds(A, X) is false for A={sorted(A)}")
    if F.holds(witness.first.image(A), X1):
        failed.append("holds(ι(A), X') is true")
    if not F.holds(witness.second.image(witness.first.image(A)), X2):
        failed.append("holds(ι'ι(A), X'') is false")
    return failed


@dataclass(frozen=True)
class WitnessSearch:
    """Outcome of a witness search.

    ``witness`` is ``None`` when nothing was found within ``budget`` chains;
    that is not a proof of convexity.
    """

    feature: str
    mono_class: MonoClass
    witness: Optional[Witness]
    examined: int
    budget: int
    exhaustive_complete: bool

    @property
    def found(self) -> bool:
        return self.witness is not None


def _check_caps(max_vertices: int, max_edges: int, budget: int) -> None:
    if max_vertices < 1 or max_edges < 1:
        raise FeatureError("size caps must be positive")
    if budget < 1:
        raise FeatureError("budget must be positive")


def _witness(A, X, X1, X2) -> Witness:
    return Witness(A, inclusion(X, X1), inclusion(X1, X2))


def convexity_witness_search(
    F: Feature,
    mono_class: MonoClass,
    *,
    max_vertices: int = 6,
    max_edges: int = 6,
    budget: int = 200_000,
    seed: Optional[int] = 0,
) -> WitnessSearch:
    """Look for ``X -> X' -> X''`` in ``mono_class`` on which ``F`` is lost then regained.

    Chains of inclusions are scanned exhaustively, smallest ``X''`` first; if
    that phase ends within budget, random chains use the remainder
    (skipped when ``seed`` is ``None``).
    ``budget`` bounds the number of ``(X'', X', X)`` triples examined.
    """
    _check_caps(max_vertices, max_edges, budget)
    examined = 0

    def result(w, complete):
        return WitnessSearch(F.name, mono_class, w, examined, budget, complete)

    def scan(X2: Hypergraph, subs_x1, subs_x):
        nonlocal examined
        top = F.enumerate(X2)
        if not top:
            examined += 1
            return None
        for X1 in subs_x1(X2):
            lost = [A for A in top if A <= X1.carrier and not F.holds(A, X1)]
            if not lost:
                examined += 1
                if examined >= budget:
                    return False
                continue
            for X in subs_x(X1):
                examined += 1
                for A in lost:
                    if A <= X.carrier and F.holds(A, X):
                        return _witness(A, X, X1, X2)
                if examined >= budget:
                    return False
        return None

    exhaustive = lambda Y: sub_objects(Y, mono_class)  # noqa: E731
    for X2 in hypergraphs_by_size(max_vertices, max_edges):
        out = scan(X2, exhaustive, exhaustive)
        if out is False:
            return result(None, False)
        if out is not None:
            return result(out, False)
        if examined >= budget:
            return result(None, False)

    if seed is None:
        return result(None, True)
    rng = random.Random(seed)
    one = lambda Y: [random_sub_object(rng, Y, mono_class)]  # noqa: E731
    while examined < budget:
        X2 = random_hypergraph(rng, max_vertices, max_edges)
        out = scan(X2, one, one)
        if out:
            return result(out, True)
    return result(None, True)


@dataclass(frozen=True)
class ContinuedCheck:
    feature: str
    direction: str
    mono_class: MonoClass
    counterexample: Optional[tuple[frozenset, HypergraphMorphism]]
    examined: int
    budget: int

    @property
    def found(self) -> bool:
        return self.counterexample is not None


def continued_check(
    F: Feature,
    direction: str,
    mono_class: MonoClass = MonoClass.GENERAL,
    *,
    max_vertices: int = 4,
    max_edges: int = 4,
    budget: int = 20_000,
    seed: int = 0,
) -> ContinuedCheck:
    """Try to refute right- or left-continuity of ``F`` on sampled inclusions.

    Right: ``(A, X) in F`` implies ``ι(A, X) in F``. Left: the converse.
    Small pairs are scanned exhaustively first, then random ones.
    """
    if direction not in ("right", "left"):
        raise FeatureError("direction must be 'right' or 'left'")
    _check_caps(max_vertices, max_edges, budget)
    examined = 0

    def probe(X: Hypergraph, Y: Hypergraph):
        if direction == "right":
            bad = [A for A in F.enumerate(X) if not F.holds(A, Y)]
        else:
            bad = [A for A in F.enumerate(Y) if A <= X.carrier and not F.holds(A, X)]
        return (bad[0], inclusion(X, Y)) if bad else None

    def done(ce):
        return ContinuedCheck(F.name, direction, mono_class, ce, examined, budget)

    for Y in hypergraphs_by_size(max_vertices, max_edges):
        for X in sub_objects(Y, mono_class):
            examined += 1
            ce = probe(X, Y)
            if ce or examined >= budget:
                return done(ce)
    rng = random.Random(seed)
    while examined < budget:
        Y = random_hypergraph(rng, max_vertices, max_edges)
        X = random_sub_object(rng, Y, mono_class)
        examined += 1
        ce = probe(X, Y)
        if ce:
            return done(ce)
    return done(None)
