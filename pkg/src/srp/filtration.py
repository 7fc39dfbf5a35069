"""Tame hypergraph filtrations stored as finite data.

A tame filtration with critical values ``a_1 < ... < a_n`` is kept as the
objects ``H_0, ..., H_n`` and the ``n`` connecting monomorphisms. ``H_0`` is
the object on ``(-inf, a_1)``, ``H_i`` the object on ``[a_i, a_{i+1})`` and
``H_n`` the object on ``[a_n, inf)``: filtrations are right-continuous, the
same convention as sublevel sets.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Sequence

from .errors import FiltrationError, MorphismError
from .hypergraph import (
    EMPTY,
    Hypergraph,
    HypergraphMorphism,
    MonoClass,
    classify_morphism,
    compose,
    empty_morphism,
    ensure_valid,
    identity,
    inclusion,
    iter_isomorphism_maps,
)

NEG_INF = -math.inf


@dataclass(frozen=True)
class WeightedHypergraph:
    """A hypergraph with a real weight on every vertex and hyperedge."""

    hypergraph: Hypergraph
    weights: Mapping[str, float]

    def violations(self) -> list[str]:
        H = self.hypergraph
        problems = []
        for x in sorted(H.carrier - self.weights.keys()):
            problems.append(f"missing weight for {x}")
        for x in sorted(self.weights.keys() - H.carrier):
            problems.append(f"weight given for unknown element {x}")
        for x in sorted(self.weights.keys() & H.carrier):
            w = self.weights[x]
            if isinstance(w, bool) or not isinstance(w, (int, float)) or not math.isfinite(w):
                problems.append(f"weight of {x} is not a finite real: {w!r}")
        if problems:
            return problems
        for e in sorted(H.edges):
            for v in sorted(H.edges[e]):
                if v in self.weights and self.weights[v] > self.weights[e]:
                    problems.append(
                        f"vertex {v} (weight {self.weights[v]}) is heavier than "
                        f"its edge {e} (weight {self.weights[e]})"
                    )
        return problems


@dataclass(frozen=True)
class TameFiltration:
    critical_values: tuple[float, ...]
    objects: tuple[Hypergraph, ...]
    steps: tuple[HypergraphMorphism, ...]
    category_class: MonoClass = MonoClass.GENERAL
    _maps: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "critical_values", tuple(float(a) for a in self.critical_values))
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "steps", tuple(self.steps))
        n = len(self.critical_values)
        if any(not math.isfinite(a) for a in self.critical_values):
            raise FiltrationError("critical values must be finite")
        if any(a >= b for a, b in zip(self.critical_values, self.critical_values[1:])):
            raise FiltrationError("critical values must be strictly increasing")
        if len(self.objects) != n + 1:
            raise FiltrationError(f"expected {n + 1} objects for {n} critical values")
        if len(self.steps) != n:
            raise FiltrationError(f"expected {n} steps for {n} critical values")
        for H in self.objects:
            ensure_valid(H)
        for i, step in enumerate(self.steps):
            if step.source != self.objects[i] or step.target != self.objects[i + 1]:
                raise FiltrationError(f"step {i} does not connect objects {i} and {i + 1}")
            if step.mono_class < self.category_class:
                raise FiltrationError(
                    f"step at {self.critical_values[i]} is not in requested class "
                    f"{self.category_class.symbol!r} (it is {step.mono_class.symbol!r})"
                )
        maps = {}
        for i in range(n + 1):
            current = {x: x for x in self.objects[i].carrier}
            maps[i, i] = current
            for j in range(i + 1, n + 1):
                step = self.steps[j - 1].carrier_map
                current = {x: step[y] for x, y in current.items()}
                maps[i, j] = current
        object.__setattr__(self, "_maps", maps)

    @property
    def n(self) -> int:
        return len(self.critical_values)

    @property
    def final(self) -> Hypergraph:
        return self.objects[-1]

    def index(self, u: float) -> int:
        """Interval index of level ``u`` (0 below the first critical value)."""
        return bisect.bisect_right(self.critical_values, u)

    def at(self, u: float) -> Hypergraph:
        return self.objects[self.index(u)]

    def carrier_map(self, i: int, j: int) -> Mapping[str, str]:
        """Composite carrier map ``H_i -> H_j`` for interval indices ``i <= j``."""
        return self._maps[i, j]

    def tail_level(self) -> float:
        """A level past every critical value."""
        return self.critical_values[-1] + 1.0 if self.critical_values else 0.0

    def sample_points(self) -> tuple[float, ...]:
        """One level inside each interval: sentinels plus midpoints."""
        a = self.critical_values
        if not a:
            return (0.0,)
        mids = [(x + y) / 2 for x, y in zip(a, a[1:])]
        return (a[0] - 1.0, *mids, a[-1] + 1.0)

    def map_between(self, i: int, j: int) -> HypergraphMorphism:
        if i > j:
            raise FiltrationError("map_between needs i <= j")
        out = identity(self.objects[i])
        for k in range(i, j):
            out = compose(self.steps[k], out)
        return out


def evaluate(F: TameFiltration, u: float) -> tuple[Hypergraph, int]:
    """Object at level ``u`` together with its interval index."""
    i = F.index(u)
    return F.objects[i], i


@dataclass(frozen=True)
class TrackedSet:
    """A set of carrier elements of the object at ``base_level``."""

    base_level: float
    elements: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "elements", frozenset(self.elements))


def push_forward(F: TameFiltration, A: TrackedSet, v: float) -> TrackedSet:
    if v < A.base_level:
        raise FiltrationError(f"cannot push level {A.base_level} backwards to {v}")
    i, j = F.index(A.base_level), F.index(v)
    carrier = F.objects[i].carrier
    stray = A.elements - carrier
    if stray:
        raise FiltrationError(f"{sorted(stray)} not in the object at level {A.base_level}")
    m = F.carrier_map(i, j)
    return TrackedSet(v, frozenset(m[x] for x in A.elements))


def filtering_function(F: TameFiltration) -> dict[str, float]:
    """Level at which each element of the final object first appears.

    Elements already present in ``H_0`` get ``-inf``.
    """
    out = {}
    n = F.n
    for i in range(n, -1, -1):
        level = F.critical_values[i - 1] if i else NEG_INF
        for y in F.carrier_map(i, n).values():
            out[y] = level
    return out


def filtration_from_objects(
    critical_values: Sequence[float],
    objects: Sequence[Hypergraph],
    category_class: MonoClass | None = None,
) -> TameFiltration:
    """Filtration whose steps are the id-preserving inclusions.

    With ``category_class=None`` the weakest class among the steps is used.
    """
    steps = []
    for i in range(len(objects) - 1):
        try:
            steps.append(inclusion(objects[i], objects[i + 1]))
        except MorphismError as exc:
            raise FiltrationError(f"object {i} is not included in object {i + 1}: {exc}") from exc
    if category_class is None:
        category_class = min((s.mono_class for s in steps), default=MonoClass.SIZE_PRESERVING)
    return TameFiltration(tuple(critical_values), tuple(objects), tuple(steps), category_class)


def sublevel_filtration(
    W: WeightedHypergraph, category_class: MonoClass = MonoClass.SIZE_PRESERVING
) -> TameFiltration:
    """Sublevel filtration ``u -> {x : weight(x) <= u}`` with inclusion steps."""
    H = ensure_valid(W.hypergraph)
    problems = W.violations()
    if problems:
        raise FiltrationError("malformed weights: " + "; ".join(problems))
    levels = sorted(set(W.weights.values()))
    objects = [EMPTY]
    for a in levels:
        objects.append(
            H.sub(
                (v for v in H.vertices if W.weights[v] <= a),
                (e for e in H.edges if W.weights[e] <= a),
            )
        )
    return filtration_from_objects(levels, objects, category_class)


class InterleavingDistance(NamedTuple):
    value: float
    exact: bool


def interleaving_distance_exact(
    F: TameFiltration, G: TameFiltration, cap: int | None = None
) -> InterleavingDistance:
    """Interleaving distance via the filtering functions.

    Minimises ``max |f_F(x) - f_G(phi(x))|`` over isomorphisms ``phi`` of the
    final objects. This is exact when both filtrations are membership-reflecting
    or size-preserving; for the general class the value is returned with
    ``exact=False`` and only reflects the same minimisation.
    """
    fF, fG = filtering_function(F), filtering_function(G)
    best = math.inf
    for vmap, emap in iter_isomorphism_maps(F.final, G.final, cap):
        phi = {**vmap, **emap}
        worst = 0.0
        for x, level in fF.items():
            worst = max(worst, _gap(level, fG[phi[x]]))
            if worst >= best:
                break
        best = min(best, worst)
        if best == 0.0:
            break
    exact = min(F.category_class, G.category_class) >= MonoClass.MEMBERSHIP_REFLECTING
    return InterleavingDistance(best, exact)


def _gap(a: float, b: float) -> float:
    if a == b:
        return 0.0
    return abs(a - b)


@dataclass(frozen=True)
class Witness:
    """A non-convexity witness ``(A, X -> X' -> X'')``.

    ``A`` is a feature set of ``X`` and its image in ``X''`` is one too, while
    its image in ``X'`` is not.
    """

    elements: frozenset[str]
    first: HypergraphMorphism
    second: HypergraphMorphism

    def __post_init__(self):
        object.__setattr__(self, "elements", frozenset(self.elements))

    @property
    def objects(self) -> tuple[Hypergraph, Hypergraph, Hypergraph]:
        return self.first.source, self.first.target, self.second.target


@dataclass(frozen=True)
class MorphismFamily:
    """Piecewise-constant, right-continuous family of carrier maps."""

    breakpoints: tuple[float, ...]
    maps: tuple[Mapping[str, str], ...]

    def at(self, w: float) -> Mapping[str, str]:
        return self.maps[bisect.bisect_right(self.breakpoints, w)]


@dataclass(frozen=True)
class Counterexample:
    """Two 1-interleaved filtrations built from a witness, with their interleaving."""

    kind: str
    F: TameFiltration
    G: TameFiltration
    phi: MorphismFamily
    psi: MorphismFamily
    probe: tuple[float, float]
    eps: float = 1.0


def _check_chain(witness: Witness) -> None:
    if witness is None:
        raise FiltrationError("no witness given")
    if not witness.elements:
        raise FiltrationError("empty witness: the tracked set is empty")
    if witness.first.target != witness.second.source:
        raise FiltrationError("invalid composition: the two monomorphisms are not composable")
    stray = witness.elements - witness.first.source.carrier
    if stray:
        raise FiltrationError(f"witness elements {sorted(stray)} are not in X")


def _ident(H: Hypergraph) -> dict[str, str]:
    return {x: x for x in H.carrier}


def build_steady_counterexample(witness: Witness) -> Counterexample:
    """F = X, X', X'' with breaks at 3 and 5; G = X, X'' with a break at 4."""
    _check_chain(witness)
    X, X1, X2 = witness.objects
    iota, iota2 = witness.first, witness.second
    both = compose(iota2, iota)
    cls = min(iota.mono_class, iota2.mono_class)
    F = TameFiltration((3.0, 5.0), (X, X1, X2), (iota, iota2), cls)
    G = TameFiltration((4.0,), (X, X2), (both,), both.mono_class)
    phi = MorphismFamily((3.0, 5.0), (_ident(X), iota2.carrier_map, _ident(X2)))
    psi = MorphismFamily((2.0, 4.0), (_ident(X), iota.carrier_map, _ident(X2)))
    return Counterexample("steady", F, G, phi, psi, probe=(1.0, 5.0))


def build_ranging_counterexample(witness: Witness) -> Counterexample:
    """F = ∅, X, X', X'' with breaks 1, 3, 5; G = ∅, X', X'' with breaks 2, 6."""
    _check_chain(witness)
    X, X1, X2 = witness.objects
    iota, iota2 = witness.first, witness.second
    into_x, into_x1 = empty_morphism(X), empty_morphism(X1)
    cls = min(iota.mono_class, iota2.mono_class, into_x.mono_class)
    F = TameFiltration((1.0, 3.0, 5.0), (EMPTY, X, X1, X2), (into_x, iota, iota2), cls)
    G = TameFiltration(
        (2.0, 6.0), (EMPTY, X1, X2), (into_x1, iota2), min(iota2.mono_class, into_x1.mono_class)
    )
    phi = MorphismFamily((1.0, 3.0, 5.0), ({}, iota.carrier_map, _ident(X1), _ident(X2)))
    psi = MorphismFamily((2.0, 4.0, 6.0), ({}, _ident(X1), iota2.carrier_map, _ident(X2)))
    return Counterexample("ranging", F, G, phi, psi, probe=(4.0, 6.0))


def _levels(points: Sequence[float], eps: float) -> list[float]:
    base = sorted({p + d for p in points for d in (-eps, 0.0, eps)})
    if not base:
        return [0.0]
    out = [base[0] - 1.0, *base, base[-1] + 1.0]
    out += [(x + y) / 2 for x, y in zip(base, base[1:])]
    return sorted(set(out))


def verify_interleaving(
    F: TameFiltration,
    G: TameFiltration,
    eps: float,
    phi: MorphismFamily,
    psi: MorphismFamily,
) -> list[str]:
    """Check that ``phi``/``psi`` form an ``eps``-interleaving of F and G.

    Every ``phi_w`` and ``psi_w`` must be a monomorphism, and the two triangle
    and two square diagrams must commute. All maps are piecewise constant, so
    sampling each breakpoint (shifted by ``±eps``) and each gap between them
    decides the statement. Returns the failures found (empty when interleaved).
    """
    levels = _levels(
        [*F.critical_values, *G.critical_values, *phi.breakpoints, *psi.breakpoints], eps
    )
    failures: list[str] = []

    def fmap(X: TameFiltration, u: float, v: float) -> Mapping[str, str]:
        return X.carrier_map(X.index(u), X.index(v))

    def then(m1: Mapping[str, str], m2: Mapping[str, str]) -> dict[str, str]:
        return {x: m2[y] for x, y in m1.items()}

    def restricted(fam: MorphismFamily, src: TameFiltration, w: float) -> dict[str, str]:
        m = fam.at(w)
        return {x: m[x] for x in src.at(w).carrier}

    for w in levels:
        for name, fam, src, dst in (("phi", phi, F, G), ("psi", psi, G, F)):
            m = fam.at(w)
            S, T = src.at(w), dst.at(w + eps)
            try:
                classify_morphism(
                    {x: m[x] for x in S.vertices if x in m},
                    {x: m[x] for x in S.edges if x in m},
                    S,
                    T,
                )
            except (MorphismError, KeyError) as exc:
                failures.append(f"{name} at {w} is not a monomorphism: {exc}")
    if failures:
        return failures
    P = lambda w: restricted(phi, F, w)  # noqa: E731
    Q = lambda w: restricted(psi, G, w)  # noqa: E731
    for w in levels:
        # psi_w ∘ phi_{w-eps} = F(w-eps <= w+eps), and symmetrically for G
        if then(P(w - eps), Q(w)) != fmap(F, w - eps, w + eps):
            failures.append(f"triangle psi∘phi fails at w={w}")
        if then(Q(w - eps), P(w)) != fmap(G, w - eps, w + eps):
            failures.append(f"triangle phi∘psi fails at w={w}")
    for i, u in enumerate(levels):
        for v in levels[i:]:
            if then(fmap(F, u, v), P(v)) != then(P(u), fmap(G, u + eps, v + eps)):
                failures.append(f"square for phi fails at ({u}, {v})")
            if then(fmap(G, u, v), Q(v)) != then(Q(u), fmap(F, u + eps, v + eps)):
                failures.append(f"square for psi fails at ({u}, {v})")
    return failures
