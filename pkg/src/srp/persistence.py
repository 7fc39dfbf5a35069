"""Steady and ranging persistence of features along tame filtrations.

Persistence functions are evaluated exactly at any pair of levels by
recomputing steady or ranging sets; the grid stored on a
:class:`PersistenceFunction` is a cache over one sample level per interval.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .errors import PersistenceAxiomError
from .features import Feature
from .filtration import TameFiltration, TrackedSet

INF = math.inf
MODES = ("steady", "ranging")


class _Tracker:
    """Feature sets of every interval of one filtration, tracked by index."""

    def __init__(self, feature: Feature, F: TameFiltration):
        self.feature = feature
        self.F = F
        self.sets = [frozenset(feature.enumerate(H)) for H in F.objects]

    def push(self, A: frozenset, i: int, j: int) -> frozenset:
        m = self.F.carrier_map(i, j)
        return frozenset(m[x] for x in A)

    def steady(self, i: int, j: int) -> set[frozenset]:
        return {
            A
            for A in self.sets[i]
            if all(self.push(A, i, k) in self.sets[k] for k in range(i + 1, j + 1))
        }

    def ranging(self, i: int, j: int) -> set[frozenset]:
        born = set()
        for k in range(i + 1):
            born.update(self.push(A, k, i) for A in self.sets[k])
        last = self.F.n
        return {A for A in born if any(self.push(A, i, k) in self.sets[k] for k in range(j, last + 1))}

    def count(self, mode: str, i: int, j: int) -> int:
        return len(self.steady(i, j) if mode == "steady" else self.ranging(i, j))


def _indices(F: TameFiltration, u: float, v: float) -> tuple[int, int]:
    if u > v:
        raise ValueError(f"expected u <= v, got u={u}, v={v}")
    if math.isinf(u):
        raise ValueError("u must be finite")
    return F.index(u), F.n if v == INF else F.index(v)


def steady_set(feature: Feature, F: TameFiltration, u: float, v: float) -> set[TrackedSet]:
    """Feature sets at ``u`` whose image is a feature set at every level of ``[u, v]``."""
    i, j = _indices(F, u, v)
    return {TrackedSet(u, A) for A in _Tracker(feature, F).steady(i, j)}


def ranging_set(feature: Feature, F: TameFiltration, u: float, v: float) -> set[TrackedSet]:
    """Sets at ``u`` that are images of a feature set from some level ``x <= u``
    and whose image is a feature set at some level ``y >= v``."""
    i, j = _indices(F, u, v)
    return {TrackedSet(u, A) for A in _Tracker(feature, F).ranging(i, j)}


@dataclass(frozen=True, eq=False)
class PersistenceFunction:
    """``(u <= v) -> |S(u <= v)|`` or ``|R(u <= v)|`` for one feature and filtration.

    ``values`` caches the counts on all pairs of ``samples`` (plus ``v = inf``);
    calling the object evaluates any pair exactly.
    """

    feature: Feature
    filtration: TameFiltration
    mode: str
    samples: tuple[float, ...]
    values: Mapping[tuple[float, float], int]
    _tracker: _Tracker = field(repr=False, compare=False, default=None)

    def __call__(self, u: float, v: float) -> int:
        i, j = _indices(self.filtration, u, v)
        tracker = self._tracker or _Tracker(self.feature, self.filtration)
        return tracker.count(self.mode, i, j)

    def grid_points(self) -> list[float]:
        return [*self.samples, INF]

    def with_values(self, values: Mapping[tuple[float, float], int]) -> "PersistenceFunction":
        return PersistenceFunction(
            self.feature, self.filtration, self.mode, self.samples, dict(values), self._tracker
        )


def axiom_violations(
    values: Mapping[tuple[float, float], int], samples: Sequence[float]
) -> list[str]:
    """Check the three persistence-function axioms on every grid 4-tuple
    ``u1 <= u2 <= v1 <= v2`` (``u`` finite, ``v`` possibly ``inf``)."""
    out = []
    points = [*samples, INF]
    for u1, u2, v1, v2 in itertools.combinations_with_replacement(points, 4):
        if u2 == INF:
            continue
        if values[u1, v1] > values[u2, v1]:
            out.append(f"p({u1}<={v1}) > p({u2}<={v1})")
        if values[u2, v2] > values[u2, v1]:
            out.append(f"p({u2}<={v2}) > p({u2}<={v1})")
        if values[u2, v1] - values[u1, v1] < values[u2, v2] - values[u1, v2]:
            out.append(f"superadditivity fails for {u1}<={u2}<={v1}<={v2}")
    return out


def persistence_function(feature: Feature, F: TameFiltration, mode: str) -> PersistenceFunction:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    tracker = _Tracker(feature, F)
    samples = F.sample_points()
    points = [*samples, INF]
    values = {}
    for a, u in enumerate(samples):
        for v in points[a:]:
            i, j = _indices(F, u, v)
            values[u, v] = tracker.count(mode, i, j)
    problems = axiom_violations(values, samples)
    if problems:
        raise PersistenceAxiomError(
            f"{mode} function of {feature.name} breaks the axioms: {problems[0]}"
        )
    return PersistenceFunction(feature, F, mode, samples, values, tracker)


@dataclass(frozen=True)
class PersistenceDiagram:
    """Multiset of cornerpoints ``(birth, death, multiplicity)``.

    Births may be ``-inf`` (features present before the first critical value)
    and deaths may be ``inf``.
    """

    points: tuple[tuple[float, float, int], ...]
    mode: str = ""

    def __post_init__(self):
        merged: Counter = Counter()
        for b, d, m in self.points:
            if m <= 0:
                raise ValueError("multiplicities must be positive")
            if not b < d:
                raise ValueError(f"cornerpoint ({b}, {d}) is not above the diagonal")
            merged[float(b), float(d)] += int(m)
        object.__setattr__(self, "points", tuple((b, d, m) for (b, d), m in sorted(merged.items())))

    def __len__(self) -> int:
        return sum(m for _, _, m in self.points)

    def as_dict(self) -> dict[tuple[float, float], int]:
        return {(b, d): m for b, d, m in self.points}

    def expanded(self) -> list[tuple[float, float]]:
        return [(b, d) for b, d, m in self.points for _ in range(m)]

    def same_points(self, other: "PersistenceDiagram") -> bool:
        return self.points == other.points


def diagram(p: PersistenceFunction) -> PersistenceDiagram:
    """Cornerpoints from the grid by the four-term multiplicity formula.

    Sample ``s_k`` lies in interval ``k``. A birth at ``a_i`` uses ``s_{i-1}``
    and ``s_i``; a death at ``a_j`` uses ``s_{j-1}`` and ``s_j``. Birth ``-inf``
    and death ``inf`` use a zero boundary term on the missing side.
    """
    crit = p.filtration.critical_values
    s = p.samples
    n = len(crit)

    def P(k: int, l: int) -> int:
        if k < 0 or l > n:
            return 0
        return p.values[s[k], s[l]]

    points = []
    for i in range(n + 1):
        birth = crit[i - 1] if i else -INF
        for j in range(i + 1, n + 2):
            death = crit[j - 1] if j <= n else INF
            mu = P(i, j - 1) - P(i - 1, j - 1) - P(i, j) + P(i - 1, j)
            if mu < 0:
                raise PersistenceAxiomError(f"negative multiplicity at ({birth}, {death})")
            if mu:
                points.append((birth, death, mu))
    return PersistenceDiagram(tuple(points), p.mode)


def representation_identity_check(p: PersistenceFunction, D: PersistenceDiagram) -> bool:
    """True iff every finite grid value equals the count of cornerpoints up-left of it."""
    for a, u in enumerate(p.samples):
        for v in p.samples[a:]:
            total = sum(m for b, d, m in D.points if b < u and d > v)
            if p.values[u, v] != total:
                return False
    return True


def _coord_gap(a: float, b: float) -> float:
    return 0.0 if a == b else abs(a - b)


def point_distance(p: tuple[float, float], q: tuple[float, float]) -> float:
    """L-infinity distance, with equal infinities at distance 0."""
    return max(_coord_gap(p[0], q[0]), _coord_gap(p[1], q[1]))


def diagonal_distance(p: tuple[float, float]) -> float:
    return (p[1] - p[0]) / 2


def _cost_matrix(A: list, B: list) -> np.ndarray:
    """Costs on the diagonal-augmented bipartite graph (rows A+Δ_B, cols B+Δ_A)."""
    n, m = len(A), len(B)
    C = np.full((n + m, m + n), np.inf)
    for i, p in enumerate(A):
        for j, q in enumerate(B):
            C[i, j] = point_distance(p, q)
        C[i, m + i] = diagonal_distance(p)
    for j, q in enumerate(B):
        C[n + j, j] = diagonal_distance(q)
    C[n:, m:] = 0.0
    return C


def _perfect_under(C: np.ndarray, t: float) -> bool:
    adj = csr_matrix((C <= t).astype(np.int8))
    match = maximum_bipartite_matching(adj, perm_type="column")
    return bool(np.all(match >= 0))


def bottleneck(D1: PersistenceDiagram, D2: PersistenceDiagram) -> float:
    """Exact bottleneck distance in the L-infinity ground metric.

    Binary search over the finite candidate costs with a bipartite-matching
    feasibility test; ``inf`` when no finite matching exists.
    """
    A, B = D1.expanded(), D2.expanded()
    if not A and not B:
        return 0.0
    C = _cost_matrix(A, B)
    candidates = np.unique(C[np.isfinite(C)])
    lo, hi = 0, len(candidates) - 1
    if hi < 0 or not _perfect_under(C, candidates[hi]):
        return INF
    while lo < hi:
        mid = (lo + hi) // 2
        if _perfect_under(C, candidates[mid]):
            hi = mid
        else:
            lo = mid + 1
    return float(candidates[lo])


class CompatibilityViolation(NamedTuple):
    u: float
    v: float
    shifted: str  # "first": p(u-eps<=v+eps) > q(u<=v); "second": the symmetric one
    shifted_count: int
    count: int


def compatibility_counts(
    p: PersistenceFunction, q: PersistenceFunction, eps: float, u: float, v: float
) -> dict[str, int]:
    """The four counts entering both compatibility inequalities at ``(u, v)``."""
    return {
        "p_shifted": p(u - eps, v + eps),
        "q": q(u, v),
        "q_shifted": q(u - eps, v + eps),
        "p": p(u, v),
    }


def _compat_levels(p: PersistenceFunction, q: PersistenceFunction, eps: float) -> list[float]:
    crit = set(p.filtration.critical_values) | set(q.filtration.critical_values)
    base = sorted({a + d for a in crit for d in (-eps, 0.0, eps)})
    if not base:
        return [0.0]
    mids = [(x + y) / 2 for x, y in zip(base, base[1:])]
    return sorted({base[0] - 1.0, *base, *mids, base[-1] + 1.0})


def compatibility_violations(
    p: PersistenceFunction, q: PersistenceFunction, eps: float
) -> Iterable[CompatibilityViolation]:
    """Every ``(u, v)`` on the merged grid where one of the two inequalities fails."""
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    levels = _compat_levels(p, q, eps)
    for a, u in enumerate(levels):
        for v in [*levels[a:], INF]:
            lhs, rhs = p(u - eps, v + eps), q(u, v)
            if lhs > rhs:
                yield CompatibilityViolation(u, v, "first", lhs, rhs)
            lhs, rhs = q(u - eps, v + eps), p(u, v)
            if lhs > rhs:
                yield CompatibilityViolation(u, v, "second", lhs, rhs)


def epsilon_compatible(
    p: PersistenceFunction, q: PersistenceFunction, eps: float
) -> tuple[bool, Optional[CompatibilityViolation]]:
    """Check ``p(u-eps<=v+eps) <= q(u<=v)`` and the symmetric inequality everywhere.

    Both functions are step functions, so the merged critical values, their
    ``±eps`` shifts, the gaps between them and ``v = inf`` decide the claim.
    Returns ``(True, None)`` or ``(False, first violation)``.
    """
    first = next(iter(compatibility_violations(p, q, eps)), None)
    return first is None, first


def diagrams_for(feature: Feature, F: TameFiltration, modes: Iterable[str] = MODES):
    """Convenience: ``{mode: (function, diagram)}``."""
    out = {}
    for mode in modes:
        p = persistence_function(feature, F, mode)
        out[mode] = (p, diagram(p))
    return out
