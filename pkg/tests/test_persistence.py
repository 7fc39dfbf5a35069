import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from corpus import sublevel_corpus
from srp.errors import PersistenceAxiomError
from srp.features import EXCLUSIVITY, FEATURES, HUB, MAX_ORIGINALITY
from srp.filtration import (
    TameFiltration,
    Witness,
    build_ranging_counterexample,
    build_steady_counterexample,
)
from srp.generate import random_hypergraph
from srp.hypergraph import EMPTY, Hypergraph, MonoClass, inclusion
from srp.persistence import (
    MODES,
    PersistenceDiagram,
    axiom_violations,
    bottleneck,
    compatibility_violations,
    diagram,
    epsilon_compatible,
    persistence_function,
    ranging_set,
    representation_identity_check,
    steady_set,
)

INF = math.inf


def elements(tracked):
    return {t.elements for t in tracked}


def test_steady_sets_on_fxhub(fxhub):
    assert elements(steady_set(HUB, fxhub, 0, 0.5)) == {frozenset({"e0"})}
    assert {t.base_level for t in steady_set(HUB, fxhub, 0, 0.5)} == {0}
    assert steady_set(HUB, fxhub, 0, 1) == set()
    for u in (-1, 0, 0.5, 1, 2, 7):
        expected = set(HUB.enumerate(fxhub.at(u)))
        assert elements(steady_set(HUB, fxhub, u, u)) == expected
    with pytest.raises(ValueError):
        steady_set(HUB, fxhub, 2, 1)


def test_ranging_sets_on_fxhub(fxhub):
    assert elements(ranging_set(HUB, fxhub, 1, 1)) == {frozenset({"e0"})}
    assert elements(ranging_set(HUB, fxhub, 1, INF)) == {frozenset({"e0"})}
    with pytest.raises(ValueError):
        ranging_set(HUB, fxhub, 1, 0)


def test_constant_filtration(fx1):
    const = TameFiltration((), (fx1,), ())
    for u, v in ((0, 0), (-3, 5), (1, INF)):
        s = elements(steady_set(EXCLUSIVITY, const, u, v))
        r = elements(ranging_set(EXCLUSIVITY, const, u, v))
        assert s == r == set(EXCLUSIVITY.enumerate(fx1))


def test_function_values_on_fxhub(fxhub):
    p = persistence_function(HUB, fxhub, "steady")
    assert (p(0, 0.5), p(0, 1.5), p(2, 10)) == (1, 0, 1)
    assert p.samples == (-1.0, 0.5, 1.5, 3.0)
    assert p.values[-1.0, INF] == 0
    r = persistence_function(HUB, fxhub, "ranging")
    assert r(1, 1.5) == 1
    assert r(1, INF) == 1


def test_empty_filtration_is_zero():
    F = TameFiltration((), (EMPTY,), ())
    for mode in MODES:
        p = persistence_function(HUB, F, mode)
        assert set(p.values.values()) == {0}
        assert diagram(p).points == ()


def test_unknown_mode(fxhub):
    with pytest.raises(ValueError):
        persistence_function(HUB, fxhub, "sideways")


@settings(max_examples=40)
@given(st.integers(0, 199), st.sampled_from(sorted(FEATURES)), st.sampled_from(MODES), st.data())
def test_values_match_oracle_anywhere(k, name, mode, data):
    W, F = sublevel_corpus()[k]
    feature = FEATURES[name]
    p = persistence_function(feature, F, mode)
    levels = st.sampled_from([-1.0, -0.5, 0.0, 0.25, 1.0, 1.5, 2.0, 2.75, 3.0, 4.0])
    u = data.draw(levels)
    v = data.draw(levels.filter(lambda x: x >= u) | st.just(INF))
    expected = oracles.sublevel_count(feature.holds, W.hypergraph, W.weights, mode, u, v)
    assert p(u, v) == expected
    assert oracles.oracle_count(feature.holds, F, mode, u, v) == expected


def test_steady_inside_ranging():
    for _, F in sublevel_corpus()[:60]:
        for feature in FEATURES.values():
            for u in F.sample_points():
                for v in (*[s for s in F.sample_points() if s >= u], INF):
                    assert elements(steady_set(feature, F, u, v)) <= elements(ranging_set(feature, F, u, v))


def test_fxhub_diagrams(fxhub):
    s = diagram(persistence_function(HUB, fxhub, "steady"))
    r = diagram(persistence_function(HUB, fxhub, "ranging"))
    assert s.as_dict() == {(0.0, 1.0): 1, (2.0, INF): 1}
    assert r.as_dict() == {(0.0, INF): 1}
    assert s.mode == "steady"


def test_sets_present_from_level_zero():
    H = Hypergraph("abcdef", {"x": "ab", "y": "cd", "z": "ef"})
    F = TameFiltration((0,), (EMPTY, H), (inclusion(EMPTY, H),))
    D = diagram(persistence_function(EXCLUSIVITY, F, "steady"))
    assert D.as_dict() == {(0.0, INF): 3}


def renaming_filtrations():
    """Counterexample pairs, whose step maps and H_0 are not trivial."""
    X = Hypergraph("abcd", {"e0": "ab", "e1": "ac", "e2": "bd"})
    X1 = Hypergraph("abcd", {"e0": "ab", "e1": "ac", "e2": "bd", "e3": "cd"})
    X2 = Hypergraph("abcdef", {**{e: X1.edges[e] for e in X1.edges}, "e4": "ae", "e5": "bf"})
    w = Witness({"e0"}, inclusion(X, X1), inclusion(X1, X2))
    out = []
    for build in (build_steady_counterexample, build_ranging_counterexample):
        ce = build(w)
        out += [ce.F, ce.G]
    return out


@pytest.mark.parametrize("feature", [HUB, EXCLUSIVITY, MAX_ORIGINALITY])
def test_diagrams_match_neighbourhood_oracle(feature):
    cases = [F for _, F in sublevel_corpus()[:80]] + renaming_filtrations()
    for F in cases:
        for mode in MODES:
            D = diagram(persistence_function(feature, F, mode))
            count = lambda u, v, F=F, mode=mode: oracles.oracle_count(feature.holds, F, mode, u, v)  # noqa: E731
            assert D.as_dict() == oracles.oracle_diagram(count, F.critical_values)


def test_birth_at_minus_infinity():
    F = renaming_filtrations()[0]  # steady counterexample: hub already present in H_0
    D = diagram(persistence_function(HUB, F, "steady"))
    assert D.as_dict() == {(-INF, 3.0): 1, (5.0, INF): 1}
    assert representation_identity_check(persistence_function(HUB, F, "steady"), D)


def test_representation_identity(fxhub):
    for mode in MODES:
        p = persistence_function(HUB, fxhub, mode)
        D = diagram(p)
        assert representation_identity_check(p, D)
        corrupted = dict(p.values)
        corrupted[0.5, 0.5] += 1
        assert not representation_identity_check(p.with_values(corrupted), D)


def test_axiom_checker_flags_bad_grids():
    samples = (0.0, 1.0)
    good = {(0.0, 0.0): 1, (0.0, 1.0): 1, (1.0, 1.0): 2, (0.0, INF): 0, (1.0, INF): 1}
    assert axiom_violations(good, samples) == []
    bad = dict(good)
    bad[0.0, 1.0] = 5  # an earlier start counts more than a later one
    assert axiom_violations(bad, samples)
    bad = dict(good)
    bad[1.0, INF] = 5  # grows with v
    assert axiom_violations(bad, samples)


def test_diagram_validation():
    with pytest.raises(ValueError):
        PersistenceDiagram(((1.0, 1.0, 1),))
    with pytest.raises(ValueError):
        PersistenceDiagram(((0.0, 1.0, 0),))
    D = PersistenceDiagram(((0, 1, 1), (0, 1, 2), (-INF, INF, 1)))
    assert D.as_dict() == {(0.0, 1.0): 3, (-INF, INF): 1}
    assert len(D) == 4
    assert D.same_points(PersistenceDiagram(((0, 1, 3), (-INF, INF, 1)), mode="x"))


def test_bottleneck_examples():
    D = PersistenceDiagram(((0, 2, 1), (1, INF, 2)))
    assert bottleneck(D, D) == 0
    assert bottleneck(PersistenceDiagram(((0, 2, 1),)), PersistenceDiagram(((0, 3, 1),))) == 1
    assert bottleneck(PersistenceDiagram(((0, INF, 1),)), PersistenceDiagram(())) == INF
    assert bottleneck(PersistenceDiagram(()), PersistenceDiagram(())) == 0
    assert bottleneck(PersistenceDiagram(((0, 4, 1),)), PersistenceDiagram(())) == 2
    assert bottleneck(PersistenceDiagram(((-INF, 2, 1),)), PersistenceDiagram(((-INF, 3, 1),))) == 1


points = st.tuples(
    st.sampled_from([-INF, 0, 0.5, 1, 2, 3]),
    st.sampled_from([0.5, 1, 1.5, 2.5, 4, INF]),
).filter(lambda p: p[0] < p[1])
diagrams = st.lists(points, max_size=5).map(lambda ps: PersistenceDiagram(tuple((b, d, 1) for b, d in ps)))


@given(diagrams, diagrams)
def test_bottleneck_matches_brute_force(A, B):
    assert bottleneck(A, B) == oracles.brute_bottleneck(A.expanded(), B.expanded())
    assert bottleneck(A, B) == bottleneck(B, A)


@settings(max_examples=30)
@given(diagrams, diagrams, diagrams)
def test_bottleneck_triangle_inequality(A, B, C):
    assert bottleneck(A, C) <= bottleneck(A, B) + bottleneck(B, C)


def test_compatibility_with_itself(fxhub):
    for mode in MODES:
        p = persistence_function(HUB, fxhub, mode)
        for eps in (0, 0.5, 1, 3):
            assert epsilon_compatible(p, p, eps) == (True, None)
        with pytest.raises(ValueError):
            epsilon_compatible(p, p, -1)


def test_compatibility_probes():
    F, G, F2, G2 = renaming_filtrations()
    p, q = (persistence_function(HUB, X, "steady") for X in (F, G))
    ok, first = epsilon_compatible(p, q, 1)
    assert not ok and first is not None
    assert q(0, 6) > p(1, 5)  # |S_F(1<=5)| < |S_G(0<=6)|
    assert any((v.u, v.v, v.shifted) == (1.0, 5.0, "second") for v in compatibility_violations(p, q, 1))
    p, q = (persistence_function(HUB, X, "ranging") for X in (F2, G2))
    assert not epsilon_compatible(p, q, 1)[0]
    assert p(3, 7) > q(4, 6)  # |R_G(4<=6)| < |R_F(3<=7)|
    assert any((v.u, v.v, v.shifted) == (4.0, 6.0, "first") for v in compatibility_violations(p, q, 1))


def test_convex_features_on_counterexample_shapes():
    # exclusivity is convex in the size-preserving class, so these pairs stay compatible
    rng = random.Random(5)
    for _ in range(20):
        X2 = random_hypergraph(rng, 4, 4)
        edges = sorted(X2.edges)
        keep1 = edges[: max(1, len(edges) - 1)]
        keep0 = keep1[: max(1, len(keep1) - 1)]
        X1 = X2.sub(set().union(*(X2.edges[e] for e in keep1)), keep1)
        X = X2.sub(set().union(*(X2.edges[e] for e in keep0)), keep0)
        w = Witness({keep0[0]}, inclusion(X, X1), inclusion(X1, X2))
        for build in (build_steady_counterexample, build_ranging_counterexample):
            ce = build(w)
            for feature in (EXCLUSIVITY, MAX_ORIGINALITY):
                p = persistence_function(feature, ce.F, ce.kind)
                q = persistence_function(feature, ce.G, ce.kind)
                assert epsilon_compatible(p, q, 1)[0]


def test_axiom_error_type():
    assert issubclass(PersistenceAxiomError, AssertionError)
    assert MonoClass.SIZE_PRESERVING  # keep the import honest
