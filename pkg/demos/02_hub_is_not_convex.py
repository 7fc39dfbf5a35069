"""
Why hub diagrams are unstable
=============================

Search for three nested hypergraphs X -> X' -> X'' where a set is a hub in X
and X'' but not in X'. From such a witness we build two filtrations that are
1-interleaved and still fail the 1-compatibility inequalities.
"""

from srp import HUB, MonoClass, bottleneck, diagram, epsilon_compatible, persistence_function
from srp.features import convexity_witness_search
from srp.filtration import (
    build_ranging_counterexample,
    build_steady_counterexample,
    verify_interleaving,
)

search = convexity_witness_search(HUB, MonoClass.SIZE_PRESERVING, seed=None)
w = search.witness
print(f"witness after {search.examined} chains, A = {sorted(w.elements)}")
for name, H in zip(("X", "X'", "X''"), w.objects):
    print(f"  {name:4}", H)

# %%
for build in (build_steady_counterexample, build_ranging_counterexample):
    ce = build(w)
    assert verify_interleaving(ce.F, ce.G, ce.eps, ce.phi, ce.psi) == []
    p = persistence_function(HUB, ce.F, ce.kind)
    q = persistence_function(HUB, ce.G, ce.kind)
    ok, first = epsilon_compatible(p, q, ce.eps)
    u, v = ce.probe
    print(f"\n{ce.kind}: 1-interleaved, 1-compatible={ok}")
    print(f"  at ({u:g},{v:g}): F={p(u, v)} G={q(u, v)}  "
          f"F shifted={p(u - 1, v + 1)} G shifted={q(u - 1, v + 1)}")
    # the diagrams themselves drift apart by more than the interleaving allows
    print("  bottleneck between diagrams:", bottleneck(diagram(p), diagram(q)))
