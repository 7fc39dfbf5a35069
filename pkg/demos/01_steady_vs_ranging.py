"""
Steady and ranging persistence on a small filtration
=====================================================

A hyperedge is a hub when it meets more hyperedges than any of its
neighbours do. In the built-in filtration the edge e0 is a hub, loses that
status when e3 arrives at t=1, and gets it back at t=2.
"""

from srp import HUB, diagram, persistence_function
from srp.fixtures import hub_filtration

F = hub_filtration()
print("critical values:", F.critical_values)
for H in F.objects[1:]:
    print("  ", H)

# %%
# The steady count at (u, v) keeps the sets that are hubs at every level in
# between; the ranging count only asks for a hub at u and again at some level >= v.
steady = persistence_function(HUB, F, "steady")
ranging = persistence_function(HUB, F, "ranging")
for u, v in [(0, 0.5), (0, 1.5), (1, 1.5), (2, 10)]:
    print(f"u={u:<3} v={v:<4} steady={steady(u, v)} ranging={ranging(u, v)}")

# %%
# Cornerpoints: the steady diagram sees two separate lives, the ranging
# diagram sees one uninterrupted life.
for p in (steady, ranging):
    D = diagram(p)
    print(p.mode, D.as_dict())
