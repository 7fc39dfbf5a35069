"""Small named inputs shared by the tests, demos and the CLI (``builtin:NAME``)."""

from __future__ import annotations

from .filtration import TameFiltration, filtration_from_objects
from .hypergraph import EMPTY, Hypergraph

FX1 = Hypergraph("abc", {"e1": "ab", "e2": "bc", "e3": "c"})

_HUB_LEVELS = (
    {"e0": "ab", "e1": "ac", "e2": "bd"},
    {"e3": "cd"},
    {"e4": "ae", "e5": "bf"},
)


def _cumulative(levels):
    edges: dict[str, str] = {}
    for added in levels:
        edges.update(added)
        yield Hypergraph(set().union(*map(set, edges.values())), edges)


def hub_filtration() -> TameFiltration:
    """Edge ``e0`` is a hub at level 0, loses it to ``e1``/``e2`` at 1 and regains it at 2."""
    return filtration_from_objects((0.0, 1.0, 2.0), (EMPTY, *_cumulative(_HUB_LEVELS)))


BUILTINS = {"hub": hub_filtration}
