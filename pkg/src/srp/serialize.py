"""JSON and SVG encodings.

All JSON writers sort keys and lists so that equal inputs give byte-identical
files. Infinite levels are written as the strings ``"inf"`` and ``"-inf"``,
and integral floats as integers.
"""

from __future__ import annotations

import json
import math
from typing import Any, Mapping

from .errors import SRPError
from .filtration import (
    TameFiltration,
    WeightedHypergraph,
    Witness,
    filtration_from_objects,
    sublevel_filtration,
)
from .hypergraph import Hypergraph, HypergraphMorphism, MonoClass, inclusion, morphism
from .persistence import PersistenceDiagram


class FormatError(SRPError, ValueError):
    """Input JSON does not have the expected shape."""


def encode_number(x: float) -> Any:
    if x == math.inf:
        return "inf"
    if x == -math.inf:
        return "-inf"
    if float(x).is_integer():
        return int(x)
    return float(x)


def decode_number(x: Any) -> float:
    if isinstance(x, str):
        if x in ("inf", "+inf", "Infinity"):
            return math.inf
        if x in ("-inf", "-Infinity"):
            return -math.inf
        raise FormatError(f"not a number: {x!r}")
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise FormatError(f"not a number: {x!r}")
    return float(x)


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# hypergraphs and maps


def hypergraph_to_json(H: Hypergraph) -> dict:
    return {
        "vertices": sorted(H.vertices),
        "edges": [{"id": e, "vertices": sorted(m)} for e, m in sorted(H.edges.items())],
    }


def hypergraph_from_json(data: Mapping) -> Hypergraph:
    """Reads ``edges`` as a list of ``{"id", "vertices"}`` or as an id -> members object."""
    try:
        vertices = data["vertices"]
        edges = data["edges"]
    except (KeyError, TypeError):
        raise FormatError("a hypergraph needs 'vertices' and 'edges'") from None
    if not isinstance(vertices, list):
        raise FormatError("'vertices' must be a list")
    if isinstance(edges, list):
        try:
            pairs = [(e["id"], e["vertices"]) for e in edges]
        except (KeyError, TypeError):
            raise FormatError("each edge needs 'id' and 'vertices'") from None
        ids = [e for e, _ in pairs]
        if len(set(ids)) != len(ids):
            raise FormatError("duplicate edge id")
        edges = dict(pairs)
    elif not isinstance(edges, dict):
        raise FormatError("'edges' must be a list or an object")
    return Hypergraph(vertices, edges)


def morphism_to_json(f: HypergraphMorphism) -> dict:
    return {
        "vertex_map": dict(sorted(f.vertex_map.items())),
        "edge_map": dict(sorted(f.edge_map.items())),
        "class": f.mono_class.symbol,
    }


def morphism_from_json(data: Mapping, source: Hypergraph, target: Hypergraph) -> HypergraphMorphism:
    """A map between known objects; ``null`` means the id-preserving inclusion."""
    if data is None:
        return inclusion(source, target)
    return morphism(data.get("vertex_map", {}), data.get("edge_map", {}), source, target)


# filtrations


def filtration_to_json(F: TameFiltration) -> dict:
    return {
        "class": F.category_class.symbol,
        "critical_values": [encode_number(a) for a in F.critical_values],
        "objects": [hypergraph_to_json(H) for H in F.objects],
        "steps": [morphism_to_json(s) for s in F.steps],
    }


def weighted_to_json(W: WeightedHypergraph) -> dict:
    return {
        **hypergraph_to_json(W.hypergraph),
        "weights": {x: encode_number(w) for x, w in sorted(W.weights.items())},
    }


def filtration_from_json(data: Mapping, category_class: MonoClass | None = None) -> TameFiltration:
    """Accepts a weighted hypergraph (sublevel filtration) or explicit levels.

    Explicit form: ``critical_values`` and ``objects`` (one more object than
    values), optional ``steps`` (default: inclusions) and ``class``.
    """
    if not isinstance(data, Mapping):
        raise FormatError("expected a JSON object")
    if "weights" in data:
        H = hypergraph_from_json(data.get("hypergraph", data))
        weights = {x: decode_number(w) for x, w in data["weights"].items()}
        cls = category_class if category_class is not None else MonoClass.SIZE_PRESERVING
        return sublevel_filtration(WeightedHypergraph(H, weights), cls)
    if "objects" not in data:
        raise FormatError("expected 'weights' or 'objects'")
    values = [decode_number(a) for a in data.get("critical_values", [])]
    objects = [hypergraph_from_json(o) for o in data["objects"]]
    if category_class is None and "class" in data:
        category_class = MonoClass.from_symbol(data["class"])
    steps = data.get("steps")
    if steps is None:
        return filtration_from_objects(values, objects, category_class)
    if len(steps) != len(objects) - 1:
        raise FormatError(f"expected {len(objects) - 1} steps, got {len(steps)}")
    built = [morphism_from_json(s, objects[i], objects[i + 1]) for i, s in enumerate(steps)]
    if category_class is None:
        category_class = min((s.mono_class for s in built), default=MonoClass.SIZE_PRESERVING)
    return TameFiltration(tuple(values), tuple(objects), tuple(built), category_class)


# diagrams


def diagram_to_json(D: PersistenceDiagram) -> dict:
    """Points only; the mode lives in the file name, so equal diagrams give equal files."""
    return {
        "points": [
            {"birth": encode_number(b), "death": encode_number(d), "mult": m}
            for b, d, m in D.points
        ],
    }


def diagram_from_json(data: Mapping) -> PersistenceDiagram:
    try:
        pts = tuple(
            (decode_number(p["birth"]), decode_number(p["death"]), int(p["mult"]))
            for p in data["points"]
        )
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed diagram: {exc}") from None
    try:
        return PersistenceDiagram(pts, data.get("mode", ""))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


# witnesses


def witness_to_json(w: Witness) -> dict:
    X, X1, X2 = w.objects
    return {
        "elements": sorted(w.elements),
        "X": hypergraph_to_json(X),
        "X1": hypergraph_to_json(X1),
        "X2": hypergraph_to_json(X2),
        "first": morphism_to_json(w.first),
        "second": morphism_to_json(w.second),
    }


def witness_from_json(data: Mapping) -> Witness:
    try:
        X, X1, X2 = (hypergraph_from_json(data[k]) for k in ("X", "X1", "X2"))
        elements = data["elements"]
    except KeyError as exc:
        raise FormatError(f"witness is missing {exc}") from None
    first = morphism_from_json(data.get("first"), X, X1)
    second = morphism_from_json(data.get("second"), X1, X2)
    return Witness(frozenset(elements), first, second)


# svg


def _fmt(x: float) -> str:
    return f"{x:g}"


def diagram_svg(D: PersistenceDiagram, title: str = "", size: int = 360) -> str:
    """Scatter plot of cornerpoints over the diagonal, multiplicity above each point.

    Deaths at ``inf`` sit on a dashed line above the plot area; births at
    ``-inf`` are drawn just left of the vertical axis.
    """
    finite = [x for b, d, _ in D.points for x in (b, d) if math.isfinite(x)]
    lo, hi = (min(finite), max(finite)) if finite else (0.0, 1.0)
    if hi == lo:
        hi = lo + 1.0
    pad = (hi - lo) * 0.1
    lo, hi = lo - pad, hi + pad
    margin, top_band = 40, 24
    plot = size - 2 * margin

    def sx(x: float) -> float:
        if x == -math.inf:
            return margin - 12
        return margin + (x - lo) / (hi - lo) * plot

    def sy(y: float) -> float:
        if y == math.inf:
            return margin - top_band / 2 - 4
        return margin + plot - (y - lo) / (hi - lo) * plot

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}" font-family="sans-serif" font-size="11">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>',
        f'<line x1="{margin}" y1="{margin + plot}" x2="{margin + plot}" y2="{margin + plot}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{margin + plot}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin + plot}" x2="{margin + plot}" y2="{margin}" stroke="gray"/>',
        f'<line x1="{margin}" y1="{sy(math.inf):.2f}" x2="{margin + plot}" y2="{sy(math.inf):.2f}" '
        'stroke="gray" stroke-dasharray="4 3"/>',
        f'<text x="{margin + plot + 4}" y="{sy(math.inf) + 4:.2f}">inf</text>',
        f'<text x="{margin}" y="{size - 10}">{_fmt(lo)}</text>',
        f'<text x="{margin + plot - 20}" y="{size - 10}">{_fmt(hi)}</text>',
    ]
    if title:
        out.append(f'<text x="{margin}" y="14">{_escape(title)}</text>')
    for b, d, m in D.points:
        x, y = sx(b), sy(d)
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4" fill="steelblue"/>')
        out.append(f'<text x="{x:.2f}" y="{y - 7:.2f}" text-anchor="middle">{m}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
