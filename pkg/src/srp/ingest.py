"""Plays as chronological hypergraph filtrations.

Input is a flat CSV, one row per scene::

    0,Lear;Kent;Gloucester
    1,Edmund;Gloucester

The first field is the scene index (contiguous from 0, in file order); the
second lists the characters on stage, separated by semicolons. Blank lines
and lines starting with ``#`` are ignored, and a comment ``# title: ...``
sets the play title. A leading header row starting with ``index`` is skipped.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from .errors import IngestError
from .filtration import TameFiltration, WeightedHypergraph, filtration_from_objects, sublevel_filtration
from .hypergraph import EMPTY, Hypergraph, MonoClass


@dataclass(frozen=True)
class PlayRecord:
    title: str
    scenes: tuple[frozenset[str], ...]

    def __post_init__(self):
        object.__setattr__(self, "scenes", tuple(frozenset(s) for s in self.scenes))
        for i, scene in enumerate(self.scenes):
            if not scene:
                raise IngestError(f"scene {i} has no characters")

    @property
    def characters(self) -> frozenset[str]:
        return frozenset().union(*self.scenes)

    def first_scene(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for i, scene in enumerate(self.scenes):
            for c in scene:
                out.setdefault(c, i)
        return out


def scene_id(i: int) -> str:
    return f"scene{i}"


def parse_play(text: str, title: str = "") -> PlayRecord:
    scenes: list[frozenset[str]] = []
    seen: set[int] = set()
    header_ok = True
    for lineno, line in enumerate(text.splitlines(), start=1):
        raw = line.strip()
        if not raw:
            continue
        if raw.startswith("#"):
            key, _, value = raw[1:].partition(":")
            if key.strip().lower() == "title" and value.strip():
                title = value.strip()
            continue
        row = next(csv.reader([raw]))
        if header_ok and row[0].strip().lower() == "index":
            header_ok = False
            continue
        header_ok = False
        if len(row) != 2:
            raise IngestError(f"line {lineno}: malformed row, expected 'index,charA;charB'")
        try:
            index = int(row[0].strip())
        except ValueError:
            raise IngestError(f"line {lineno}: malformed scene index {row[0]!r}") from None
        if index in seen:
            raise IngestError(f"line {lineno}: duplicate scene index {index}")
        if index != len(scenes):
            raise IngestError(
                f"line {lineno}: non-contiguous scene indices (expected {len(scenes)}, got {index})"
            )
        cast = frozenset(c.strip() for c in row[1].split(";") if c.strip())
        if not cast:
            raise IngestError(f"line {lineno}: empty scene {index}")
        seen.add(index)
        scenes.append(cast)
    if not scenes:
        raise IngestError("no scenes found")
    return PlayRecord(title, tuple(scenes))


def load_play(path: str | Path) -> PlayRecord:
    path = Path(path)
    return parse_play(path.read_text(encoding="utf-8"), title=path.stem)


def _check_ids(play: PlayRecord) -> None:
    clash = play.characters & {scene_id(i) for i in range(len(play.scenes))}
    if clash:
        raise IngestError(f"character names clash with scene ids: {sorted(clash)}")


def scene_weights(play: PlayRecord) -> WeightedHypergraph:
    """Characters as vertices, scenes as hyperedges, weighted by first appearance."""
    _check_ids(play)
    H = Hypergraph(play.characters, {scene_id(i): s for i, s in enumerate(play.scenes)})
    weights = {c: float(i) for c, i in play.first_scene().items()}
    weights.update({scene_id(i): float(i) for i in range(len(play.scenes))})
    return WeightedHypergraph(H, weights)


def scene_filtration(play: PlayRecord) -> TameFiltration:
    """Scene ``i`` enters at ``t = i`` with its full cast; a character enters
    with their first scene. Every step is size-preserving."""
    return sublevel_filtration(scene_weights(play), MonoClass.SIZE_PRESERVING)


def character_filtration(play: PlayRecord) -> TameFiltration:
    """The dual picture: scenes as vertices, characters as hyperedges.

    At ``t = i`` scene ``i`` joins every character edge it contains, so edges
    grow but never gain an old scene: steps are membership-reflecting.
    """
    _check_ids(play)
    objects = [EMPTY]
    members: dict[str, set[str]] = {}
    for i, scene in enumerate(play.scenes):
        for c in scene:
            members.setdefault(c, set()).add(scene_id(i))
        objects.append(
            Hypergraph((scene_id(k) for k in range(i + 1)), {c: set(m) for c, m in members.items()})
        )
    levels = [float(i) for i in range(len(play.scenes))]
    return filtration_from_objects(levels, objects, MonoClass.MEMBERSHIP_REFLECTING)
