"""``srp`` command line.

Exit codes: 0 success, 1 a check failed, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import serialize
from .errors import SRPError
from .features import convexity_witness_search, get_feature, verify_witness
from .filtration import (
    TameFiltration,
    build_ranging_counterexample,
    build_steady_counterexample,
    verify_interleaving,
)
from .fixtures import BUILTINS
from .generate import random_sublevel_filtration
from .hypergraph import MonoClass
from .ingest import character_filtration, load_play, scene_filtration
from .persistence import (
    MODES,
    PersistenceDiagram,
    compatibility_counts,
    diagram,
    epsilon_compatible,
    persistence_function,
    representation_identity_check,
)


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    feature: str = "hub"
    mode: str = "both"
    mono_class: Optional[MonoClass] = None
    input: Optional[str] = None
    output: Optional[str] = None
    format: str = "json"
    seed: Optional[int] = None
    eps: float = 1.0
    hypergraph: str = "scene"
    max_vertices: int = 6
    max_edges: int = 6
    budget: int = 200_000
    random: int = 0
    diagram: Optional[str] = None
    witness: Optional[str] = None
    probe: Optional[tuple[float, float]] = None

    def __post_init__(self):
        if self.max_vertices < 1 or self.max_edges < 1 or self.budget < 1:
            raise UsageError("size caps and budget must be positive")
        if not self.eps >= 0:
            raise UsageError("--eps must be nonnegative")
        if self.random < 0:
            raise UsageError("--random must be nonnegative")

    def modes(self) -> tuple[str, ...]:
        return MODES if self.mode == "both" else (self.mode,)


def fmt(x: float) -> str:
    if x == math.inf:
        return "∞"
    if x == -math.inf:
        return "-∞"
    return f"{x:g}"


def point_set(points) -> str:
    parts = []
    for b, d, m in points:
        parts.append(f"({fmt(b)},{fmt(d)})" + (f"x{m}" if m > 1 else ""))
    return "{" + ",".join(parts) + "}"


def load_filtration(cfg: RunConfig) -> tuple[TameFiltration, str]:
    """The input filtration and a short description of it."""
    src = cfg.input
    if not src:
        raise UsageError("--in is required")
    if src.startswith("builtin:"):
        name = src.split(":", 1)[1]
        if name not in BUILTINS:
            raise UsageError(f"unknown builtin {name!r}; choose from {sorted(BUILTINS)}")
        return BUILTINS[name](), src
    path = Path(src)
    if not path.is_file():
        raise UsageError(f"input file not found: {src}")
    if path.suffix.lower() == ".csv":
        play = load_play(path)
        build = scene_filtration if cfg.hypergraph == "scene" else character_filtration
        return build(play), f"{cfg.hypergraph} filtration of {play.title or path.name}"
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{src}: invalid JSON: {exc}") from None
    return serialize.filtration_from_json(data, cfg.mono_class), path.name


def write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def print_table(D: PersistenceDiagram, out) -> None:
    print(f"  {'birth':>8} {'death':>8} {'mult':>5}", file=out)
    for b, d, m in D.points:
        print(f"  {fmt(b):>8} {fmt(d):>8} {m:>5}", file=out)
    if not D.points:
        print("  (empty)", file=out)


def cmd_diagram(cfg: RunConfig, out) -> int:
    F, label = load_filtration(cfg)
    feature = get_feature(cfg.feature)
    for mode in cfg.modes():
        D = diagram(persistence_function(feature, F, mode))
        print(f"{feature.name} {mode} diagram of {label}", file=out)
        print_table(D, out)
        if cfg.output:
            stem = Path(cfg.output) / f"{feature.name}-{mode}"
            write(stem.with_suffix(".json"), serialize.dumps(serialize.diagram_to_json(D)))
            if cfg.format == "svg":
                svg = serialize.diagram_svg(D, f"{feature.name} {mode}")
                write(stem.with_suffix(".svg"), svg)
    return 0


def cmd_compare(cfg: RunConfig, out) -> int:
    F, _ = load_filtration(cfg)
    feature = get_feature(cfg.feature)
    funcs = {m: persistence_function(feature, F, m) for m in MODES}
    if cfg.probe:
        u, v = cfg.probe
        if u > v:
            raise UsageError(f"probe needs u <= v, got ({fmt(u)}, {fmt(v)})")
        print(
            f"probe ({fmt(u)} <= {fmt(v)}): steady {funcs['steady'](u, v)}, "
            f"ranging {funcs['ranging'](u, v)}",
            file=out,
        )
    s, r = (diagram(funcs[m]).as_dict() for m in MODES)
    if s == r:
        print("EQUAL", file=out)
        return 0
    only_s = [(b, d, m - r.get((b, d), 0)) for (b, d), m in sorted(s.items()) if m > r.get((b, d), 0)]
    only_r = [(b, d, m - s.get((b, d), 0)) for (b, d), m in sorted(r.items()) if m > s.get((b, d), 0)]
    print(f"DIFFER: steady {point_set(only_s)} vs ranging {point_set(only_r)}", file=out)
    return 0


def cmd_counterexample(cfg: RunConfig, out) -> int:
    feature = get_feature(cfg.feature)
    if cfg.witness:
        path = Path(cfg.witness)
        if not path.is_file():
            raise UsageError(f"witness file not found: {cfg.witness}")
        witness = serialize.witness_from_json(json.loads(path.read_text(encoding="utf-8")))
        failed = verify_witness(feature, witness)
        if failed:
            print(f"invalid witness for {feature.name}:", file=out)
            for msg in failed:
                print(f"  {msg}", file=out)
            return 1
    else:
        cls = cfg.mono_class if cfg.mono_class is not None else MonoClass.SIZE_PRESERVING
        search = convexity_witness_search(
            feature,
            cls,
            max_vertices=cfg.max_vertices,
            max_edges=cfg.max_edges,
            budget=cfg.budget,
            seed=cfg.seed,
        )
        if not search.found:
            print(
                f"no witness within budget ({feature.name}, class {cls.symbol!r}, "
                f"{search.examined} chains examined)",
                file=out,
            )
            return 0
        witness = search.witness
        print(f"witness found after {search.examined} chains: A = {sorted(witness.elements)}", file=out)
    report = {"feature": feature.name, "witness": serialize.witness_to_json(witness), "pairs": []}
    status = 0
    for build in (build_steady_counterexample, build_ranging_counterexample):
        ce = build(witness)
        problems = verify_interleaving(ce.F, ce.G, ce.eps, ce.phi, ce.psi)
        p = persistence_function(feature, ce.F, ce.kind)
        q = persistence_function(feature, ce.G, ce.kind)
        ok, first = epsilon_compatible(p, q, ce.eps)
        u, v = ce.probe
        c = compatibility_counts(p, q, ce.eps, u, v)
        e = ce.eps
        print(f"{ce.kind}: {'1-interleaved' if not problems else 'NOT interleaved'}", file=out)
        print(
            f"  at ({fmt(u)},{fmt(v)}): F({fmt(u - e)}<={fmt(v + e)}) = {c['p_shifted']}, "
            f"G({fmt(u)}<={fmt(v)}) = {c['q']}, G({fmt(u - e)}<={fmt(v + e)}) = {c['q_shifted']}, "
            f"F({fmt(u)}<={fmt(v)}) = {c['p']}",
            file=out,
        )
        if c["p_shifted"] > c["q"]:
            print(f"  violated: {c['p_shifted']} > {c['q']} (F shifted vs G)", file=out)
        if c["q_shifted"] > c["p"]:
            print(f"  violated: {c['q_shifted']} > {c['p']} (G shifted vs F)", file=out)
        print(f"  {fmt(e)}-compatible: {ok}", file=out)
        if problems or ok:
            status = 1
        report["pairs"].append(
            {
                "kind": ce.kind,
                "interleaving_problems": problems,
                "compatible": ok,
                "probe": [u, v],
                "counts": c,
                "first_violation": None if first is None else first._asdict(),
                "F": serialize.filtration_to_json(ce.F),
                "G": serialize.filtration_to_json(ce.G),
            }
        )
    if cfg.output:
        write(Path(cfg.output), serialize.dumps(_jsonable(report)))
    return status


def _jsonable(x):
    if isinstance(x, float):
        return serialize.encode_number(x)
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def check_one(feature, F: TameFiltration, supplied: Optional[PersistenceDiagram] = None) -> list[str]:
    """Axioms, representation identity and steady <= ranging; returns failures."""
    failures = []
    try:
        funcs = {m: persistence_function(feature, F, m) for m in MODES}
    except SRPError as exc:
        return [f"axioms: {exc}"]
    for m, p in funcs.items():
        if not representation_identity_check(p, diagram(p)):
            failures.append(f"representation identity fails for {m}")
    s, r = funcs["steady"], funcs["ranging"]
    for key, val in s.values.items():
        if val > r.values[key]:
            failures.append(f"steady exceeds ranging at {key}")
            break
    if supplied is not None:
        mode = supplied.mode
        if not representation_identity_check(funcs[mode], supplied):
            failures.append(f"supplied diagram does not represent the {mode} function")
    return failures


def cmd_check(cfg: RunConfig, out) -> int:
    feature_names = [cfg.feature]
    if cfg.random:
        if cfg.seed is None:
            raise UsageError("--random needs an explicit --seed")
        rng = random.Random(cfg.seed)
        failures = 0
        for k in range(cfg.random):
            _, F = random_sublevel_filtration(rng, cfg.max_vertices, cfg.max_edges)
            for name in feature_names:
                for msg in check_one(get_feature(name), F):
                    failures += 1
                    print(f"instance {k}: {name}: {msg}", file=out)
        print(f"{cfg.random} random instances, {failures} failures", file=out)
        return 1 if failures else 0
    F, label = load_filtration(cfg)
    supplied = None
    if cfg.diagram:
        path = Path(cfg.diagram)
        if not path.is_file():
            raise UsageError(f"diagram file not found: {cfg.diagram}")
        supplied = serialize.diagram_from_json(json.loads(path.read_text(encoding="utf-8")))
        mode = cfg.mode if cfg.mode in MODES else supplied.mode
        if mode not in MODES:
            raise UsageError("--diagram needs --mode steady or --mode ranging")
        supplied = PersistenceDiagram(supplied.points, mode)
    failures = check_one(get_feature(cfg.feature), F, supplied)
    for msg in failures:
        print(f"FAIL {msg}", file=out)
    if not failures:
        print(f"all checks pass for {cfg.feature} on {label}", file=out)
    return 1 if failures else 0


def cmd_ingest(cfg: RunConfig, out) -> int:
    if not cfg.input or not Path(cfg.input).is_file():
        raise UsageError(f"input file not found: {cfg.input}")
    play = load_play(cfg.input)
    F = scene_filtration(play) if cfg.hypergraph == "scene" else character_filtration(play)
    print(
        f"{play.title}: {len(play.scenes)} scenes, {len(play.characters)} characters; "
        f"{cfg.hypergraph} filtration with {F.n} critical values, class {F.category_class.symbol!r}",
        file=out,
    )
    if cfg.output:
        write(Path(cfg.output), serialize.dumps(serialize.filtration_to_json(F)))
    return 0


COMMANDS = {
    "diagram": cmd_diagram,
    "compare": cmd_compare,
    "counterexample": cmd_counterexample,
    "check": cmd_check,
    "ingest": cmd_ingest,
}


def _probe(text: str) -> tuple[float, float]:
    try:
        u, v = (float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected U,V") from None
    return u, v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="srp", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--feature", default="hub")
    parser.add_argument("--mode", choices=["steady", "ranging", "both"], default="both")
    parser.add_argument("--class", dest="mono_class", choices=["=", "<=", "any"])
    parser.add_argument("--in", dest="input", help="JSON filtration, play CSV or builtin:NAME")
    parser.add_argument("--out", dest="output")
    parser.add_argument("--format", choices=["json", "svg"], default="json")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--eps", type=float, default=1.0)
    parser.add_argument("--hypergraph", choices=["scene", "character"], default="scene")
    parser.add_argument("--max-vertices", type=int, default=6)
    parser.add_argument("--max-edges", type=int, default=6)
    parser.add_argument("--budget", type=int, default=200_000)
    parser.add_argument("--random", type=int, default=0, help="random instances for check")
    parser.add_argument("--diagram", help="diagram JSON to check against the function")
    parser.add_argument("--witness", help="witness JSON for counterexample")
    parser.add_argument("--probe", type=_probe, help="U,V level pair for compare")
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = RunConfig(
            command=args.command,
            feature=args.feature,
            mode=args.mode,
            mono_class=None if args.mono_class is None else MonoClass.from_symbol(args.mono_class),
            input=args.input,
            output=args.output,
            format=args.format,
            seed=args.seed,
            eps=args.eps,
            hypergraph=args.hypergraph,
            max_vertices=args.max_vertices,
            max_edges=args.max_edges,
            budget=args.budget,
            random=args.random,
            diagram=args.diagram,
            witness=args.witness,
            probe=args.probe,
        )
        return COMMANDS[cfg.command](cfg, out)
    except (UsageError, SRPError, ValueError, OSError) as exc:
        print(f"srp: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
