"""Command line front end.

Exit codes form the machine contract:

* 0  success: instance valid, verdict feasible, drawing verified
* 1  negative result: invalid instance, infeasible, drawing rejected
* 2  usage, format, or precondition errors
* 3  resource budget exhausted

`--json` switches the validate/solve/verify/reduce reports to JSON on
stdout.  Diagnostics always go to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional

from . import io
from .core import (
    MalformedWitnessError,
    PreconditionError,
    ResourceBudgetError,
    validate_olg,
    verify_drawing_geometric,
)
from .gen import FAMILIES, gen_corpus
from .geoplan import (
    GeodesicDrawing,
    reduce_olp_to_bimonotone,
    reduce_olp_to_geodesic,
    verify_bimonotone_drawing,
    verify_geodesic_drawing,
)
from .io import FormatError
from .levelvariants import (
    CLUSTER_ROOT,
    MalformedDrawingError,
    reduce_olp_to_clustered,
    reduce_olp_to_tlevel,
    tree_leaves,
    verify_clustered_drawing,
    verify_tlevel_drawing,
)
from .render import DEFAULT_LAYERS, DrawingRejectedError, RenderSpec, render_svg
from .satgadget import reduce_pm3sat_to_olp, validate_representation, width2_transform
from .solve import METHODS, solve

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

REDUCE_KINDS = ("pm3sat-to-olp", "olp-to-width2", "olp-to-geodesic",
                "olp-to-bimonotone", "olp-to-tlevel", "olp-to-clustered")
VERIFY_KINDS = ("drawing", "geodesic", "bimonotone", "tlevel", "clustered")

_PARSERS: Dict[str, Callable[[Any], Any]] = {
    "olg": io.parse_olg,
    "drw": io.parse_drawing,
    "pm3sat": io.parse_pm3sat,
    "geo": io.parse_geo,
    "tlvl": io.parse_tlvl,
    "clvl": io.parse_clvl,
}


def _err(message: str) -> None:
    print(f"olpkit: {message}", file=sys.stderr)


def _emit(args: argparse.Namespace, payload: Dict[str, Any], text: str) -> None:
    if getattr(args, "json", False):
        sys.stdout.write(io.dumps(payload))
    else:
        print(text)


def _load(path: str):
    kind = io.kind_of_path(path)
    return kind, _PARSERS[kind](io.read_document(path))


def _expect(kind: str, wanted: str, role: str) -> None:
    if kind != wanted:
        raise FormatError(f"{role} must be a .{wanted}.json file, got .{kind}.json")


# -- validate ------------------------------------------------------------------


def _validate_geo(inst) -> List[str]:
    issues: List[str] = []
    if len(set(inst.points.values())) != len(inst.points):
        issues.append("terminals are not pairwise distinct")
    seen = set()
    for u, w in inst.edges:
        if u not in inst.points or w not in inst.points:
            issues.append(f"edge ({u}, {w}) references a missing terminal")
        elif u == w:
            issues.append(f"edge ({u}, {w}) is a loop")
        key = frozenset((u, w))
        if key in seen:
            issues.append(f"duplicate edge ({u}, {w})")
        seen.add(key)
    return issues


def _validate_tlvl(inst) -> List[str]:
    report = validate_olg(inst.graph)
    if not report.ok:
        return list(report.issues)
    issues: List[str] = []
    if len(inst.trees) != inst.graph.num_levels:
        return [f"expected {inst.graph.num_levels} trees, got {len(inst.trees)}"]
    for lvl, tree in enumerate(inst.trees):
        leaves = tree_leaves(tree)
        if len(set(leaves)) != len(leaves):
            issues.append(f"tree {lvl} repeats a leaf")
        elif set(leaves) != set(inst.graph.level_ids(lvl)):
            issues.append(f"tree {lvl} leaves do not match level {lvl}")
    return issues


def _validate_clvl(inst) -> List[str]:
    report = validate_olg(inst.graph)
    if not report.ok:
        return list(report.issues)
    issues: List[str] = []
    ids = {v.id for v in inst.graph.vertices}
    for name in sorted(inst.clusters):
        extra = sorted(inst.clusters[name] - ids)
        if extra:
            issues.append(f"cluster {name} names unknown vertices: {extra}")
    root = inst.clusters.get(CLUSTER_ROOT)
    if root is None:
        issues.append(f"missing {CLUSTER_ROOT!r} cluster")
    elif root != frozenset(ids):
        issues.append(f"{CLUSTER_ROOT!r} cluster must contain every vertex")
    return issues


def cmd_validate(args: argparse.Namespace) -> int:
    kind, obj = _load(args.file)
    if kind == "drw":
        raise FormatError(
            "a drawing is checked against its instance; use the verify command")
    checker = {
        "olg": lambda x: list(validate_olg(x).issues),
        "pm3sat": lambda x: list(validate_representation(x).issues),
        "geo": _validate_geo,
        "tlvl": _validate_tlvl,
        "clvl": _validate_clvl,
    }[kind]
    issues = checker(obj)
    _emit(args, {"ok": not issues, "issues": issues},
          "ok" if not issues else "\n".join(issues))
    return EXIT_OK if not issues else EXIT_REJECTED


# -- solve ---------------------------------------------------------------------


def cmd_solve(args: argparse.Namespace) -> int:
    kind, graph = _load(args.instance)
    _expect(kind, "olg", "solve input")
    result = solve(graph, method=args.method, node_budget=args.node_budget)
    witness = (io.emit_witness(result.witness)
               if result.witness is not None else None)
    _emit(args, {"status": result.status, "witness": witness,
                 "method": result.method, "nodes": result.nodes},
          result.status)
    return EXIT_OK if result.status == "feasible" else EXIT_REJECTED


# -- reduce ----------------------------------------------------------------------


def cmd_reduce(args: argparse.Namespace) -> int:
    kind, obj = _load(args.input)
    if args.kind == "pm3sat-to-olp":
        _expect(kind, "pm3sat", "reduction input")
        if (any(len(c.legs) < 3 for c in obj.clauses)
                and not args.allow_degenerate_clauses):
            raise PreconditionError(
                "layout has clauses with fewer than three legs; "
                "pass --allow-degenerate-clauses to reduce anyway")
        graph, _ = reduce_pm3sat_to_olp(obj)
        out_kind, doc = "olg", io.emit_olg(graph)
    else:
        _expect(kind, "olg", "reduction input")
        if args.kind == "olp-to-width2":
            out_kind, doc = "olg", io.emit_olg(width2_transform(obj))
        elif args.kind == "olp-to-geodesic":
            out_kind, doc = "geo", io.emit_geo(reduce_olp_to_geodesic(obj))
        elif args.kind == "olp-to-bimonotone":
            out_kind, doc = "geo", io.emit_geo(reduce_olp_to_bimonotone(obj))
        elif args.kind == "olp-to-tlevel":
            out_kind, doc = "tlvl", io.emit_tlvl(reduce_olp_to_tlevel(obj))
        else:
            inst, _ = reduce_olp_to_clustered(obj)
            out_kind, doc = "clvl", io.emit_clvl(inst)
    if io.kind_of_path(args.output) != out_kind:
        raise FormatError(
            f"output for {args.kind} must end in .{out_kind}.json")
    io.write_document(args.output, doc)
    _emit(args, {"output": args.output}, args.output)
    return EXIT_OK


# -- verify ----------------------------------------------------------------------


def cmd_verify(args: argparse.Namespace) -> int:
    ikind, inst = _load(args.instance)
    dkind, target = _load(args.drawing)
    _expect(dkind, "drw", "drawing argument")
    if args.kind == "drawing":
        _expect(ikind, "olg", "instance")
        ok = verify_drawing_geometric(inst, target.drawing)
    elif args.kind == "geodesic":
        _expect(ikind, "geo", "instance")
        ok = verify_geodesic_drawing(inst, GeodesicDrawing(target.drawing.paths))
    elif args.kind == "bimonotone":
        _expect(ikind, "geo", "instance")
        ok = verify_bimonotone_drawing(inst, GeodesicDrawing(target.drawing.paths))
    elif args.kind == "tlevel":
        _expect(ikind, "tlvl", "instance")
        ok = verify_tlevel_drawing(inst, target)
    else:
        _expect(ikind, "clvl", "instance")
        ok = verify_clustered_drawing(inst, target)
    _emit(args, {"verified": ok}, "verified" if ok else "rejected")
    return EXIT_OK if ok else EXIT_REJECTED


# -- render ----------------------------------------------------------------------


def cmd_render(args: argparse.Namespace) -> int:
    ikind, inst = _load(args.instance)
    if ikind == "drw":
        raise FormatError("render takes the instance first, then its drawing")
    drawing = None
    if args.drawing is not None:
        dkind, drawing = _load(args.drawing)
        _expect(dkind, "drw", "drawing argument")
    index = None
    if args.reduced:
        if ikind != "pm3sat":
            raise FormatError("--reduced only applies to .pm3sat.json inputs")
        inst, index = reduce_pm3sat_to_olp(inst)
    try:
        scale = Fraction(args.scale)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad --scale value {args.scale!r}") from exc
    layers = (tuple(part.strip() for part in args.layers.split(","))
              if args.layers is not None else DEFAULT_LAYERS)
    spec = RenderSpec(scale=scale, layers=layers, output=args.output)
    svg = render_svg(inst, drawing, spec, index=index)
    try:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(svg)
    except OSError as exc:
        raise FormatError(f"cannot write {args.output}: {exc}") from exc
    print(args.output)
    return EXIT_OK


# -- gen -------------------------------------------------------------------------


def cmd_gen(args: argparse.Namespace) -> int:
    corpus = gen_corpus(args.family, args.seed, args.count)
    if args.family == "pm3sat-tiny":
        suffix, docs = ".pm3sat.json", [io.emit_pm3sat(x) for x in corpus]
    else:
        suffix, docs = ".olg.json", [io.emit_olg(x) for x in corpus]
    if args.out_dir is None:
        sys.stdout.write(io.dumps(docs))
        return EXIT_OK
    os.makedirs(args.out_dir, exist_ok=True)
    for i, doc in enumerate(docs):
        name = f"{args.family}-s{args.seed}-{i:03d}{suffix}"
        io.write_document(os.path.join(args.out_dir, name), doc)
        print(name)
    return EXIT_OK


# -- wiring ----------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="olpkit",
        description="Ordered level planarity: solve, reduce, verify, render.")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="structural checks for an instance file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("solve", help="decide an .olg.json instance")
    p.add_argument("instance")
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--node-budget", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("reduce", help="rewrite an instance into another model")
    p.add_argument("kind", choices=REDUCE_KINDS)
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--allow-degenerate-clauses", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="check a drawing against its instance")
    p.add_argument("kind", choices=VERIFY_KINDS)
    p.add_argument("instance")
    p.add_argument("drawing")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="deterministic SVG picture")
    p.add_argument("instance")
    p.add_argument("drawing", nargs="?")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--scale", default="36")
    p.add_argument("--layers", default=None,
                   help="comma separated subset of " + ",".join(DEFAULT_LAYERS))
    p.add_argument("--reduced", action="store_true",
                   help="render the level-graph reduction of a formula layout "
                        "with gadget overlays")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("gen", help="seeded instance corpus")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, default=8)
    p.add_argument("-o", "--out-dir", default=None)
    p.set_defaults(func=cmd_gen)
    return top


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except DrawingRejectedError as exc:
        _err(str(exc))
        return EXIT_REJECTED
    except ResourceBudgetError as exc:
        _err(str(exc))
        return EXIT_BUDGET
    except (FormatError, MalformedWitnessError, MalformedDrawingError,
            PreconditionError) as exc:
        _err(str(exc))
        return EXIT_USAGE
    except OSError as exc:
        _err(str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
