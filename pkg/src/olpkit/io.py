"""JSON interchange for every instance and drawing kind.

One document shape per suffix: `.olg.json` level graphs, `.drw.json`
drawings (points, per-edge polylines, optional named regions),
`.pm3sat.json` rectilinear formula layouts, `.geo.json` direction-set
instances, `.tlvl.json` tree-constrained and `.clvl.json`
cluster-constrained instances.  Rationals serialize as "p/q" strings
in lowest terms; plain integers are allowed as shorthand.  Emission is
deterministic (sorted keys, fixed indentation), so equal objects give
byte-equal files.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from .core import (
    CrossingSet,
    Edge,
    EmbeddingWitness,
    OrderedLevelGraph,
    PolylineDrawing,
)
from .geom import Point, Scalar
from .geoplan import GeodesicDrawing, GeodesicInstance, direction_set
from .levelvariants import ClusteredInstance, TLevelInstance, TargetDrawing, Tree
from .satgadget import ClauseShape, Pm3SatInstance


class FormatError(ValueError):
    """Input text does not match the expected document shape."""


SUFFIXES = (".olg.json", ".drw.json", ".pm3sat.json", ".geo.json",
            ".tlvl.json", ".clvl.json")


def kind_of_path(path: str) -> str:
    for suffix in SUFFIXES:
        if path.endswith(suffix):
            return suffix.split(".")[1]
    raise FormatError(f"unrecognized file suffix: {path!r} "
                      f"(expected one of {', '.join(SUFFIXES)})")


# -- scalars ------------------------------------------------------------------


def scalar_to_json(x: Scalar) -> Any:
    f = Fraction(x)
    if f.denominator == 1:
        return int(f)
    return f"{f.numerator}/{f.denominator}"


def scalar_from_json(v: Any) -> Scalar:
    if isinstance(v, bool):
        raise FormatError(f"expected a number, got {v!r}")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        parts = v.split("/")
        try:
            if len(parts) == 1:
                return int(parts[0])
            if len(parts) == 2:
                return Fraction(int(parts[0]), int(parts[1]))
        except (ValueError, ZeroDivisionError):
            pass
    raise FormatError(f"not a rational: {v!r}")


def _point_to_json(p: Point) -> List[Any]:
    return [scalar_to_json(p[0]), scalar_to_json(p[1])]


def _point_from_json(v: Any) -> Point:
    if not isinstance(v, list) or len(v) != 2:
        raise FormatError(f"not a point: {v!r}")
    return (scalar_from_json(v[0]), scalar_from_json(v[1]))


def _require(doc: Any, key: str, cls: type) -> Any:
    if not isinstance(doc, dict) or key not in doc:
        raise FormatError(f"missing {key!r}")
    value = doc[key]
    if not isinstance(value, cls):
        raise FormatError(f"{key!r} has the wrong type")
    return value


def _edges_from_json(items: Any) -> Tuple[Edge, ...]:
    edges = []
    for item in items:
        if not isinstance(item, list) or len(item) != 2 \
                or not all(isinstance(s, str) for s in item):
            raise FormatError(f"not an edge: {item!r}")
        edges.append((item[0], item[1]))
    return tuple(edges)


# -- level graphs -------------------------------------------------------------


def emit_olg(graph: OrderedLevelGraph) -> Dict[str, Any]:
    return {
        "vertices": [{"id": v.id, "level": v.level, "pos": v.pos}
                     for v in graph.vertices],
        "edges": [[u, w] for u, w in graph.edges],
    }


def parse_olg(doc: Any) -> OrderedLevelGraph:
    rows = _require(doc, "vertices", list)
    vertices = []
    for row in rows:
        if not isinstance(row, dict):
            raise FormatError(f"not a vertex: {row!r}")
        try:
            vertices.append((str(row["id"]), int(row["level"]), int(row["pos"])))
        except (KeyError, TypeError, ValueError):
            raise FormatError(f"not a vertex: {row!r}")
    return OrderedLevelGraph(vertices, _edges_from_json(_require(doc, "edges", list)))


# -- drawings -----------------------------------------------------------------


def _edge_key(e: Edge) -> str:
    return f"{e[0]}->{e[1]}"


def emit_drawing(drawing: Any) -> Dict[str, Any]:
    """Serialize a drawing of any kind.

    Accepts a plain drawing, a paths-only drawing, or a target drawing
    with cluster regions; absent parts are simply omitted.
    """
    regions = None
    if isinstance(drawing, TargetDrawing):
        regions = drawing.regions
        drawing = drawing.drawing
    if isinstance(drawing, GeodesicDrawing):
        points: Dict[str, Point] = {}
        paths = drawing.paths
    else:
        points = drawing.points
        paths = drawing.paths
    doc: Dict[str, Any] = {
        "points": {vid: _point_to_json(p) for vid, p in points.items()},
        "paths": {_edge_key(e): [_point_to_json(p) for p in path]
                  for e, path in paths.items()},
    }
    if regions is not None:
        doc["regions"] = {name: [_point_to_json(p) for p in poly]
                          for name, poly in regions.items()}
    return doc


def parse_drawing(doc: Any) -> TargetDrawing:
    """Read any drawing document into the most general container."""
    points = {str(vid): _point_from_json(p)
              for vid, p in _require(doc, "points", dict).items()}
    paths: Dict[Edge, Tuple[Point, ...]] = {}
    for key, pts in _require(doc, "paths", dict).items():
        parts = key.split("->")
        if len(parts) != 2 or not isinstance(pts, list):
            raise FormatError(f"not an edge path: {key!r}")
        paths[(parts[0], parts[1])] = tuple(_point_from_json(p) for p in pts)
    regions = None
    if isinstance(doc, dict) and "regions" in doc:
        regions = {str(name): tuple(_point_from_json(p) for p in poly)
                   for name, poly in _require(doc, "regions", dict).items()}
    return TargetDrawing(PolylineDrawing(points, paths), regions)


# -- witnesses ----------------------------------------------------------------


def emit_witness(witness: EmbeddingWitness) -> List[List[Any]]:
    out = []
    for cs in witness.levels:
        row: List[Any] = []
        for obj in cs.objects:
            if isinstance(obj, str):
                row.append(["v", obj])
            else:
                row.append(["e", obj[0], obj[1]])
        out.append(row)
    return out


def parse_witness(doc: Any) -> EmbeddingWitness:
    if not isinstance(doc, list):
        raise FormatError("witness must be a list of levels")
    levels = []
    for i, row in enumerate(doc):
        objs: List[Any] = []
        for item in row:
            if not isinstance(item, list) or not item:
                raise FormatError(f"not a witness object: {item!r}")
            if item[0] == "v" and len(item) == 2:
                objs.append(str(item[1]))
            elif item[0] == "e" and len(item) == 3:
                objs.append((str(item[1]), str(item[2])))
            else:
                raise FormatError(f"not a witness object: {item!r}")
        levels.append(CrossingSet(i, tuple(objs)))
    return EmbeddingWitness(tuple(levels))


# -- formula layouts ----------------------------------------------------------


def emit_pm3sat(inst: Pm3SatInstance) -> Dict[str, Any]:
    return {
        "variables": [[lo, hi] for lo, hi in inst.variables],
        "clauses": [{"spine": c.y,
                     "polarity": "positive" if c.y > 0 else "negative",
                     "legs": list(c.legs)}
                    for c in inst.clauses],
    }


def parse_pm3sat(doc: Any) -> Pm3SatInstance:
    variables = []
    for item in _require(doc, "variables", list):
        if not isinstance(item, list) or len(item) != 2 \
                or not all(isinstance(x, int) for x in item):
            raise FormatError(f"not a variable segment: {item!r}")
        variables.append((item[0], item[1]))
    clauses = []
    for row in _require(doc, "clauses", list):
        y = _require(row, "spine", int)
        legs = _require(row, "legs", list)
        if not all(isinstance(x, int) for x in legs):
            raise FormatError(f"clause legs must be integers: {legs!r}")
        polarity = row.get("polarity")
        if polarity is not None and polarity != ("positive" if y > 0 else "negative"):
            raise FormatError(f"polarity {polarity!r} contradicts spine {y}")
        clauses.append(ClauseShape(y, tuple(legs)))
    return Pm3SatInstance(tuple(variables), tuple(clauses))


# -- geodesic instances ---------------------------------------------------------


def emit_geo(inst: GeodesicInstance) -> Dict[str, Any]:
    doc: Dict[str, Any] = {
        "directions": [_point_to_json(d) for d in inst.directions.directions],
        "points": {vid: _point_to_json(p) for vid, p in inst.points.items()},
        "edges": [[u, w] for u, w in inst.edges],
    }
    if inst.normalize_map is not None:
        doc["normalize_map"] = [[scalar_to_json(x) for x in row]
                                for row in inst.normalize_map]
    return doc


def parse_geo(doc: Any) -> GeodesicInstance:
    dirs = direction_set(tuple(tuple(_point_from_json(d))
                               for d in _require(doc, "directions", list)))
    points = {str(vid): _point_from_json(p)
              for vid, p in _require(doc, "points", dict).items()}
    edges = _edges_from_json(_require(doc, "edges", list))
    matrix = None
    if "normalize_map" in doc:
        rows = _require(doc, "normalize_map", list)
        if len(rows) != 2 or any(not isinstance(r, list) or len(r) != 2
                                 for r in rows):
            raise FormatError("normalize_map must be a 2x2 matrix")
        matrix = tuple(tuple(scalar_from_json(x) for x in row) for row in rows)
    return GeodesicInstance(points, edges, dirs, matrix)


# -- tree- and cluster-constrained instances ----------------------------------


def _tree_to_json(tree: Tree) -> Any:
    if isinstance(tree, str):
        return tree
    return [_tree_to_json(child) for child in tree]


def _tree_from_json(v: Any) -> Tree:
    if isinstance(v, str):
        return v
    if isinstance(v, list):
        return tuple(_tree_from_json(child) for child in v)
    raise FormatError(f"not a tree node: {v!r}")


def emit_tlvl(inst: TLevelInstance) -> Dict[str, Any]:
    doc = emit_olg(inst.graph)
    doc["trees"] = [_tree_to_json(t) for t in inst.trees]
    return doc


def parse_tlvl(doc: Any) -> TLevelInstance:
    graph = parse_olg(doc)
    trees = tuple(_tree_from_json(t) for t in _require(doc, "trees", list))
    return TLevelInstance(graph, trees)


def emit_clvl(inst: ClusteredInstance) -> Dict[str, Any]:
    doc = emit_olg(inst.graph)
    doc["clusters"] = {name: sorted(members)
                       for name, members in inst.clusters.items()}
    return doc


def parse_clvl(doc: Any) -> ClusteredInstance:
    graph = parse_olg(doc)
    clusters = {}
    for name, members in _require(doc, "clusters", dict).items():
        if not isinstance(members, list) \
                or not all(isinstance(m, str) for m in members):
            raise FormatError(f"cluster {name!r} must list vertex ids")
        clusters[str(name)] = frozenset(members)
    return ClusteredInstance(graph, clusters)


# -- files --------------------------------------------------------------------


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc


def read_document(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def write_document(path: str, doc: Any) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))
