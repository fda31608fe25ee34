"""Ordered level graphs, embedding witnesses and exact drawings.

An instance places each vertex on an integer level (its y coordinate)
and at an integer position inside the level (its x coordinate, a
bijection onto 0..width-1 per level).  Edges always point upward and
are drawn as strictly y-monotone polylines that bend only where they
cross intermediate levels.

Instead of coordinates, feasibility is decided on *embedding
witnesses*: for every level, the left-to-right order of all objects
crossing it (the level's vertices plus every edge passing through).
A witness is realizable iff no strip between consecutive levels forces
two edges to swap sides, which `witness_check` decides with a single
sorted scan per strip.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

from .geom import Point, Scalar, denominator_scale, on_segment, scale_point, segment_intersection

Edge = Tuple[str, str]
# A witness object is either a vertex id or an edge passing through.
WitnessObject = Union[str, Edge]


class PreconditionError(ValueError):
    """An operation was called on an input outside its contract."""


class ResourceBudgetError(RuntimeError):
    """A search or enumeration exceeded its configured budget."""


class MalformedWitnessError(ValueError):
    """A witness does not structurally match its instance."""


class Vertex(NamedTuple):
    id: str
    level: int
    pos: int


class ValidationReport(NamedTuple):
    ok: bool
    issues: Tuple[str, ...]


class CrossingSet(NamedTuple):
    """Left-to-right order of everything crossing one level."""

    level: int
    objects: Tuple[WitnessObject, ...]


class EmbeddingWitness(NamedTuple):
    """One CrossingSet per level, bottom to top."""

    levels: Tuple[CrossingSet, ...]


class PolylineDrawing(NamedTuple):
    """Exact coordinates: one point per vertex, one polyline per edge."""

    points: Dict[str, Point]
    paths: Dict[Edge, Tuple[Point, ...]]


class OrderedLevelGraph:
    """Immutable level graph with cached per-level lookups."""

    def __init__(self, vertices: Iterable[Vertex], edges: Iterable[Edge] = ()):
        self.vertices: Tuple[Vertex, ...] = tuple(
            Vertex(str(v[0]), int(v[1]), int(v[2])) for v in vertices)
        self.edges: Tuple[Edge, ...] = tuple((str(u), str(v)) for u, v in edges)
        self.by_id: Dict[str, Vertex] = {v.id: v for v in self.vertices}
        buckets: Dict[int, List[Vertex]] = {}
        for v in self.vertices:
            buckets.setdefault(v.level, []).append(v)
        self._level_ids: Dict[int, Tuple[str, ...]] = {
            lvl: tuple(v.id for v in sorted(vs, key=lambda v: v.pos))
            for lvl, vs in buckets.items()
        }
        self.height: int = max(buckets) if buckets else -1
        self._passes: Optional[Dict[int, Tuple[Edge, ...]]] = None

    # -- basic queries -------------------------------------------------

    @property
    def num_levels(self) -> int:
        return self.height + 1

    def level_ids(self, level: int) -> Tuple[str, ...]:
        return self._level_ids.get(level, ())

    def width(self, level: int) -> int:
        return len(self.level_ids(level))

    def max_width(self) -> int:
        return max((len(v) for v in self._level_ids.values()), default=0)

    def level_of(self, vid: str) -> int:
        return self.by_id[vid].level

    def pos_of(self, vid: str) -> int:
        return self.by_id[vid].pos

    def is_proper(self) -> bool:
        return all(self.level_of(v) - self.level_of(u) == 1 for u, v in self.edges)

    def in_degrees(self) -> Dict[str, int]:
        deg = {v.id: 0 for v in self.vertices}
        for _, v in self.edges:
            deg[v] += 1
        return deg

    def out_degrees(self) -> Dict[str, int]:
        deg = {v.id: 0 for v in self.vertices}
        for u, _ in self.edges:
            deg[u] += 1
        return deg

    def max_degree(self) -> int:
        deg = {v.id: 0 for v in self.vertices}
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return max(deg.values(), default=0)

    def pass_throughs(self, level: int) -> Tuple[Edge, ...]:
        """Edges e with level strictly between the endpoints of e."""
        if self._passes is None:
            passes: Dict[int, List[Edge]] = {}
            for u, v in self.edges:
                for lvl in range(self.level_of(u) + 1, self.level_of(v)):
                    passes.setdefault(lvl, []).append((u, v))
            self._passes = {lvl: tuple(es) for lvl, es in passes.items()}
        return self._passes.get(level, ())

    def strip_edges(self, level: int) -> List[Edge]:
        """Edges spanning the strip between `level` and `level + 1`."""
        return [e for e in self.edges
                if self.level_of(e[0]) <= level < self.level_of(e[1])]


def validate_olg(graph: OrderedLevelGraph) -> ValidationReport:
    """Structural validity: contiguous nonempty levels, per-level
    positions forming 0..k-1, upward edges, no loops or duplicates."""
    issues: List[str] = []
    seen: Dict[str, int] = {}
    for v in graph.vertices:
        seen[v.id] = seen.get(v.id, 0) + 1
    for vid, count in seen.items():
        if count > 1:
            issues.append(f"duplicate vertex id {vid!r}")
    if graph.vertices:
        levels = sorted({v.level for v in graph.vertices})
        if levels[0] != 0 or levels[-1] != len(levels) - 1:
            missing = sorted(set(range(levels[-1] + 1)) - set(levels))
            if levels[0] < 0:
                issues.append(f"negative level {levels[0]}")
            if missing:
                issues.append(f"empty levels {missing}")
        for lvl in levels:
            pos = sorted(graph.by_id[vid].pos for vid in graph.level_ids(lvl))
            if pos != list(range(len(pos))):
                issues.append(f"positions on level {lvl} are not 0..{len(pos) - 1}")
    edge_seen = set()
    for u, v in graph.edges:
        if u not in graph.by_id or v not in graph.by_id:
            issues.append(f"edge ({u!r}, {v!r}) references a missing vertex")
            continue
        if u == v:
            issues.append(f"self loop at {u!r}")
            continue
        if graph.level_of(u) >= graph.level_of(v):
            issues.append(f"edge ({u!r}, {v!r}) does not go upward")
        if (u, v) in edge_seen:
            issues.append(f"duplicate edge ({u!r}, {v!r})")
        edge_seen.add((u, v))
    return ValidationReport(not issues, tuple(issues))


def witness_from_orders(orders: Sequence[Sequence[WitnessObject]]) -> EmbeddingWitness:
    return EmbeddingWitness(tuple(
        CrossingSet(i, tuple(objs)) for i, objs in enumerate(orders)))


def _check_witness_structure(graph: OrderedLevelGraph,
                             witness: EmbeddingWitness) -> None:
    if len(witness.levels) != graph.num_levels:
        raise MalformedWitnessError(
            f"witness has {len(witness.levels)} levels, instance has {graph.num_levels}")
    for i, cs in enumerate(witness.levels):
        if cs.level != i:
            raise MalformedWitnessError(f"crossing set {i} is labelled {cs.level}")
        vertices = [o for o in cs.objects if isinstance(o, str)]
        edges = [o for o in cs.objects if not isinstance(o, str)]
        if len(set(vertices)) != len(vertices) or len(set(edges)) != len(edges):
            raise MalformedWitnessError(f"duplicate object on level {i}")
        if set(vertices) != set(graph.level_ids(i)):
            raise MalformedWitnessError(f"vertex set mismatch on level {i}")
        if set(edges) != set(graph.pass_throughs(i)):
            raise MalformedWitnessError(f"pass-through set mismatch on level {i}")


def witness_check(graph: OrderedLevelGraph, witness: EmbeddingWitness) -> bool:
    """Decide whether a well-formed witness is realizable as a drawing.

    Raises MalformedWitnessError when the witness does not list exactly
    the right objects per level.  Otherwise returns True iff the
    vertices appear in position order on every level and no strip
    contains an order inversion between edges with distinct anchors on
    both sides.
    """
    _check_witness_structure(graph, witness)
    pos: List[Dict[WitnessObject, int]] = []
    for cs in witness.levels:
        pos.append({obj: idx for idx, obj in enumerate(cs.objects)})
        vertices = [o for o in cs.objects if isinstance(o, str)]
        if tuple(vertices) != graph.level_ids(cs.level):
            return False
    for i in range(graph.num_levels - 1):
        lo, hi = pos[i], pos[i + 1]
        items = []
        for u, v in graph.strip_edges(i):
            bottom: WitnessObject = u if graph.level_of(u) == i else (u, v)
            top: WitnessObject = v if graph.level_of(v) == i + 1 else (u, v)
            items.append((lo[bottom], hi[top]))
        items.sort()
        run_max = -1
        k = 0
        while k < len(items):
            b = items[k][0]
            group_min = items[k][1]
            group_max = group_min
            while k < len(items) and items[k][0] == b:
                group_max = items[k][1]
                k += 1
            # Edges sharing the bottom anchor (same group) or the top
            # anchor (equal top position) are exempt; anything else must
            # keep the bottom order on top.
            if group_min < run_max:
                return False
            run_max = max(run_max, group_max)
    return True


def witness_to_drawing(graph: OrderedLevelGraph,
                       witness: EmbeddingWitness) -> PolylineDrawing:
    """Realize a witness with exact coordinates.

    Vertices sit at (pos, level).  A run of k pass-through bends between
    two consecutive vertices splits their unit gap at fractions
    j/(k+1); runs hanging off either end of a level continue outward on
    the unit grid.
    """
    _check_witness_structure(graph, witness)
    xs: List[Dict[Edge, Scalar]] = []
    for cs in witness.levels:
        level_x: Dict[Edge, Scalar] = {}
        anchors = [(idx, graph.pos_of(obj))
                   for idx, obj in enumerate(cs.objects) if isinstance(obj, str)]
        if not anchors and cs.objects:
            raise MalformedWitnessError(f"level {cs.level} has no vertices")
        if anchors:
            first_idx, first_x = anchors[0]
            for j in range(first_idx):
                level_x[cs.objects[j]] = first_x - (first_idx - j)
            for (ia, xa), (ib, xb) in zip(anchors, anchors[1:]):
                k = ib - ia - 1
                for j in range(1, k + 1):
                    level_x[cs.objects[ia + j]] = xa + Fraction(j * (xb - xa), k + 1)
            last_idx, last_x = anchors[-1]
            for j in range(last_idx + 1, len(cs.objects)):
                level_x[cs.objects[j]] = last_x + (j - last_idx)
        xs.append(level_x)
    points: Dict[str, Point] = {
        v.id: (v.pos, v.level) for v in graph.vertices}
    paths: Dict[Edge, Tuple[Point, ...]] = {}
    for u, v in graph.edges:
        pts: List[Point] = [points[u]]
        for lvl in range(graph.level_of(u) + 1, graph.level_of(v)):
            pts.append((xs[lvl][(u, v)], lvl))
        pts.append(points[v])
        paths[(u, v)] = tuple(pts)
    return PolylineDrawing(points, paths)


def _as_int_fraction(value: Scalar) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


def verify_drawing_geometric(graph: OrderedLevelGraph,
                             drawing: PolylineDrawing,
                             *, require_positions: bool = True) -> bool:
    """Exact geometric acceptance test for a polyline drawing.

    Checks, with integer-scaled rational arithmetic throughout:
    vertices at (pos, level); every edge drawn from its tail point to
    its head point; strict y-monotonicity with bends only on level
    lines; no edge through a non-endpoint vertex; and no two edges
    sharing any point other than a common endpoint vertex.

    With `require_positions` False the per-level x coordinates are
    free: a vertex only has to sit on its own level line, at an x
    distinct from the level's other vertices.  Targets that constrain
    the left-to-right order by other means reuse the rest unchanged.
    """
    if set(drawing.points) != set(graph.by_id):
        return False
    if require_positions:
        for v in graph.vertices:
            if drawing.points[v.id] != (v.pos, v.level):
                return False
    else:
        for v in graph.vertices:
            if drawing.points[v.id][1] != v.level:
                return False
        for lvl in range(graph.num_levels):
            ids = graph.level_ids(lvl)
            if len({drawing.points[vid][0] for vid in ids}) != len(ids):
                return False
    if set(drawing.paths) != set(graph.edges):
        return False
    for (u, v), path in drawing.paths.items():
        if len(path) < 2:
            return False
        if path[0] != drawing.points[u] or path[-1] != drawing.points[v]:
            return False
        for (_, y1), (_, y2) in zip(path, path[1:]):
            if not y1 < y2:
                return False
        for _, y in path[1:-1]:
            if _as_int_fraction(y).denominator != 1:
                return False

    all_points = list(drawing.points.values())
    for path in drawing.paths.values():
        all_points.extend(path)
    scale = denominator_scale(all_points)
    spoints = {vid: scale_point(p, scale) for vid, p in drawing.points.items()}
    spaths = {e: [scale_point(p, scale) for p in path]
              for e, path in drawing.paths.items()}

    # Bucket segments by the strips they cross so only nearby pairs are
    # compared.  y coordinates of bends are integers, so each segment
    # spans whole strips of the scaled grid.
    strip_buckets: Dict[int, List[Tuple[Edge, int, Tuple[int, int], Tuple[int, int]]]] = {}
    for e, pts in spaths.items():
        for si, (a, b) in enumerate(zip(pts, pts[1:])):
            lo = a[1] // scale
            hi = (b[1] + scale - 1) // scale
            for strip in range(lo, hi):
                strip_buckets.setdefault(strip, []).append((e, si, a, b))

    for vid, p in spoints.items():
        lvl = graph.level_of(vid)
        for strip in (lvl - 1, lvl):
            for e, _, a, b in strip_buckets.get(strip, ()):
                if vid in e:
                    continue
                if on_segment(p, a, b):
                    return False

    checked = set()
    for bucket in strip_buckets.values():
        for i in range(len(bucket)):
            e1, s1, a1, b1 = bucket[i]
            for j in range(i + 1, len(bucket)):
                e2, s2, a2, b2 = bucket[j]
                if e1 == e2:
                    continue
                key = (e1, s1, e2, s2)
                if key in checked:
                    continue
                checked.add(key)
                kind, pt = segment_intersection(a1, b1, a2, b2)
                if kind == "none":
                    continue
                if kind in ("cross", "overlap"):
                    return False
                shared = set(e1) & set(e2)
                if not any(spoints[w] == pt for w in shared):
                    return False
    return True


def normalize_real_coordinates(points: Dict[str, Point]) -> Dict[str, Vertex]:
    """Collapse exact (x, y) placements onto the integer grid.

    Levels are the rank of each distinct y; positions are the rank of x
    among points sharing a y.  Duplicate placements are rejected.
    """
    if len(set(points.values())) != len(points):
        raise PreconditionError("two points share exact coordinates")
    ys = sorted({y for _, y in points.values()})
    level_of_y = {y: i for i, y in enumerate(ys)}
    by_level: Dict[int, List[Tuple[Scalar, str]]] = {}
    for pid, (x, y) in points.items():
        by_level.setdefault(level_of_y[y], []).append((x, pid))
    out: Dict[str, Vertex] = {}
    for lvl, row in by_level.items():
        row.sort()
        for pos, (x, pid) in enumerate(row):
            if pos and row[pos - 1][0] == x:
                raise PreconditionError(f"points {row[pos - 1][1]!r} and {pid!r} share x on a level")
            out[pid] = Vertex(pid, lvl, pos)
    return out
