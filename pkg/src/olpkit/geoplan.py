"""Geodesic matching and bi-monotone drawing instances built from
narrow ordered level graphs.

The pipeline places a level graph on a slant, replaces every vertex by
a small gadget square whose corners carry the incident edges, and, for
direction sets beyond the axes, re-spaces the squares and shrinks the
corner offsets so that no two output points line up with any allowed
direction.  Everything is exact rational arithmetic; every geometric
decision is a cross-product sign.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cmp_to_key
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .core import (
    Edge,
    EmbeddingWitness,
    OrderedLevelGraph,
    PreconditionError,
    validate_olg,
    witness_check,
)
from .geom import (
    Point,
    Scalar,
    cross,
    half_plane,
    primitive_direction,
    segment_intersection,
    sign,
)

Direction = Tuple[int, int]
Matrix = Tuple[Tuple[Scalar, Scalar], Tuple[Scalar, Scalar]]

_ORIGIN: Point = (0, 0)


class DirectionSet(NamedTuple):
    """Symmetric direction alphabet.

    Directions are stored as primitive integer vectors in
    counterclockwise order starting nearest the positive x-axis, so
    neighbours in the tuple are exactly the angularly adjacent pairs.
    """

    directions: Tuple[Direction, ...]


class GeodesicInstance(NamedTuple):
    """Point-placed graph plus the allowed segment directions.

    `normalize_map`, when set, is the linear map that carries the
    placement into the axis-adjacent frame the reduction was built in;
    drawings found in that frame map back through its inverse.
    """

    points: Dict[str, Point]
    edges: Tuple[Edge, ...]
    directions: "DirectionSet"
    normalize_map: Optional[Matrix] = None


class GeodesicDrawing(NamedTuple):
    """One polyline per edge, keyed by the instance's edge tuple."""

    paths: Dict[Edge, Tuple[Point, ...]]


def direction_set(directions) -> DirectionSet:
    """Canonicalize a direction collection and check its invariants.

    Vectors are scaled to coprime integers; the set must be free of
    positively parallel repeats and closed under reversal.
    """
    raw = directions.directions if isinstance(directions, DirectionSet) else tuple(directions)
    prims: List[Direction] = []
    seen = set()
    for d in raw:
        try:
            p = primitive_direction(d)
        except ValueError:
            raise PreconditionError("directions must be nonzero vectors")
        if p in seen:
            raise PreconditionError(
                f"direction {tuple(d)} repeats another up to positive scale")
        seen.add(p)
        prims.append(p)
    for p in prims:
        if (-p[0], -p[1]) not in seen:
            raise PreconditionError(
                f"direction set is not symmetric: missing {(-p[0], -p[1])}")

    def angular(a: Direction, b: Direction) -> int:
        ha, hb = half_plane(a), half_plane(b)
        if ha != hb:
            return ha - hb
        return -sign(cross(_ORIGIN, a, b))

    prims.sort(key=cmp_to_key(angular))
    return DirectionSet(tuple(prims))


AXES = direction_set(((1, 0), (0, 1), (-1, 0), (0, -1)))


def adjacent_pairs(directions) -> Tuple[Tuple[Direction, Direction], ...]:
    """All pairs of directions that are consecutive in circular order."""
    ds = direction_set(directions).directions
    n = len(ds)
    return tuple((ds[i], ds[(i + 1) % n]) for i in range(n))


# -- shear ---------------------------------------------------------------


def _require_narrow(graph: OrderedLevelGraph) -> None:
    report = validate_olg(graph)
    if not report.ok:
        raise PreconditionError("; ".join(report.issues))
    if graph.max_width() > 2:
        raise PreconditionError("levels may hold at most two vertices")
    if graph.max_degree() > 2:
        raise PreconditionError("vertex degrees may not exceed two")


def shear_olp(graph: OrderedLevelGraph, directions=AXES) -> GeodesicInstance:
    """Place vertex v at (chi(v) + 3*gamma(v), gamma(v)).

    The slant is wide enough that every edge displacement points
    strictly up and to the right, so the level structure survives as
    coordinate order.
    """
    _require_narrow(graph)
    points: Dict[str, Point] = {
        v.id: (v.pos + 3 * v.level, v.level) for v in graph.vertices}
    return GeodesicInstance(points, graph.edges, direction_set(directions))


# -- vertex splitting ----------------------------------------------------

# gadget square half-sides, indexed by the in-level position chi
_HALF = (Fraction(1, 8), Fraction(1, 16))


def _incident_ranks(graph: OrderedLevelGraph) -> Dict[str, Dict[Edge, int]]:
    """1-based rank of each edge among its endpoint's incidences."""
    ranks: Dict[str, Dict[Edge, int]] = {v.id: {} for v in graph.vertices}
    for e in graph.edges:
        for end in e:
            ranks[end][e] = len(ranks[end]) + 1
    return ranks


def _gadget_point(center: Point, half: Fraction, rank: int, upward: bool,
                  scale: Fraction = Fraction(1)) -> Point:
    off = half - scale / (48 if rank == 1 else 24)
    s = 1 if upward else -1
    return (center[0] + s * off, center[1] + s * off)


def split_to_matching(inst: GeodesicInstance,
                      source: OrderedLevelGraph) -> GeodesicInstance:
    """Replace each placed vertex by a gadget square.

    Every incident edge gets a degree-one vertex just inside the
    square's top-right corner (edge towards a higher level) or
    bottom-left corner (towards a lower level), offset 1/48 along the
    diagonal for the first incidence and 1/24 for the second.  A
    blocking edge spans the other diagonal, so the output is a perfect
    matching.
    """
    _require_narrow(source)
    for v in source.vertices:
        if inst.points.get(v.id) != (v.pos + 3 * v.level, v.level):
            raise PreconditionError(
                "instance placement does not come from shear_olp of the source graph")
    ranks = _incident_ranks(source)
    points: Dict[str, Point] = {}
    edges: List[Edge] = []
    for v in source.vertices:
        cx, cy = inst.points[v.id]
        h = _HALF[v.pos]
        points[f"{v.id}@tl"] = (cx - h, cy + h)
        points[f"{v.id}@br"] = (cx + h, cy - h)
        edges.append((f"{v.id}@tl", f"{v.id}@br"))
    for u, w in source.edges:
        ru, rw = ranks[u][(u, w)], ranks[w][(u, w)]
        points[f"{u}@{ru}"] = _gadget_point(
            inst.points[u], _HALF[source.pos_of(u)], ru, upward=True)
        points[f"{w}@{rw}"] = _gadget_point(
            inst.points[w], _HALF[source.pos_of(w)], rw, upward=False)
        edges.append((f"{u}@{ru}", f"{w}@{rw}"))
    return GeodesicInstance(points, tuple(edges), inst.directions)


def _canonical_line(d) -> Direction:
    p = primitive_direction(d)
    if p[0] < 0 or (p[0] == 0 and p[1] < 0):
        p = (-p[0], -p[1])
    return p


def general_position_check(inst: GeodesicInstance) -> bool:
    """No two placed points on a common line with an allowed direction."""
    lines = {_canonical_line(d) for d in direction_set(inst.directions).directions}
    pts = list(inst.points.values())
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            dx = pts[j][0] - pts[i][0]
            dy = pts[j][1] - pts[i][1]
            if dx == 0 and dy == 0:
                return False
            if _canonical_line((dx, dy)) in lines:
                return False
    return True


# -- adaptation to general direction sets --------------------------------


class _Square(NamedTuple):
    name: str
    chi: int
    gamma: int
    half: Fraction
    gadgets: Tuple[Tuple[int, bool], ...]  # (rank, upward)


def _parse_squares(inst: GeodesicInstance) -> Dict[str, _Square]:
    grouped: Dict[str, Dict[str, Point]] = {}
    for pid, pt in inst.points.items():
        name, _, tag = pid.rpartition("@")
        if not name or tag not in ("tl", "br", "1", "2"):
            raise PreconditionError(
                f"vertex id {pid!r} does not come from split_to_matching")
        grouped.setdefault(name, {})[tag] = pt
    squares: Dict[str, _Square] = {}
    for name, tags in grouped.items():
        if "tl" not in tags or "br" not in tags:
            raise PreconditionError(f"square {name!r} is missing blocking corners")
        tl, br = tags["tl"], tags["br"]
        half = Fraction(br[0] - tl[0], 2)
        if half not in _HALF or tl[1] - br[1] != 2 * half:
            raise PreconditionError(f"square {name!r} has inconsistent corners")
        cx, cy = tl[0] + half, br[1] + half
        gamma = Fraction(cy)
        if gamma.denominator != 1:
            raise PreconditionError(f"square {name!r} is not centred on a level")
        gadgets = tuple(sorted(
            (int(tag), tags[tag][0] > cx) for tag in tags if tag in ("1", "2")))
        squares[name] = _Square(name, _HALF.index(half), int(gamma), half, gadgets)
    return squares


def _offset_scale(m1: Fraction, m2: Fraction) -> Fraction:
    """Largest c on the k/16 grid (halving if necessary) that keeps the
    gadget points strictly inside their corner wedges.

    Seen from a blocking corner, the near-side gadget points must look
    flatter than the flattest extra slope m1 and the far-side ones
    steeper than the steepest extra slope m2.
    """
    def fits(c: Fraction) -> bool:
        for h in _HALF:
            for den in (48, 24):
                off = c / den
                if not off < m1 * (2 * h - off):
                    return False
                if not 2 * h - off > m2 * off:
                    return False
        return True

    den = 16
    while den <= 1 << 20:
        for k in range(den - 1, 0, -1):
            c = Fraction(k, den)
            if fits(c):
                return c
        den *= 2
    raise AssertionError("offset scale search cannot fail for positive slopes")


def adapt_general_directions(inst: GeodesicInstance, directions) -> GeodesicInstance:
    """Re-space and re-offset a split matching for extra directions.

    The direction set must already be normalized: (1,0) and (0,1)
    adjacent, nothing parallel to a square diagonal.  Two changes are
    applied.  First the horizontal gap between co-level squares (and
    the shear with it) widens until the right square clears the
    flattest-slope line dropping from the left square's top-right
    corner.  Second the corner offsets shrink by a rational factor
    c in (0,1) so every gadget point stays strictly between the
    flattest and steepest slope lines through its blocking corners.
    Axis-only sets need neither change and pass through untouched.
    """
    S = direction_set(directions)
    ds = S.directions
    if len(ds) < 4:
        raise PreconditionError("need at least four directions")
    if ds[0] != (1, 0) or ds[1] != (0, 1):
        raise PreconditionError(
            "direction set must contain (1,0) and (0,1) as an adjacent pair")
    for d in ds:
        if abs(d[0]) == abs(d[1]):
            raise PreconditionError("no direction may run along a square diagonal")
    slopes: List[Fraction] = []
    for dx, dy in ds:
        if (dx, dy) in AXES.directions:
            continue
        if dy < 0:
            dx, dy = -dx, -dy
        if dx > 0:
            raise PreconditionError(
                "directions strictly between (1,0) and (0,1) are not allowed")
        slopes.append(Fraction(dy, -dx))
    if not slopes:
        return inst
    m1, m2 = min(slopes), max(slopes)
    # widen until a 3/16 drop along the flattest slope stays short of
    # the next square; the shear grows by the same amount so every
    # inter-level displacement keeps pointing up-right
    extra = math.floor(Fraction(3, 16) * (1 + 1 / m1))
    scale = _offset_scale(m1, m2)
    points: Dict[str, Point] = {}
    for sq in _parse_squares(inst).values():
        cx: Scalar = (3 + extra) * sq.gamma + (1 + extra) * sq.chi
        cy: Scalar = sq.gamma
        points[f"{sq.name}@tl"] = (cx - sq.half, cy + sq.half)
        points[f"{sq.name}@br"] = (cx + sq.half, cy - sq.half)
        for rank, upward in sq.gadgets:
            points[f"{sq.name}@{rank}"] = _gadget_point(
                (cx, cy), sq.half, rank, upward, scale)
    return GeodesicInstance(points, inst.edges, S)


# -- full reductions -----------------------------------------------------


def _apply(m: Matrix, p: Point) -> Point:
    return (m[0][0] * p[0] + m[0][1] * p[1],
            m[1][0] * p[0] + m[1][1] * p[1])


def _invert(m: Matrix) -> Matrix:
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    return ((m[1][1] / det, -m[0][1] / det),
            (-m[1][0] / det, m[0][0] / det))


def _normalizing_map(S: DirectionSet) -> Optional[Matrix]:
    """Linear map making (1,0),(0,1) adjacent and killing diagonals.

    Returns None when the set is already normalized.  Otherwise the
    first adjacent pair is mapped onto the axes and the vertical scale
    is nudged off the finitely many values that would leave some image
    parallel to a square diagonal.
    """
    ds = S.directions
    axis_pair = ds[0] == (1, 0) and ds[1] == (0, 1)
    diagonal = any(abs(dx) == abs(dy) for dx, dy in ds)
    if axis_pair and not diagonal:
        return None
    if axis_pair:
        base: Matrix = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
        images = ds
    else:
        d1, d2 = ds[0], ds[1]
        det = Fraction(d1[0] * d2[1] - d1[1] * d2[0])
        base = ((d2[1] / det, -d2[0] / det), (-d1[1] / det, d1[0] / det))
        images = tuple(primitive_direction(_apply(base, d)) for d in ds)
    bad = {Fraction(abs(a), abs(b)) for a, b in images if a != 0 and b != 0}
    t, q = Fraction(1), 1
    while t in bad:
        q += 1
        t = Fraction(1, q)
    return (base[0], (t * base[1][0], t * base[1][1]))


def reduce_olp_to_geodesic(graph: OrderedLevelGraph, directions=AXES) -> GeodesicInstance:
    """Shear, split and adapt; the work is linear in the graph size.

    For direction sets that are not already axis-adjacent the
    construction runs in a normalized frame and the placement is mapped
    back; the frame map is kept on the instance.
    """
    S = direction_set(directions)
    if len(S.directions) < 4:
        raise PreconditionError("need at least four directions")
    frame = _normalizing_map(S)
    work = S if frame is None else direction_set(
        tuple(_apply(frame, d) for d in S.directions))
    adapted = adapt_general_directions(
        split_to_matching(shear_olp(graph, work), graph), work)
    if frame is None:
        return adapted
    back = _invert(frame)
    points = {pid: _apply(back, pt) for pid, pt in adapted.points.items()}
    return GeodesicInstance(points, adapted.edges, S, normalize_map=frame)


def reduce_olp_to_bimonotone(graph: OrderedLevelGraph) -> GeodesicInstance:
    """The axis-direction instance doubles as the bi-monotone one:
    general position for the axes makes both coordinates injective."""
    return reduce_olp_to_geodesic(graph, AXES)


# -- drawing verifiers ---------------------------------------------------


def _resolved_paths(inst: GeodesicInstance,
                    drawing: GeodesicDrawing) -> Optional[List[Tuple[Point, ...]]]:
    """Paths oriented tail-to-head, or None on any structural mismatch."""
    if set(drawing.paths) != set(inst.edges):
        return None
    out: List[Tuple[Point, ...]] = []
    for u, w in inst.edges:
        path = tuple(drawing.paths[(u, w)])
        if len(path) < 2:
            return None
        pu, pw = inst.points[u], inst.points[w]
        if path[0] == pw and path[-1] == pu:
            path = path[::-1]
        if path[0] != pu or path[-1] != pw:
            return None
        if any(path[i] == path[i + 1] for i in range(len(path) - 1)):
            return None
        out.append(path)
    return out


def _contacts_ok(paths: Sequence[Tuple[Point, ...]]) -> bool:
    """Pairwise exact intersection scan.

    Consecutive segments of one path may meet at their joint; segments
    of different paths may meet only at a point that terminates both
    paths.  Everything else, including collinear overlap, fails.
    """
    segs: List[Tuple[int, int, Point, Point]] = []
    for pi, path in enumerate(paths):
        for si in range(len(path) - 1):
            segs.append((pi, si, path[si], path[si + 1]))
    terminals = [frozenset((p[0], p[-1])) for p in paths]
    for a in range(len(segs)):
        pa, sa, a1, a2 = segs[a]
        for b in range(a + 1, len(segs)):
            pb, sb, b1, b2 = segs[b]
            kind, pt = segment_intersection(a1, a2, b1, b2)
            if kind == "none":
                continue
            if kind != "point":
                return False
            if pa == pb:
                if abs(sa - sb) != 1:
                    return False
                joint = a1 if sb < sa else a2
                if pt != joint:
                    return False
            else:
                if pt not in (a1, a2) or pt not in (b1, b2):
                    return False
                if pt not in terminals[pa] or pt not in terminals[pb]:
                    return False
    return True


def verify_geodesic_drawing(inst: GeodesicInstance, drawing: GeodesicDrawing) -> bool:
    """Exact check of the geodesic drawing contract.

    Endpoints must sit on the placement, every segment must follow an
    allowed direction, each edge may combine at most two directions and
    only angularly adjacent ones, and no two segments may cross.
    """
    try:
        S = direction_set(inst.directions)
    except PreconditionError:
        return False
    allowed = set(S.directions)
    pairs = {frozenset(p) for p in adjacent_pairs(S)}
    paths = _resolved_paths(inst, drawing)
    if paths is None:
        return False
    for path in paths:
        used = {primitive_direction((q[0] - p[0], q[1] - p[1]))
                for p, q in zip(path, path[1:])}
        if not used <= allowed or len(used) > 2:
            return False
        if len(used) == 2 and frozenset(used) not in pairs:
            return False
    return _contacts_ok(paths)


def verify_bimonotone_drawing(inst: GeodesicInstance, drawing: GeodesicDrawing) -> bool:
    """Weak x- and y-monotonicity per polyline plus the crossing scan."""
    paths = _resolved_paths(inst, drawing)
    if paths is None:
        return False
    for path in paths:
        for axis in (0, 1):
            steps = {sign(q[axis] - p[axis]) for p, q in zip(path, path[1:])}
            if 1 in steps and -1 in steps:
                return False
    return _contacts_ok(paths)


# -- constructive drawings (axis directions) ------------------------------


def _straighten(bends: Sequence[Point]) -> Tuple[Point, ...]:
    """Drop repeated points and merge runs that keep one direction."""
    pts: List[Point] = []
    for p in bends:
        if pts and p == pts[-1]:
            continue
        while len(pts) >= 2:
            d1 = primitive_direction((pts[-1][0] - pts[-2][0], pts[-1][1] - pts[-2][1]))
            d2 = primitive_direction((p[0] - pts[-1][0], p[1] - pts[-1][1]))
            if d1 != d2:
                break
            pts.pop()
        pts.append(p)
    return tuple(pts)


def _place_run(run: Sequence[Edge], lo: Scalar, hi: Scalar, level: int,
               out: Dict[Tuple[Edge, int], Scalar]) -> None:
    for j, e in enumerate(run):
        out[(e, level)] = lo + Fraction(j + 1, len(run) + 1) * (hi - lo)


def build_rectilinear_drawing(graph: OrderedLevelGraph,
                              witness: EmbeddingWitness,
                              directions=AXES) -> GeodesicDrawing:
    """Staircase polylines realizing the axis-direction matching.

    Every level crossing gets a column: gadget columns sit inside the
    squares, pass-through columns in the witness-ordered gaps between
    them.  Each strip then assigns one horizontal track per edge,
    highest track to the leftmost edge, so the staircases nest instead
    of crossing.  When the witness order above or below a shared square
    disagrees with the gadget point order, the outer edge detours
    around the inner one just inside the square (the reflected
    routing).  Blocking edges descend, cross their square at its centre
    line and descend again.
    """
    if direction_set(directions) != AXES:
        raise PreconditionError("constructive drawings support the axis directions only")
    _require_narrow(graph)
    if not witness_check(graph, witness):
        raise PreconditionError("witness is not realizable")
    ranks = _incident_ranks(graph)
    centers: Dict[str, Point] = {
        v.id: (v.pos + 3 * v.level, v.level) for v in graph.vertices}
    halves: Dict[str, Fraction] = {v.id: _HALF[v.pos] for v in graph.vertices}
    idx: List[Dict[object, int]] = [
        {obj: i for i, obj in enumerate(cs.objects)} for cs in witness.levels]

    # columns where each edge crosses each level
    col_at: Dict[Tuple[Edge, int], Scalar] = {}
    for cs in witness.levels:
        lvl = cs.level
        run: List[Edge] = []
        left: Scalar = 3 * lvl - 1
        for obj in cs.objects:
            if isinstance(obj, str):
                cx, h = centers[obj][0], halves[obj]
                _place_run(run, left, cx - h, lvl, col_at)
                run, left = [], cx + h
            else:
                run.append(obj)
        _place_run(run, left, 3 * lvl + 2, lvl, col_at)

    ups: Dict[str, List[Edge]] = {v.id: [] for v in graph.vertices}
    downs: Dict[str, List[Edge]] = {v.id: [] for v in graph.vertices}
    for e in graph.edges:
        ups[e[0]].append(e)
        downs[e[1]].append(e)

    start_bend: Dict[Edge, List[Point]] = {}
    end_bend: Dict[Edge, List[Point]] = {}
    for v in graph.vertices:
        cx, cy = centers[v.id]
        h, lvl = halves[v.id], v.level

        out_edges = ups[v.id]
        pts = {e: _gadget_point((cx, cy), h, ranks[v.id][e], True)
               for e in out_edges}
        if len(out_edges) == 2:
            def top_key(e: Edge) -> int:
                obj = e[1] if graph.level_of(e[1]) == lvl + 1 else e
                return idx[lvl + 1][obj]
            left_e, right_e = sorted(out_edges, key=top_key)
            if pts[left_e][0] > pts[right_e][0]:
                # reflected: the witness-right edge ducks below the
                # other point and climbs just inside the corner
                detour = cx + h - Fraction(1, 96)
                start_bend[right_e] = [pts[right_e], (detour, pts[right_e][1])]
                col_at[(right_e, lvl)] = detour
                start_bend[left_e] = [pts[left_e]]
                col_at[(left_e, lvl)] = pts[left_e][0]
            else:
                for e in out_edges:
                    start_bend[e] = [pts[e]]
                    col_at[(e, lvl)] = pts[e][0]
        elif out_edges:
            e = out_edges[0]
            start_bend[e] = [pts[e]]
            col_at[(e, lvl)] = pts[e][0]

        in_edges = downs[v.id]
        pts = {e: _gadget_point((cx, cy), h, ranks[v.id][e], False)
               for e in in_edges}
        if len(in_edges) == 2:
            def bottom_key(e: Edge) -> int:
                obj = e[0] if graph.level_of(e[0]) == lvl - 1 else e
                return idx[lvl - 1][obj]
            left_e, right_e = sorted(in_edges, key=bottom_key)
            if pts[left_e][0] > pts[right_e][0]:
                detour = cx - h + Fraction(1, 96)
                end_bend[left_e] = [(detour, pts[left_e][1]), pts[left_e]]
                col_at[(left_e, lvl)] = detour
                end_bend[right_e] = [pts[right_e]]
                col_at[(right_e, lvl)] = pts[right_e][0]
            else:
                for e in in_edges:
                    end_bend[e] = [pts[e]]
                    col_at[(e, lvl)] = pts[e][0]
        elif in_edges:
            e = in_edges[0]
            end_bend[e] = [pts[e]]
            col_at[(e, lvl)] = pts[e][0]

    # one horizontal track per strip edge, leftmost column on top, all
    # inside the band the squares cannot reach
    tracks: Dict[Tuple[Edge, int], Fraction] = {}
    for s in range(graph.height):
        strip = sorted(graph.strip_edges(s), key=lambda e: col_at[(e, s)])
        n = len(strip)
        for r, e in enumerate(strip):
            tracks[(e, s)] = s + Fraction(1, 8) + Fraction(3, 4) * Fraction(n - r, n + 1)

    paths: Dict[Edge, Tuple[Point, ...]] = {}
    for v in graph.vertices:
        cx, cy = centers[v.id]
        h = halves[v.id]
        paths[(f"{v.id}@tl", f"{v.id}@br")] = (
            (cx - h, cy + h), (cx - h, cy), (cx + h, cy), (cx + h, cy - h))
    for e in graph.edges:
        u, w = e
        bends: List[Point] = list(start_bend[e])
        for s in range(graph.level_of(u), graph.level_of(w)):
            t = tracks[(e, s)]
            bends.append((col_at[(e, s)], t))
            bends.append((col_at[(e, s + 1)], t))
        bends.extend(end_bend[e])
        paths[(f"{u}@{ranks[u][e]}", f"{w}@{ranks[w][e]}")] = _straighten(bends)
    return GeodesicDrawing(paths)
