"""Reductions from narrow ordered level instances to tree-constrained
and cluster-constrained level layouts.

Both targets drop the per-level position function and replace it with
a weaker device.  The tree target attaches, to every level, a tree
whose leaves are exactly that level's vertices; a drawing is accepted
when it is level planar and each internal node's leaves appear
consecutively along their level line.  The cluster target groups all
vertices into named clusters drawn as simple polygonal regions that
must be pairwise disjoint, contain exactly their members, meet every
level line in at most one segment, and be crossed at most once by any
edge.

Inputs must have level width at most 2 and maximum degree at most 2.
The tree reduction is linear and keeps the level structure; the
cluster reduction subdivides every edge twice per level line it
crosses, parking the subdivision vertices on new singleton levels, so
an edge spanning levels i..j becomes a path of 2*(j-i)+1 edges.

Besides the reductions and verifiers there are drawing constructors:
given a realizable witness for the source instance they emit a
concrete drawing of the target that the matching verifier accepts.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, FrozenSet, Iterator, List, NamedTuple, Optional, Set, Tuple, Union

from .core import (
    CrossingSet,
    Edge,
    EmbeddingWitness,
    OrderedLevelGraph,
    PolylineDrawing,
    PreconditionError,
    Vertex,
    validate_olg,
    verify_drawing_geometric,
    witness_check,
    witness_to_drawing,
)
from .geom import Point, Scalar, point_in_polygon, segment_intersection, sign

# A tree is a leaf (vertex id) or a tuple of subtrees.  Children are
# unordered; only the leaf sets of internal nodes carry meaning.
Tree = Union[str, tuple]

CLUSTER_ROOT = "root"
CLUSTER_LOW = "c0"
CLUSTER_HIGH = "c1"


class TLevelInstance(NamedTuple):
    """Level graph plus one tree per level, leaves = that level."""

    graph: OrderedLevelGraph
    trees: Tuple[Tree, ...]


class ClusteredInstance(NamedTuple):
    """Level graph plus named vertex clusters (a flat hierarchy under
    a root cluster holding every vertex)."""

    graph: OrderedLevelGraph
    clusters: Dict[str, FrozenSet[str]]


class TargetDrawing(NamedTuple):
    """Polyline drawing, plus one simple polygon per cluster when the
    target has clusters."""

    drawing: PolylineDrawing
    regions: Optional[Dict[str, Tuple[Point, ...]]] = None


class MalformedDrawingError(ValueError):
    """A target drawing is structurally unusable, e.g. a cluster
    region that is not a simple polygon."""


def _require_narrow(graph: OrderedLevelGraph) -> None:
    report = validate_olg(graph)
    if not report.ok:
        raise PreconditionError("invalid instance: " + "; ".join(report.issues))
    if graph.max_width() > 2:
        raise PreconditionError("reduction requires level width at most 2")
    if graph.max_degree() > 2:
        raise PreconditionError("reduction requires maximum degree at most 2")


def _fresh(used: Set[str], stem: str) -> str:
    name = stem
    while name in used:
        name = "_" + name
    used.add(name)
    return name


def _pad_width_one(graph: OrderedLevelGraph) -> Tuple[OrderedLevelGraph, Tuple[str, ...]]:
    """Give every width-1 level a second, isolated vertex at position 1."""
    used = {v.id for v in graph.vertices}
    vertices = list(graph.vertices)
    added: List[str] = []
    for lvl in range(graph.num_levels):
        if graph.width(lvl) == 1:
            vid = _fresh(used, f"fill{lvl}")
            vertices.append(Vertex(vid, lvl, 1))
            added.append(vid)
    return OrderedLevelGraph(vertices, graph.edges), tuple(added)


def _pad_witness(padded: OrderedLevelGraph, witness: EmbeddingWitness,
                 added: Tuple[str, ...]) -> EmbeddingWitness:
    # An isolated vertex appended at the right end of its level leaves
    # every strip scan unchanged, so realizability carries over.
    added_at = {padded.level_of(vid): vid for vid in added}
    levels = []
    for cs in witness.levels:
        objs = cs.objects
        if cs.level in added_at:
            objs = objs + (added_at[cs.level],)
        levels.append(CrossingSet(cs.level, objs))
    return EmbeddingWitness(tuple(levels))


# ---------------------------------------------------------------------------
# tree-constrained target


def tree_leaves(tree: Tree) -> Tuple[str, ...]:
    """Leaf ids of a tree in an arbitrary but fixed order."""
    if isinstance(tree, str):
        return (tree,)
    out: List[str] = []
    for child in tree:
        out.extend(tree_leaves(child))
    return tuple(out)


def _internal_nodes(tree: Tree) -> Iterator[tuple]:
    if isinstance(tree, str):
        return
    yield tree
    for child in tree:
        yield from _internal_nodes(child)


def reduce_olp_to_tlevel(graph: OrderedLevelGraph) -> TLevelInstance:
    """Rewrite position constraints as per-level trees.

    Every level is padded to width 2, then framed by a left and a right
    rail vertex; consecutive rails are joined into two paths.  The
    level's tree has two internal nodes: {left rail, position-0 vertex}
    and {position-1 vertex, right rail}.  Forcing each pair consecutive
    (with the rail paths drawable, hence on the outside) pins the two
    original vertices into their relative order.  Output has width 4 on
    every level and maximum degree 2; size grows linearly.
    """
    _require_narrow(graph)
    padded, _ = _pad_width_one(graph)
    used = {v.id for v in padded.vertices}
    vertices: List[Vertex] = []
    trees: List[Tree] = []
    left: List[str] = []
    right: List[str] = []
    for lvl in range(padded.num_levels):
        lo, hi = padded.level_ids(lvl)
        lid = _fresh(used, f"lrail{lvl}")
        rid = _fresh(used, f"rrail{lvl}")
        left.append(lid)
        right.append(rid)
        vertices.append(Vertex(lid, lvl, 0))
        vertices.append(Vertex(lo, lvl, 1))
        vertices.append(Vertex(hi, lvl, 2))
        vertices.append(Vertex(rid, lvl, 3))
        trees.append(((lid, lo), (hi, rid)))
    edges = list(graph.edges)
    edges.extend(zip(left, left[1:]))
    edges.extend(zip(right, right[1:]))
    return TLevelInstance(OrderedLevelGraph(vertices, edges), tuple(trees))


def verify_tlevel_drawing(inst: TLevelInstance, target: TargetDrawing) -> bool:
    """Level planarity plus consecutivity of every internal node."""
    graph, trees = inst
    if len(trees) != graph.num_levels:
        return False
    for lvl, tree in enumerate(trees):
        ids = graph.level_ids(lvl)
        leaves = tree_leaves(tree)
        if len(leaves) != len(ids) or set(leaves) != set(ids):
            return False
    if not verify_drawing_geometric(graph, target.drawing,
                                    require_positions=False):
        return False
    for lvl, tree in enumerate(trees):
        order = sorted(graph.level_ids(lvl),
                       key=lambda vid: target.drawing.points[vid][0])
        rank = {vid: i for i, vid in enumerate(order)}
        for node in _internal_nodes(tree):
            ranks = sorted(rank[leaf] for leaf in tree_leaves(node))
            if ranks and ranks[-1] - ranks[0] != len(ranks) - 1:
                return False
    return True


def augment_drawing_tlevel(graph: OrderedLevelGraph,
                           witness: EmbeddingWitness) -> TargetDrawing:
    """Drawing of the tree target from a realizable source witness.

    The witness drawing is framed by the rail paths: the left path one
    unit left of everything, the right path one unit right.  Each tree
    node {rail, vertex} is then consecutive along its level line.
    """
    _require_narrow(graph)
    if not witness_check(graph, witness):
        raise PreconditionError("witness is not realizable")
    inst = reduce_olp_to_tlevel(graph)
    padded, added = _pad_width_one(graph)
    base = witness_to_drawing(padded, _pad_witness(padded, witness, added))
    xs: List[Scalar] = [p[0] for p in base.points.values()]
    for path in base.paths.values():
        xs.extend(p[0] for p in path)
    lo_x = (min(xs) if xs else 0) - 1
    hi_x = (max(xs) if xs else 0) + 1
    points = dict(base.points)
    paths = dict(base.paths)
    for v in inst.graph.vertices:
        if v.id not in points:
            points[v.id] = (lo_x if v.pos == 0 else hi_x, v.level)
    for e in inst.graph.edges:
        if e not in paths:
            paths[e] = (points[e[0]], points[e[1]])
    return TargetDrawing(PolylineDrawing(points, paths), None)


# ---------------------------------------------------------------------------
# cluster-constrained target


def reduce_olp_to_clustered(graph: OrderedLevelGraph
                            ) -> Tuple[ClusteredInstance, Dict[Edge, Tuple[str, ...]]]:
    """Rewrite position constraints as two clusters.

    After padding to width 2, cluster c0 takes every position-0 vertex
    and c1 every position-1 vertex; a root cluster holds everything.
    Membership must survive edges that cross levels, so every edge is
    subdivided twice per crossed line: between consecutive original
    levels i and i+1 each crossing edge gets a c1 vertex and, above it,
    a c0 vertex, each alone on a brand-new level.  An edge from level i
    to level j becomes a path of 2*(j-i)+1 edges.  Returns the instance
    and the full subdivision chain per original edge (endpoints
    included).  Output has width at most 2, maximum degree 2, and 3
    clusters; size is at most quadratic in the input.
    """
    _require_narrow(graph)
    padded, _ = _pad_width_one(graph)
    used = {v.id for v in padded.vertices}
    n_gaps = max(padded.num_levels - 1, 0)
    crossing: List[List[Edge]] = [[] for _ in range(n_gaps)]
    for u, v in padded.edges:
        for i in range(padded.level_of(u), padded.level_of(v)):
            crossing[i].append((u, v))
    chains: Dict[Edge, List[str]] = {e: [e[0]] for e in padded.edges}
    vertices: List[Vertex] = []
    low: List[str] = []
    high: List[str] = []
    next_level = 0
    for i in range(padded.num_levels):
        ids = padded.level_ids(i)
        for pos, vid in enumerate(ids):
            vertices.append(Vertex(vid, next_level, pos))
        low.append(ids[0])
        high.append(ids[1])
        next_level += 1
        if i >= n_gaps:
            continue
        for u, v in crossing[i]:
            svid = _fresh(used, f"{u}.{v}.gap{i}.lo")
            vertices.append(Vertex(svid, next_level, 0))
            chains[(u, v)].append(svid)
            high.append(svid)
            next_level += 1
        for u, v in crossing[i]:
            svid = _fresh(used, f"{u}.{v}.gap{i}.hi")
            vertices.append(Vertex(svid, next_level, 0))
            chains[(u, v)].append(svid)
            low.append(svid)
            next_level += 1
    edges: List[Edge] = []
    submap: Dict[Edge, Tuple[str, ...]] = {}
    for e in padded.edges:
        chain = chains[e] + [e[1]]
        submap[e] = tuple(chain)
        edges.extend(zip(chain, chain[1:]))
    out = OrderedLevelGraph(vertices, edges)
    clusters = {
        CLUSTER_ROOT: frozenset(v.id for v in out.vertices),
        CLUSTER_LOW: frozenset(low),
        CLUSTER_HIGH: frozenset(high),
    }
    return ClusteredInstance(out, clusters), submap


def _require_simple_polygon(poly: Tuple[Point, ...]) -> None:
    n = len(poly)
    if n < 3:
        raise MalformedDrawingError("region needs at least 3 corners")
    for i in range(n):
        if poly[i] == poly[(i + 1) % n]:
            raise MalformedDrawingError("region has a zero-length side")
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        for j in range(i + 1, n):
            c, d = poly[j], poly[(j + 1) % n]
            kind, pt = segment_intersection(a, b, c, d)
            adjacent = j == i + 1 or (i == 0 and j == n - 1)
            if adjacent:
                if kind != "point" or pt not in (a, b):
                    raise MalformedDrawingError("region sides overlap")
            elif kind != "none":
                raise MalformedDrawingError("region boundary self-intersects")


def _line_crossing_count(poly: Tuple[Point, ...], y: int) -> Optional[int]:
    """Transversal crossings of a horizontal line by a simple polygon.

    None flags degenerate contact: a side lying on the line, or a
    corner touching it without passing through.  Otherwise crossings
    come in pairs and the region meets the line in count/2 segments.
    """
    n = len(poly)
    count = 0
    for i in range(n):
        ax, ay = poly[i]
        bx, by = poly[(i + 1) % n]
        if ay == y and by == y:
            return None
        if ay == y:
            py = poly[i - 1][1]
            if sign(py - y) == sign(by - y):
                return None
        if (ay > y) != (by > y):
            count += 1
    return count


def verify_clustered_drawing(inst: ClusteredInstance,
                             target: TargetDrawing) -> bool:
    """Level planarity plus the four cluster conditions.

    Regions must be simple polygons (else MalformedDrawingError), one
    per cluster.  Exact tests: every member inside its region and every
    non-member outside; region boundaries pairwise disjoint; every edge
    path crossing each boundary at most once, with no tangential
    contact; every region meeting every level line in at most one
    segment, counted transversally.
    """
    graph = inst.graph
    regions = target.regions if target.regions is not None else {}
    if set(regions) != set(inst.clusters):
        return False
    for poly in regions.values():
        _require_simple_polygon(poly)
    if not verify_drawing_geometric(graph, target.drawing,
                                    require_positions=False):
        return False
    for name, members in inst.clusters.items():
        poly = regions[name]
        for v in graph.vertices:
            inside = point_in_polygon(target.drawing.points[v.id], poly)
            if inside is not (v.id in members):
                return False
    names = sorted(regions)
    for i, na in enumerate(names):
        pa = regions[na]
        for nb in names[i + 1:]:
            pb = regions[nb]
            for k in range(len(pa)):
                for m in range(len(pb)):
                    kind, _ = segment_intersection(
                        pa[k], pa[(k + 1) % len(pa)],
                        pb[m], pb[(m + 1) % len(pb)])
                    if kind != "none":
                        return False
    for path in target.drawing.paths.values():
        for poly in regions.values():
            crossings = 0
            for s in range(len(path) - 1):
                for k in range(len(poly)):
                    kind, _ = segment_intersection(
                        path[s], path[s + 1],
                        poly[k], poly[(k + 1) % len(poly)])
                    if kind == "cross":
                        crossings += 1
                    elif kind != "none":
                        return False
            if crossings > 1:
                return False
    for poly in regions.values():
        for lvl in range(graph.num_levels):
            count = _line_crossing_count(poly, lvl)
            if count is None or count not in (0, 2):
                return False
    return True


def _subdivided_witness(padded: OrderedLevelGraph, wp: EmbeddingWitness,
                        inst: ClusteredInstance,
                        submap: Dict[Edge, Tuple[str, ...]]) -> EmbeddingWitness:
    """Witness for the subdivided graph induced by a padded witness.

    Original lines keep their object order, with each crossing edge
    replaced by the chain piece that crosses the line.  On the new
    singleton lines inside gap i, objects are ordered by the geometric
    left-to-right order of the original curves at mid-strip height,
    which any drawing of wp forces up to ties at shared anchors; ties
    cannot occur between edges alive across a whole strip.
    """
    gs = inst.graph
    base = witness_to_drawing(padded, wp)
    owner: Dict[Edge, Edge] = {}
    vowner: Dict[str, Edge] = {}
    for e, chain in submap.items():
        for piece in zip(chain, chain[1:]):
            owner[piece] = e
        for vid in chain[1:-1]:
            vowner[vid] = e
    rank: List[Dict[Edge, int]] = []
    for i in range(max(padded.num_levels - 1, 0)):
        mids: List[Tuple[Scalar, Edge]] = []
        for e in padded.edges:
            a, b = padded.level_of(e[0]), padded.level_of(e[1])
            if a <= i < b:
                pts = base.paths[e]
                mids.append((pts[i - a][0] + pts[i + 1 - a][0], e))
        mids.sort()
        rank.append({e: j for j, (_, e) in enumerate(mids)})
    levels: List[CrossingSet] = []
    orig_i = -1
    for lvl in range(gs.num_levels):
        ids = gs.level_ids(lvl)
        passes = gs.pass_throughs(lvl)
        if len(ids) == 2:
            orig_i += 1
            objs: List[object] = []
            for obj in wp.levels[orig_i].objects:
                if isinstance(obj, str):
                    objs.append(obj)
                else:
                    chain = submap[obj]
                    k = 2 * (orig_i - padded.level_of(obj[0]))
                    objs.append((chain[k], chain[k + 1]))
            levels.append(CrossingSet(lvl, tuple(objs)))
        else:
            r = rank[orig_i]
            items: List[Tuple[int, object]] = [(r[vowner[ids[0]]], ids[0])]
            items.extend((r[owner[p]], p) for p in passes)
            items.sort(key=lambda t: t[0])
            levels.append(CrossingSet(lvl, tuple(obj for _, obj in items)))
    return EmbeddingWitness(tuple(levels))


def _level_stations(gs: OrderedLevelGraph,
                    drawing: PolylineDrawing) -> List[Dict[object, Scalar]]:
    """Per level: x coordinate of every vertex and pass-through edge."""
    out: List[Dict[object, Scalar]] = []
    for lvl in range(gs.num_levels):
        xs: Dict[object, Scalar] = {}
        for vid in gs.level_ids(lvl):
            xs[vid] = drawing.points[vid][0]
        for e in gs.pass_throughs(lvl):
            xs[e] = drawing.paths[e][lvl - gs.level_of(e[0])][0]
        out.append(xs)
    return out


def _cut_positions(inst: ClusteredInstance,
                   drawing: PolylineDrawing) -> List[Tuple[Scalar, Scalar]]:
    """Two x positions per level line splitting c0 from c1 material.

    Each edge of the subdivided graph is assigned a side per line it
    meets: vertices are pinned by their cluster, a pass-through starts
    on its lower endpoint's side and may swap exactly once, when forced
    past pinned or already-swapped material.  Both cuts land in the gap
    between the final L block and R block, so an edge segment crosses
    the cut polylines exactly when its endpoints' sides differ: same-
    cluster pieces never cross, mixed pieces cross exactly once.
    """
    gs = inst.graph
    low = inst.clusters[CLUSTER_LOW]
    state: Dict[Edge, str] = {}
    stations = _level_stations(gs, drawing)
    cuts: List[Tuple[Scalar, Scalar]] = []

    def vside(vid: str) -> str:
        return "L" if vid in low else "R"

    for lvl in range(gs.num_levels):
        entries: List[Tuple[Scalar, Optional[Edge], str, bool]] = []
        for vid in gs.level_ids(lvl):
            entries.append((stations[lvl][vid], None, vside(vid), True))
        for e in gs.pass_throughs(lvl):
            if e not in state:
                state[e] = vside(e[0])
            lock = vside(e[0]) == vside(e[1]) or state[e] == vside(e[1])
            entries.append((stations[lvl][e], e, state[e], lock))
        entries.sort(key=lambda t: t[0])
        xs = [t[0] for t in entries]
        entry_side = [t[2] for t in entries]
        entry_lock = [t[3] for t in entries]
        changed = True
        while changed:
            changed = False
            r_min = min((xs[i] for i in range(len(entries))
                         if entry_side[i] == "R" and entry_lock[i]),
                        default=None)
            l_max = max((xs[i] for i in range(len(entries))
                         if entry_side[i] == "L" and entry_lock[i]),
                        default=None)
            for i, (x, e, _, _) in enumerate(entries):
                if e is None or entry_lock[i]:
                    continue
                if entry_side[i] == "L" and r_min is not None and x > r_min:
                    entry_side[i] = "R"
                    state[e] = "R"
                    entry_lock[i] = True
                    changed = True
                elif entry_side[i] == "R" and l_max is not None and x < l_max:
                    entry_side[i] = "L"
                    state[e] = "L"
                    entry_lock[i] = True
                    changed = True
        k = entry_side.count("L")
        if entry_side != ["L"] * k + ["R"] * (len(entries) - k):
            raise RuntimeError("cluster cut ordering failed")
        if not xs:
            lo_x, hi_x = Fraction(0), Fraction(1)
        elif k == 0:
            lo_x, hi_x = xs[0] - 2, xs[0]
        elif k == len(xs):
            lo_x, hi_x = xs[-1], xs[-1] + 2
        else:
            lo_x, hi_x = xs[k - 1], xs[k]
        span = hi_x - lo_x
        cuts.append((lo_x + span * Fraction(2, 5),
                     lo_x + span * Fraction(3, 5)))
    return cuts


def _simplify_ring(pts: List[Point]) -> Tuple[Point, ...]:
    out = [p for i, p in enumerate(pts) if p != pts[i - 1]]
    changed = True
    while changed and len(out) > 3:
        changed = False
        for i in range(len(out)):
            a = out[i - 1]
            b = out[i]
            c = out[(i + 1) % len(out)]
            if sign((b[0] - a[0]) * (c[1] - a[1])
                    - (b[1] - a[1]) * (c[0] - a[0])) == 0:
                out.pop(i)
                changed = True
                break
    return tuple(out)


def _wall_polygon(cut_xs: List[Scalar], wall_x: Scalar,
                  height: int) -> Tuple[Point, ...]:
    half = Fraction(1, 2)
    pts: List[Point] = [(wall_x, -half), (cut_xs[0], -half)]
    pts.extend((x, lvl) for lvl, x in enumerate(cut_xs))
    pts.append((cut_xs[-1], height + half))
    pts.append((wall_x, height + half))
    return _simplify_ring(pts)


def augment_drawing_clustered(graph: OrderedLevelGraph,
                              witness: EmbeddingWitness) -> TargetDrawing:
    """Drawing of the cluster target from a realizable source witness.

    The subdivided graph inherits the witness (original lines keep
    their order, new singleton lines take the geometric mid-strip
    order), is drawn on the grid, and the two non-root regions are
    carved out by cut polylines through per-line gaps found by the side
    assignment of _cut_positions; the root region is a bounding box.
    """
    _require_narrow(graph)
    if not witness_check(graph, witness):
        raise PreconditionError("witness is not realizable")
    inst, submap = reduce_olp_to_clustered(graph)
    gs = inst.graph
    if not gs.vertices:
        regions = {
            CLUSTER_ROOT: ((-10, -10), (10, -10), (10, 10), (-10, 10)),
            CLUSTER_LOW: ((0, 0), (1, 0), (1, 1), (0, 1)),
            CLUSTER_HIGH: ((3, 0), (4, 0), (4, 1), (3, 1)),
        }
        return TargetDrawing(PolylineDrawing({}, {}), regions)
    padded, added = _pad_width_one(graph)
    wp = _pad_witness(padded, witness, added)
    ws = _subdivided_witness(padded, wp, inst, submap)
    if not witness_check(gs, ws):
        raise RuntimeError("subdivided witness is not realizable")
    drawing = witness_to_drawing(gs, ws)
    cuts = _cut_positions(inst, drawing)
    xs: List[Scalar] = [p[0] for p in drawing.points.values()]
    for path in drawing.paths.values():
        xs.extend(p[0] for p in path)
    xs.extend(x for pair in cuts for x in pair)
    x_left = min(xs) - 2
    x_right = max(xs) + 2
    h = gs.height
    regions = {
        CLUSTER_LOW: _wall_polygon([c for c, _ in cuts], x_left, h),
        CLUSTER_HIGH: _wall_polygon([c for _, c in cuts], x_right, h),
        CLUSTER_ROOT: ((x_left - 1, -1), (x_right + 1, -1),
                       (x_right + 1, h + 1), (x_left - 1, h + 1)),
    }
    return TargetDrawing(drawing, regions)
