"""Hardness gadget: planar monotone 3-SAT layouts as level graphs.

The input is a rectilinear formula layout: variables are disjoint
horizontal segments on the x axis, clauses are horizontal spines above
(all-positive) or below (all-negated) the axis with up to three
vertical legs touching the segments of the variables they mention.

`reduce_pm3sat_to_olp` turns such a layout into an ordered level graph
that is feasible iff the formula is satisfiable, plus a `GadgetIndex`
locating every construction vertex.  The construction works in three
stages, stacked bottom to top:

* clause tiers (below the axis): both clause sides are folded onto
  negative levels; each clause becomes a fixed spine-and-tent gadget
  whose single rising "rider" edge must thread one of three gate pairs
  on the axis, one per literal.
* variable tiers (one block of four levels per variable): a "long"
  edge and a short "blocking" edge leave a shared source; the side the
  blocking edge takes encodes the truth value and seals the escape
  route of riders for falsified literals.  Four "tunnel" paths per
  variable keep the copies of its segment endpoints aligned until the
  variable's own block, where they release.
* collection tiers (top): per-variable wall pairs converge so that
  every long edge and every rider is forced to commit to a side before
  the instance closes.

`assignment_to_witness` maps a satisfying assignment to an explicit
per-level order certificate for the reduced graph.  `width2_transform`
post-processes any max-degree-2 instance so that no level holds more
than two vertices, preserving feasibility.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .core import (
    CrossingSet,
    Edge,
    EmbeddingWitness,
    OrderedLevelGraph,
    PreconditionError,
    ValidationReport,
    Vertex,
    normalize_real_coordinates,
)
from .geom import Scalar


class ClauseShape(NamedTuple):
    """Horizontal clause spine at height y (sign = polarity) with legs
    at the given x coordinates, each touching a variable segment."""

    y: int
    legs: Tuple[int, ...]


class Pm3SatInstance(NamedTuple):
    """Variable segments (lo, hi) on the axis, in left-to-right order,
    plus the clause shapes."""

    variables: Tuple[Tuple[int, int], ...]
    clauses: Tuple[ClauseShape, ...]


def validate_representation(inst: Pm3SatInstance) -> ValidationReport:
    issues: List[str] = []
    prev_hi = None
    for j, (lo, hi) in enumerate(inst.variables):
        if lo >= hi:
            issues.append(f"variable {j} segment [{lo}, {hi}] is empty")
        if prev_hi is not None and lo <= prev_hi:
            issues.append(f"variable {j} overlaps or precedes variable {j - 1}")
        prev_hi = hi

    def segment_of(x: int) -> Optional[int]:
        for j, (lo, hi) in enumerate(inst.variables):
            if lo < x < hi:
                return j
        return None

    for i, clause in enumerate(inst.clauses):
        if clause.y == 0:
            issues.append(f"clause {i} sits on the axis")
        if not 1 <= len(clause.legs) <= 3:
            issues.append(f"clause {i} has {len(clause.legs)} legs")
        if list(clause.legs) != sorted(set(clause.legs)):
            issues.append(f"clause {i} legs are not strictly increasing")
        for x in clause.legs:
            if segment_of(x) is None:
                issues.append(f"clause {i} leg at x={x} misses every segment")

    for side in (1, -1):
        group = [(abs(c.y), i, c) for i, c in enumerate(inst.clauses)
                 if (c.y > 0) == (side > 0)]
        heights = [h for h, _, _ in group]
        if len(set(heights)) != len(heights):
            issues.append("two same-side clauses share a spine height")
        group.sort()
        for a in range(len(group)):
            _, ia, near = group[a]
            if not near.legs:
                continue
            lo, hi = min(near.legs), max(near.legs)
            for b in range(a + 1, len(group)):
                _, ib, far = group[b]
                for x in far.legs:
                    if lo <= x <= hi:
                        issues.append(
                            f"clause {ib} leg at x={x} is trapped under clause {ia}")
    return ValidationReport(not issues, tuple(issues))


def clause_literals(inst: Pm3SatInstance) -> Tuple[Tuple[Tuple[int, bool], ...], ...]:
    """Per clause, the (variable index, is_positive) literal of each leg."""
    out = []
    for i, clause in enumerate(inst.clauses):
        lits = []
        for x in clause.legs:
            for j, (lo, hi) in enumerate(inst.variables):
                if lo < x < hi:
                    lits.append((j, clause.y > 0))
                    break
            else:
                raise PreconditionError(f"clause {i} leg at x={x} misses every segment")
        out.append(tuple(lits))
    return tuple(out)


def _satisfies(inst: Pm3SatInstance, literals, assignment: Sequence[bool]) -> bool:
    return all(any(assignment[var] == positive for var, positive in lits)
               for lits in literals)


def sat_brute_force(inst: Pm3SatInstance) -> Optional[Tuple[bool, ...]]:
    """First satisfying assignment in lexicographic (False < True) order."""
    literals = clause_literals(inst)
    for assignment in product((False, True), repeat=len(inst.variables)):
        if _satisfies(inst, literals, assignment):
            return assignment
    return None


# -- construction -------------------------------------------------------------


TUNNEL_KINDS = ("pos_left", "pos_right", "neg_left", "neg_right")


class MergedClause(NamedTuple):
    """One clause after folding: spine height (negative), three legs as
    (axis x, variable index) pairs in ascending x order."""

    index: int
    positive: bool
    spine_y: int
    legs: Tuple[Tuple[int, int], ...]


class MergedRepresentation(NamedTuple):
    """Both clause sides folded below the axis onto one rescaled grid.

    Positive clauses keep their x coordinates (times `scale`); negated
    clauses are reflected to `mirror - scale * x`, so each variable owns
    two disjoint segment copies.  `anchors` gives, per variable, the
    axis x of each tunnel lane (segment-endpoint copy)."""

    scale: int
    mirror: int
    clauses: Tuple[MergedClause, ...]
    anchors: Tuple[Dict[str, int], ...]


class GadgetPiece(NamedTuple):
    """Raw construction fragment: vertex id -> (x, y) plus edges.
    Coordinates are pre-compression; `reduce_pm3sat_to_olp` merges the
    pieces and collapses occupied y rows into consecutive levels."""

    points: Dict[str, Tuple[Scalar, int]]
    edges: Tuple[Edge, ...]


@dataclass(frozen=True)
class GadgetIndex:
    """Directory of the reduction's named vertices.

    `tier_bounds` = (axis, vars_top, riders_top, top): the level of the
    gate/anchor axis; the last level of the variable blocks (axis +
    4 * #variables); the last rider-sink level (vars_top + #clauses);
    and the topmost level (riders_top + 2 * #variables).  The rider
    sink of clause i sits on level vars_top + i + 1; wall-top/sink
    pairs fill the levels above riders_top, innermost variable highest.

    The remaining fields map construction roles to vertex ids, per
    clause (keys like "src", "gate2.left"), per variable (keys like
    "wall_left.base", "apex"), and per variable tunnel lane (bottom-up
    vertex chains keyed by lane kind)."""

    instance: Pm3SatInstance
    tier_bounds: Tuple[int, int, int, int]
    clause_vertices: Tuple[Dict[str, str], ...]
    variable_vertices: Tuple[Dict[str, str], ...]
    tunnels: Tuple[Dict[str, Tuple[str, ...]], ...]


@dataclass
class _Reduction:
    inst: Pm3SatInstance
    n: int
    rep: MergedRepresentation
    wall_a: List[int]
    wall_b: List[int]
    mid: Fraction
    points: Dict[str, Tuple[Scalar, int]]
    edges: List[Edge]
    graph: OrderedLevelGraph
    index: GadgetIndex


def build_merged_representation(inst: Pm3SatInstance) -> MergedRepresentation:
    """Fold both clause sides below the axis.

    Heights are tripled so spine and tent rows of different clauses
    never collide; negated clauses are mirrored to the right half so
    every literal reads off a dedicated copy of its variable segment.
    Clauses with fewer than three legs repeat their rightmost literal
    on fresh lanes next to it, which needs the finer scale.
    """
    report = validate_representation(inst)
    if not report.ok:
        raise PreconditionError("invalid layout: " + "; ".join(report.issues))
    scale = 9 if any(len(c.legs) < 3 for c in inst.clauses) else 3
    hi_max = inst.variables[-1][1] if inst.variables else 0
    mirror = scale * (2 * hi_max + 4)

    literals = clause_literals(inst)
    merged = []
    for i, clause in enumerate(inst.clauses):
        positive = clause.y > 0
        legs = []
        for x, (var, _) in zip(clause.legs, literals[i]):
            legs.append(((scale * x) if positive else (mirror - scale * x), var))
        legs.sort()
        host_x, host_var = legs[-1]
        while len(legs) < 3:
            host_x += 3
            legs.append((host_x, host_var))
        legs.sort()
        merged.append(MergedClause(i, positive, -3 * abs(clause.y), tuple(legs)))

    anchors = []
    for lo, hi in inst.variables:
        anchors.append({
            "pos_left": scale * lo,
            "pos_right": scale * hi,
            "neg_left": mirror - scale * hi,
            "neg_right": mirror - scale * lo,
        })
    return MergedRepresentation(scale, mirror, tuple(merged), tuple(anchors))


class _Frame(NamedTuple):
    wall_a: Tuple[int, ...]
    wall_b: Tuple[int, ...]
    mid: Fraction
    top_base: int  # collection tiers start above the rider sinks


def _frame(inst: Pm3SatInstance, rep: MergedRepresentation) -> _Frame:
    n, m = len(inst.variables), len(inst.clauses)
    axis_xs = [x for row in rep.anchors for x in row.values()]
    for mc in rep.clauses:
        for x, _ in mc.legs:
            axis_xs.extend((x, x + 1))
    left = (min(axis_xs) if axis_xs else 0) - 2
    right = (max(axis_xs) if axis_xs else 0) + 2
    wall_a = tuple(left - 3 * (n - j + 1) for j in range(n))
    wall_b = tuple(right + 3 * (n - j + 1) for j in range(n))
    return _Frame(wall_a, wall_b, Fraction(left + right, 2), 4 * n + m)


def build_clause_gadget(clause: MergedClause) -> GadgetPiece:
    """Rigid eleven-vertex subgraph of one folded clause.

    Two spine runners and two tent peaks each drop a pair of edges onto
    the axis, fencing three one-unit gate intervals, one per leg.  The
    rising clause edge (tail `clause{i}.src`, added by the composer) can
    only cross the axis inside one of the gates.
    """
    i = clause.index
    (x1, _), (x2, _), (x3, _) = clause.legs
    y = clause.spine_y
    points: Dict[str, Tuple[Scalar, int]] = {
        f"clause{i}.spine_left": (x1, y),
        f"clause{i}.src": (x2, y),
        f"clause{i}.spine_right": (x3, y),
        f"clause{i}.tent12": (x1 + 1, y + 1),
        f"clause{i}.tent23": (x2 + 1, y + 2),
    }
    for g, (x, _) in enumerate(clause.legs, start=1):
        points[f"clause{i}.gate{g}.left"] = (x, 0)
        points[f"clause{i}.gate{g}.right"] = (x + 1, 0)
    edges = (
        (f"clause{i}.spine_left", f"clause{i}.gate1.left"),
        (f"clause{i}.spine_right", f"clause{i}.gate3.right"),
        (f"clause{i}.tent12", f"clause{i}.gate1.right"),
        (f"clause{i}.tent12", f"clause{i}.gate2.left"),
        (f"clause{i}.tent23", f"clause{i}.gate2.right"),
        (f"clause{i}.tent23", f"clause{i}.gate3.left"),
    )
    return GadgetPiece(points, edges)


def build_variable_gadget(inst: Pm3SatInstance, rep: MergedRepresentation,
                          j: int) -> GadgetPiece:
    """Truth-encoding block of variable j.

    A long edge and a short blocking edge leave the shared source; the
    blocking edge must pass its post vertex, so the side it takes (and
    with it the truth value) decides which tunnel exits stay open.  The
    wall pair closes around everything at the matching collection tier,
    innermost variable highest.
    """
    frame = _frame(inst, rep)
    n = len(inst.variables)
    src_y, anchor_y, end_y, apex_y = 4 * j + 1, 4 * j + 2, 4 * j + 3, 4 * j + 4
    nr = rep.anchors[j]["neg_right"]
    points: Dict[str, Tuple[Scalar, int]] = {
        f"var{j}.src": (frame.wall_b[j] + Fraction(1, 4), src_y),
        f"var{j}.wall_left.base": (frame.wall_a[j], anchor_y),
        f"var{j}.wall_right.base": (frame.wall_b[j], anchor_y),
        f"var{j}.post": (nr + Fraction(1, 3), end_y),
        f"var{j}.apex": (nr + Fraction(5, 6), apex_y),
        f"var{j}.wall_top": (frame.mid, frame.top_base + 2 * (n - 1 - j) + 1),
        f"var{j}.sink": (frame.wall_b[j] + Fraction(1, 2),
                         frame.top_base + 2 * (n - 1 - j) + 2),
    }
    edges = (
        (f"var{j}.src", f"var{j}.sink"),
        (f"var{j}.src", f"var{j}.apex"),
        (f"var{j}.wall_left.base", f"var{j}.wall_top"),
        (f"var{j}.wall_right.base", f"var{j}.wall_top"),
        (f"var{j}.post", f"var{j}.apex"),
    )
    return GadgetPiece(points, edges)


def build_tunnels(rep: MergedRepresentation, j: int) -> GadgetPiece:
    """Four alignment paths for variable j.

    Each lane pins a copy of a segment endpoint: it starts on the axis,
    threads every lower variable block between the wall bases, and ends
    on variable j's release row next to the post vertex.  Until that
    row the lane never moves off its x, so gates and walls see the
    endpoints in their original order.
    """
    points: Dict[str, Tuple[Scalar, int]] = {}
    edges: List[Edge] = []
    nr = rep.anchors[j]["neg_right"]
    end_y = 4 * j + 3
    terminal_x = {
        "pos_left": rep.anchors[j]["pos_left"],
        "pos_right": rep.anchors[j]["pos_right"],
        "neg_left": nr + Fraction(2, 3),
        "neg_right": nr + 1,
    }
    for kind in TUNNEL_KINDS:
        x = rep.anchors[j][kind]
        points[f"var{j}.{kind}.0"] = (x, 0)
        for t in range(j + 1):
            points[f"var{j}.{kind}.{t + 1}"] = (x, 4 * t + 2)
        points[f"var{j}.{kind}.{j + 2}"] = (terminal_x[kind], end_y)
        for t in range(j + 2):
            edges.append((f"var{j}.{kind}.{t}", f"var{j}.{kind}.{t + 1}"))
    return GadgetPiece(points, tuple(edges))


def _build(inst: Pm3SatInstance) -> _Reduction:
    rep = build_merged_representation(inst)
    frame = _frame(inst, rep)
    n, m = len(inst.variables), len(inst.clauses)

    points: Dict[str, Tuple[Scalar, int]] = {}
    edges: List[Edge] = []

    def merge(piece: GadgetPiece) -> None:
        overlap = points.keys() & piece.points.keys()
        if overlap:
            raise AssertionError(f"duplicate construction ids: {sorted(overlap)}")
        points.update(piece.points)
        edges.extend(piece.edges)

    for mc in rep.clauses:
        merge(build_clause_gadget(mc))
        points[f"clause{mc.index}.sink"] = (frame.mid, 4 * n + mc.index + 1)
        edges.append((f"clause{mc.index}.src", f"clause{mc.index}.sink"))
    for j in range(n):
        merge(build_variable_gadget(inst, rep, j))
        merge(build_tunnels(rep, j))

    normalized = normalize_real_coordinates(points) if points else {}
    vertices = sorted(normalized.values(), key=lambda v: (v.level, v.pos))
    graph = OrderedLevelGraph(vertices, edges)

    axis = graph.level_of("var0.pos_left.0") if n else 0
    bounds = (axis, axis + 4 * n, axis + 4 * n + m, axis + 4 * n + m + 2 * n)
    clause_roles = ("spine_left", "src", "spine_right", "tent12", "tent23",
                    "gate1.left", "gate1.right", "gate2.left", "gate2.right",
                    "gate3.left", "gate3.right", "sink")
    var_roles = ("src", "wall_left.base", "wall_right.base", "post", "apex",
                 "wall_top", "sink")
    index = GadgetIndex(
        instance=inst,
        tier_bounds=bounds,
        clause_vertices=tuple({role: f"clause{i}.{role}" for role in clause_roles}
                              for i in range(m)),
        variable_vertices=tuple({role: f"var{j}.{role}" for role in var_roles}
                                for j in range(n)),
        tunnels=tuple({kind: tuple(f"var{j}.{kind}.{t}" for t in range(j + 3))
                       for kind in TUNNEL_KINDS} for j in range(n)),
    )
    return _Reduction(inst, n, rep, list(frame.wall_a), list(frame.wall_b),
                      frame.mid, points, edges, graph, index)


def reduce_pm3sat_to_olp(
        inst: Pm3SatInstance) -> Tuple[OrderedLevelGraph, GadgetIndex]:
    """Level-graph instance feasible iff the layout is satisfiable,
    with the directory of construction vertices."""
    red = _build(inst)
    return red.graph, red.index


# -- witness from a satisfying assignment -------------------------------------


def assignment_to_witness(graph: OrderedLevelGraph, index: GadgetIndex,
                          assignment: Sequence[bool]) -> EmbeddingWitness:
    """Explicit per-level order certificate for the reduced instance.

    Requires a satisfying assignment; every clause's rider is routed
    through the gate pair of its first satisfied literal and escapes
    sideways in the block of that literal's variable.
    """
    inst = index.instance
    red = _build(inst)
    if graph.by_id.keys() != red.graph.by_id.keys():
        raise PreconditionError("graph was not produced from the given index")
    n, m = red.n, len(inst.clauses)
    values = tuple(bool(b) for b in assignment)
    if len(values) != n:
        raise PreconditionError(f"assignment has {len(values)} values, expected {n}")
    literals = clause_literals(inst)
    if not _satisfies(inst, literals, values):
        raise PreconditionError("assignment does not satisfy the layout")

    half = Fraction(1, 2)
    # Route each rider: smallest satisfied variable, leftmost of its legs.
    corridor: Dict[int, Fraction] = {}
    chosen_var: Dict[int, int] = {}
    escapers: Dict[Tuple[int, bool], List[Tuple[Fraction, int]]] = {}
    for mc in red.rep.clauses:
        options = [(var, x) for x, var in mc.legs if values[var] == mc.positive]
        var, x = min(options)
        chosen_var[mc.index] = var
        corridor[mc.index] = x + half
        escapers.setdefault((var, mc.positive), []).append((corridor[mc.index], mc.index))
    escape: Dict[int, Fraction] = {}
    for (var, positive), group in escapers.items():
        group.sort()
        delta = Fraction(1, 2 * (len(group) + 1))
        base = red.wall_a[var] if positive else red.wall_b[var] - half
        for t, (_, ci) in enumerate(group, start=1):
            escape[ci] = base + t * delta

    # Vertex keys: canonical x except where the truth value moves things.
    vkey: Dict[str, Scalar] = {vid: x for vid, (x, _) in red.points.items()}
    long_lane: List[Fraction] = []
    block_lane: List[Fraction] = []
    for j in range(n):
        a, b = red.wall_a[j], red.wall_b[j]
        pl = red.rep.anchors[j]["pos_left"]
        nl, nr = red.rep.anchors[j]["neg_left"], red.rep.anchors[j]["neg_right"]
        if values[j]:
            long_lane.append(b + half)
            block_lane.append(Fraction(nr + 1 + b, 2))
            vkey[f"var{j}.src"] = b + Fraction(1, 4)
            vkey[f"var{j}.apex"] = nr + Fraction(5, 6)
            vkey[f"var{j}.sink"] = b + half
            # terminal row: negative tunnel ends release to the right
            vkey[f"var{j}.post"] = nr + Fraction(1, 3)
            vkey[f"var{j}.neg_left.{j + 2}"] = nr + Fraction(2, 3)
            vkey[f"var{j}.neg_right.{j + 2}"] = nr + 1
            vkey[f"var{j}.pos_left.{j + 2}"] = pl
            vkey[f"var{j}.pos_right.{j + 2}"] = red.rep.anchors[j]["pos_right"]
        else:
            long_lane.append(a - half)
            block_lane.append(Fraction(a + pl - 1, 2))
            vkey[f"var{j}.src"] = a - Fraction(1, 4)
            vkey[f"var{j}.apex"] = pl - Fraction(5, 6)
            vkey[f"var{j}.sink"] = a - half
            # terminal row: positive tunnel ends release to the left
            vkey[f"var{j}.pos_left.{j + 2}"] = pl - 1
            vkey[f"var{j}.pos_right.{j + 2}"] = pl - Fraction(2, 3)
            vkey[f"var{j}.post"] = pl - Fraction(1, 3)
            vkey[f"var{j}.neg_left.{j + 2}"] = nl
            vkey[f"var{j}.neg_right.{j + 2}"] = nr
    for ci in range(m):
        vkey[f"clause{ci}.sink"] = escape[ci]

    # Edge lanes; riders are the only edges that change lane mid-flight.
    lane: Dict[Edge, Scalar] = {}
    for mc in red.rep.clauses:
        i = mc.index
        (x1, _), (x2, _), (x3, _) = mc.legs
        lane[(f"clause{i}.spine_left", f"clause{i}.gate1.left")] = x1
        lane[(f"clause{i}.spine_right", f"clause{i}.gate3.right")] = x3 + Fraction(3, 4)
        lane[(f"clause{i}.tent12", f"clause{i}.gate1.right")] = x1 + 1
        lane[(f"clause{i}.tent12", f"clause{i}.gate2.left")] = x2 - half
        lane[(f"clause{i}.tent23", f"clause{i}.gate2.right")] = x2 + 1
        lane[(f"clause{i}.tent23", f"clause{i}.gate3.left")] = x3 - half
    for j in range(n):
        lane[(f"var{j}.src", f"var{j}.sink")] = long_lane[j]
        lane[(f"var{j}.src", f"var{j}.apex")] = block_lane[j]
        lane[(f"var{j}.wall_left.base", f"var{j}.wall_top")] = red.wall_a[j]
        lane[(f"var{j}.wall_right.base", f"var{j}.wall_top")] = red.wall_b[j]
        for kind in TUNNEL_KINDS:
            x = red.rep.anchors[j][kind]
            for t in range(j + 2):
                lane[(f"var{j}.{kind}.{t}", f"var{j}.{kind}.{t + 1}")] = x

    def edge_lane(edge: Edge, y: int) -> Scalar:
        if edge in lane:
            return lane[edge]
        ci = int(edge[0].split(".")[0][6:])  # rider: clause{ci}.src -> .sink
        if y <= 4 * chosen_var[ci] + 3:
            return corridor[ci]
        return escape[ci]

    ys = sorted({y for _, y in red.points.values()})
    index_of_y = {y: i for i, y in enumerate(ys)}
    rows: List[List[Tuple[Scalar, object]]] = [[] for _ in ys]
    for vid, (_, y) in red.points.items():
        rows[index_of_y[y]].append((vkey[vid], vid))
    for edge in red.edges:
        y_lo = red.points[edge[0]][1]
        y_hi = red.points[edge[1]][1]
        for y in ys[index_of_y[y_lo] + 1: index_of_y[y_hi]]:
            rows[index_of_y[y]].append((edge_lane(edge, y), edge))
    levels = []
    for i, row in enumerate(rows):
        keys = [k for k, _ in row]
        if len(set(keys)) != len(keys):
            raise AssertionError(f"key collision on level {i}")
        row.sort(key=lambda item: item[0])
        levels.append(CrossingSet(i, tuple(obj for _, obj in row)))
    return EmbeddingWitness(tuple(levels))


# -- width reduction -----------------------------------------------------------


def width2_transform(graph: OrderedLevelGraph) -> OrderedLevelGraph:
    """Rebuild the instance so no level holds more than two vertices.

    A level with vertices v_1 < ... < v_k (k > 2) becomes k - 1 levels
    of width two: v_1, v_2 stay, v_j moves up j - 2 rows, and each of
    v_2 ... v_{k-1} gets a companion one row above itself at the left
    position, joined by a stretch edge.  Edges that left v_j now leave
    its companion, so a drawing must squeeze them through the gap the
    stretch edge leaves open; that is exactly as restrictive as the
    original shared level, and feasibility is preserved both ways.

    Requires max degree <= 2.  Instances that are already narrow come
    back unchanged.  If every vertex on every wide level has in- and
    out-degree at most one, the output keeps max degree <= 2.
    """
    if graph.max_degree() > 2:
        raise PreconditionError("width-2 transform needs max degree <= 2")
    if graph.max_width() <= 2:
        return graph

    taken = set(graph.by_id)

    def companion_id(vid: str) -> str:
        cand = vid + ".up"
        while cand in taken:
            cand += "+"
        taken.add(cand)
        return cand

    vertices: List[Vertex] = []
    retarget: Dict[str, str] = {}
    stretch: List[Edge] = []
    base = 0
    for lvl in range(graph.num_levels):
        ids = graph.level_ids(lvl)
        k = len(ids)
        if k <= 2:
            for p, vid in enumerate(ids):
                vertices.append(Vertex(vid, base, p))
            base += 1
            continue
        vertices.append(Vertex(ids[0], base, 0))
        vertices.append(Vertex(ids[1], base, 1))
        for j in range(2, k):
            vertices.append(Vertex(ids[j], base + j - 1, 1))
        for j in range(1, k - 1):
            comp = companion_id(ids[j])
            vertices.append(Vertex(comp, base + j, 0))
            retarget[ids[j]] = comp
            stretch.append((ids[j], comp))
        base += k - 1

    edges = [(retarget.get(u, u), v) for u, v in graph.edges]
    edges.extend(stretch)
    return OrderedLevelGraph(vertices, edges)
