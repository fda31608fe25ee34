import random
from fractions import Fraction

import pytest

from olpkit.core import (
    CrossingSet,
    EmbeddingWitness,
    MalformedWitnessError,
    OrderedLevelGraph,
    PolylineDrawing,
    PreconditionError,
    Vertex,
    normalize_real_coordinates,
    validate_olg,
    verify_drawing_geometric,
    witness_check,
    witness_from_orders,
    witness_to_drawing,
)
from olpkit.geom import point_in_polygon, primitive_direction, segment_intersection


def make_graph(levels, edges=()):
    """levels: list of lists of vertex ids, bottom level first."""
    vertices = [Vertex(vid, lvl, pos)
                for lvl, ids in enumerate(levels)
                for pos, vid in enumerate(ids)]
    return OrderedLevelGraph(vertices, edges)


# -- exact geometry --------------------------------------------------------


def test_segment_intersection_classification():
    assert segment_intersection((0, 0), (2, 2), (0, 2), (2, 0)) == ("cross", None)
    assert segment_intersection((0, 0), (1, 1), (2, 2), (3, 3)) == ("none", None)
    assert segment_intersection((0, 0), (2, 2), (1, 1), (3, 3)) == ("overlap", None)
    assert segment_intersection((0, 0), (1, 1), (1, 1), (2, 0)) == ("point", (1, 1))
    # T-touch: endpoint of one segment interior to the other.
    assert segment_intersection((0, 0), (2, 0), (1, 0), (1, 5)) == ("point", (1, 0))
    assert segment_intersection((0, 0), (2, 0), (3, 0), (5, 0)) == ("none", None)


def test_segment_intersection_exact_fractions():
    # A float version would misclassify near-touching pairs like this.
    a = (0, 0)
    b = (Fraction(1, 3), 1)
    c = (Fraction(1, 3), 0)
    d = (Fraction(2, 3), 1)
    assert segment_intersection(a, b, c, d) == ("none", None)


def test_primitive_direction():
    assert primitive_direction((4, -6)) == (2, -3)
    assert primitive_direction((Fraction(1, 2), Fraction(1, 3))) == (3, 2)
    assert primitive_direction((0, -7)) == (0, -1)
    with pytest.raises(ValueError):
        primitive_direction((0, 0))


def test_point_in_polygon():
    square = ((0, 0), (4, 0), (4, 4), (0, 4))
    assert point_in_polygon((2, 2), square) is True
    assert point_in_polygon((5, 2), square) is False
    assert point_in_polygon((4, 2), square) is None
    assert point_in_polygon((0, 0), square) is None
    assert point_in_polygon((Fraction(399, 100), 1), square) is True


# -- instance validation ---------------------------------------------------


def test_validate_accepts_well_formed():
    g = make_graph([["a", "b"], ["c"]], [("a", "c"), ("b", "c")])
    report = validate_olg(g)
    assert report.ok and report.issues == ()


def test_validate_accepts_empty():
    assert validate_olg(OrderedLevelGraph([], [])).ok


def test_validate_rejects_gap_and_positions():
    g = OrderedLevelGraph([Vertex("a", 0, 0), Vertex("b", 2, 0)])
    report = validate_olg(g)
    assert not report.ok
    assert any("empty levels" in msg for msg in report.issues)

    g = OrderedLevelGraph([Vertex("a", 0, 0), Vertex("b", 0, 2)])
    assert not validate_olg(g).ok


def test_validate_rejects_bad_edges():
    g = make_graph([["a"], ["b"]], [("b", "a")])
    assert not validate_olg(g).ok
    g = make_graph([["a"], ["b"]], [("a", "a")])
    assert not validate_olg(g).ok
    g = make_graph([["a"], ["b"]], [("a", "b"), ("a", "b")])
    assert not validate_olg(g).ok
    g = make_graph([["a"], ["b"]], [("a", "zz")])
    assert not validate_olg(g).ok
    g = make_graph([["a", "a"], ["b"]])
    assert not validate_olg(g).ok


def test_graph_queries():
    g = make_graph([["a", "b"], ["m"], ["t", "u"]],
                   [("a", "t"), ("b", "m"), ("m", "u")])
    assert g.height == 2
    assert g.level_ids(1) == ("m",)
    assert g.pass_throughs(1) == (("a", "t"),)
    assert g.strip_edges(0) == [("a", "t"), ("b", "m")]
    assert g.strip_edges(1) == [("a", "t"), ("m", "u")]
    assert not g.is_proper()
    assert g.max_degree() == 2


# -- witness checking ------------------------------------------------------


def test_witness_structure_errors():
    g = make_graph([["a"], ["b"]], [("a", "b")])
    with pytest.raises(MalformedWitnessError):
        witness_check(g, witness_from_orders([["a"]]))
    with pytest.raises(MalformedWitnessError):
        witness_check(g, witness_from_orders([["a", "a"], ["b"]]))
    with pytest.raises(MalformedWitnessError):
        witness_check(g, witness_from_orders([["a", ("a", "b")], ["b"]]))
    with pytest.raises(MalformedWitnessError):
        witness_check(g, EmbeddingWitness((CrossingSet(1, ("a",)), CrossingSet(0, ("b",)))))


def test_witness_vertex_order_is_semantic():
    g = make_graph([["a", "b"], ["c"]])
    assert witness_check(g, witness_from_orders([["a", "b"], ["c"]]))
    assert not witness_check(g, witness_from_orders([["b", "a"], ["c"]]))


def test_witness_strip_inversion():
    g = make_graph([["a0", "a1"], ["b0", "b1"]])
    parallel = OrderedLevelGraph(g.vertices, [("a0", "b0"), ("a1", "b1")])
    crossing = OrderedLevelGraph(g.vertices, [("a0", "b1"), ("a1", "b0")])
    w = witness_from_orders([["a0", "a1"], ["b0", "b1"]])
    assert witness_check(parallel, w)
    assert not witness_check(crossing, w)


def test_witness_shared_anchor_exempt():
    fan_out = make_graph([["a"], ["b0", "b1"]], [("a", "b0"), ("a", "b1")])
    w = witness_from_orders([["a"], ["b0", "b1"]])
    assert witness_check(fan_out, w)
    fan_in = make_graph([["a0", "a1"], ["b"]], [("a0", "b"), ("a1", "b")])
    w = witness_from_orders([["a0", "a1"], ["b"]])
    assert witness_check(fan_in, w)


def test_witness_pass_through_side_matters():
    g = make_graph([["a", "b"], ["m"], ["t", "u"]],
                   [("a", "t"), ("b", "m"), ("m", "u")])
    left = witness_from_orders([["a", "b"], [("a", "t"), "m"], ["t", "u"]])
    right = witness_from_orders([["a", "b"], ["m", ("a", "t")], ["t", "u"]])
    assert witness_check(g, left)
    assert not witness_check(g, right)


# -- drawing generation and verification ------------------------------------


def test_drawing_coordinates_for_pass_runs():
    g = make_graph([["a", "b"], ["m"], ["t", "u"]],
                   [("a", "t"), ("b", "m"), ("m", "u")])
    w = witness_from_orders([["a", "b"], [("a", "t"), "m"], ["t", "u"]])
    d = witness_to_drawing(g, w)
    assert d.points["m"] == (0, 1)
    assert d.paths[("a", "t")] == ((0, 0), (-1, 1), (0, 2))
    assert verify_drawing_geometric(g, d)


def test_drawing_splits_gaps_evenly():
    g = make_graph([["a", "b"], ["l", "r"], ["t", "u"]],
                   [("a", "t"), ("b", "u")])
    w = witness_from_orders([
        ["a", "b"],
        ["l", ("a", "t"), ("b", "u"), "r"],
        ["t", "u"],
    ])
    d = witness_to_drawing(g, w)
    assert d.paths[("a", "t")][1] == (Fraction(1, 3), 1)
    assert d.paths[("b", "u")][1] == (Fraction(2, 3), 1)
    assert verify_drawing_geometric(g, d)


def test_drawing_right_run():
    g = make_graph([["a", "b"], ["m"], ["t", "u"]],
                   [("a", "m"), ("b", "u")])
    w = witness_from_orders([["a", "b"], ["m", ("b", "u")], ["t", "u"]])
    d = witness_to_drawing(g, w)
    assert d.paths[("b", "u")][1] == (1, 1)
    assert verify_drawing_geometric(g, d)


def test_verify_rejects_crossing():
    g = make_graph([["a0", "a1"], ["b0", "b1"]], [("a0", "b1"), ("a1", "b0")])
    d = PolylineDrawing(
        {"a0": (0, 0), "a1": (1, 0), "b0": (0, 1), "b1": (1, 1)},
        {("a0", "b1"): ((0, 0), (1, 1)), ("a1", "b0"): ((1, 0), (0, 1))},
    )
    assert not verify_drawing_geometric(g, d)


def test_verify_rejects_moved_vertex():
    g = make_graph([["a"], ["b"]], [("a", "b")])
    d = PolylineDrawing({"a": (0, 0), "b": (1, 1)},
                        {("a", "b"): ((0, 0), (1, 1))})
    assert not verify_drawing_geometric(g, d)


def test_verify_rejects_non_monotone_and_off_grid_bends():
    g = make_graph([["a"], ["w"], ["b"]], [("a", "b")])
    base = {"a": (0, 0), "w": (0, 1), "b": (0, 2)}
    zig = PolylineDrawing(base, {("a", "b"): ((0, 0), (3, 1), (2, Fraction(1, 2)), (0, 2))})
    assert not verify_drawing_geometric(g, zig)
    off = PolylineDrawing(base, {("a", "b"): ((0, 0), (3, Fraction(1, 2)), (0, 2))})
    assert not verify_drawing_geometric(g, off)
    ok = PolylineDrawing(base, {("a", "b"): ((0, 0), (3, 1), (0, 2))})
    assert verify_drawing_geometric(g, ok)


def test_verify_rejects_edge_through_vertex():
    g = make_graph([["a"], ["w", "m"], ["b"]], [("a", "b")])
    d = PolylineDrawing(
        {"a": (0, 0), "w": (0, 1), "m": (1, 1), "b": (0, 2)},
        {("a", "b"): ((0, 0), (1, 1), (0, 2))},
    )
    assert not verify_drawing_geometric(g, d)


def test_verify_rejects_touch_at_shared_bend():
    g = make_graph([["a0", "a1"], ["w"], ["t0", "t1"]],
                   [("a0", "t0"), ("a1", "t1")])
    d = PolylineDrawing(
        {"a0": (0, 0), "a1": (1, 0), "w": (0, 1), "t0": (0, 2), "t1": (1, 2)},
        {("a0", "t0"): ((0, 0), (Fraction(1, 2), 1), (0, 2)),
         ("a1", "t1"): ((1, 0), (Fraction(1, 2), 1), (1, 2))},
    )
    assert not verify_drawing_geometric(g, d)


def test_verify_allows_touch_at_shared_vertex():
    g = make_graph([["a"], ["b0", "b1"]], [("a", "b0"), ("a", "b1")])
    d = PolylineDrawing(
        {"a": (0, 0), "b0": (0, 1), "b1": (1, 1)},
        {("a", "b0"): ((0, 0), (0, 1)), ("a", "b1"): ((0, 0), (1, 1))},
    )
    assert verify_drawing_geometric(g, d)


def test_verify_rejects_overlap():
    g = make_graph([["a"], ["w"], ["b"]], [("a", "b"), ("w", "b")])
    d = PolylineDrawing(
        {"a": (0, 0), "w": (0, 1), "b": (0, 2)},
        {("a", "b"): ((0, 0), (0, 2)), ("w", "b"): ((0, 1), (0, 2))},
    )
    assert not verify_drawing_geometric(g, d)


# -- scan verdict vs exact geometry, randomized -----------------------------


def random_instance(rng):
    num_levels = rng.randint(2, 4)
    levels = []
    counter = 0
    for _ in range(num_levels):
        width = rng.randint(1, 3)
        levels.append([f"v{counter + i}" for i in range(width)])
        counter += width
    ids = [(vid, lvl) for lvl, ids_ in enumerate(levels) for vid in ids_]
    candidates = [(u, v) for u, lu in ids for v, lv in ids if lu < lv]
    rng.shuffle(candidates)
    edges = candidates[: rng.randint(0, min(5, len(candidates)))]
    return make_graph(levels, edges)


def random_structural_witness(graph, rng):
    orders = []
    for lvl in range(graph.num_levels):
        objs = list(graph.level_ids(lvl))
        for e in graph.pass_throughs(lvl):
            objs.insert(rng.randint(0, len(objs)), e)
        orders.append(objs)
    return witness_from_orders(orders)


def test_scan_agrees_with_geometry_on_random_witnesses():
    # Vertices stay in position order; pass-throughs land in random
    # slots.  The strip scan and the exact geometric check of the
    # generated drawing must agree on every instance.
    rng = random.Random(20260814)
    agreements = {True: 0, False: 0}
    for _ in range(300):
        g = random_instance(rng)
        assert validate_olg(g).ok
        w = random_structural_witness(g, rng)
        verdict = witness_check(g, w)
        drawn = verify_drawing_geometric(g, witness_to_drawing(g, w))
        assert verdict == drawn
        agreements[verdict] += 1
    assert agreements[True] > 20 and agreements[False] > 20


# -- coordinate normalization ------------------------------------------------


def test_normalize_real_coordinates():
    pts = {"a": (Fraction(1, 2), -3), "b": (7, -3), "c": (0, Fraction(5, 2))}
    out = normalize_real_coordinates(pts)
    assert out["a"] == Vertex("a", 0, 0)
    assert out["b"] == Vertex("b", 0, 1)
    assert out["c"] == Vertex("c", 1, 0)


def test_normalize_rejects_duplicates():
    with pytest.raises(PreconditionError):
        normalize_real_coordinates({"a": (1, 1), "b": (Fraction(2, 2), 1)})
