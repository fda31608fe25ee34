from fractions import Fraction

import pytest

from olpkit import io
from olpkit.core import (
    CrossingSet,
    EmbeddingWitness,
    OrderedLevelGraph,
    PolylineDrawing,
    witness_to_drawing,
)
from olpkit.gen import showcase_layout
from olpkit.geoplan import AXES, GeodesicInstance, direction_set
from olpkit.io import FormatError
from olpkit.levelvariants import (
    TargetDrawing,
    reduce_olp_to_clustered,
    reduce_olp_to_tlevel,
)
from olpkit.solve import solve


def make_graph(levels, edges=()):
    vertices = [(vid, lvl, pos)
                for lvl, ids in enumerate(levels)
                for pos, vid in enumerate(ids)]
    return OrderedLevelGraph(vertices, edges)


SAMPLE = make_graph([["a", "b"], ["c"], ["d", "e"]],
                    [("a", "c"), ("c", "d"), ("c", "e"), ("b", "e")])


# -- scalars -----------------------------------------------------------------


def test_scalar_json_forms():
    assert io.scalar_to_json(3) == 3
    assert io.scalar_to_json(Fraction(6, 3)) == 2
    assert io.scalar_to_json(Fraction(2, 4)) == "1/2"
    assert io.scalar_to_json(Fraction(-7, 3)) == "-7/3"
    assert io.scalar_from_json(3) == 3
    assert io.scalar_from_json("1/2") == Fraction(1, 2)
    assert io.scalar_from_json("-7/3") == Fraction(-7, 3)


@pytest.mark.parametrize("bad", [True, 1.5, "x", "1/0", None, [1]])
def test_scalar_rejects_non_rationals(bad):
    with pytest.raises(FormatError):
        io.scalar_from_json(bad)


def test_kind_of_path():
    assert io.kind_of_path("x/y.olg.json") == "olg"
    assert io.kind_of_path("deep/dir/z.pm3sat.json") == "pm3sat"
    assert io.kind_of_path("q.drw.json") == "drw"
    with pytest.raises(FormatError):
        io.kind_of_path("plain.json")


# -- round trips ----------------------------------------------------------------


def test_olg_round_trip():
    doc = io.emit_olg(SAMPLE)
    back = io.parse_olg(doc)
    assert back.vertices == SAMPLE.vertices
    assert back.edges == SAMPLE.edges
    assert io.dumps(io.emit_olg(back)) == io.dumps(doc)


def test_drawing_round_trip_with_fractions():
    drawing = PolylineDrawing(
        points={"a": (0, 0), "b": (Fraction(1, 3), 2)},
        paths={("a", "b"): ((0, 0), (Fraction(1, 6), 1), (Fraction(1, 3), 2))})
    doc = io.emit_drawing(drawing)
    assert doc["points"]["b"] == ["1/3", 2]
    back = io.parse_drawing(doc)
    assert back.regions is None
    assert back.drawing.points == drawing.points
    assert back.drawing.paths == drawing.paths
    assert io.dumps(io.emit_drawing(back.drawing)) == io.dumps(doc)


def test_drawing_round_trip_with_regions():
    target = TargetDrawing(
        PolylineDrawing({"a": (0, 0)}, {}),
        regions={"root": ((-1, -1), (1, -1), (1, 1), (-1, 1))})
    doc = io.emit_drawing(target)
    back = io.parse_drawing(doc)
    assert back.regions == target.regions
    assert io.dumps(io.emit_drawing(back)) == io.dumps(doc)


def test_witness_round_trip():
    result = solve(SAMPLE)
    assert result.status == "feasible"
    doc = io.emit_witness(result.witness)
    back = io.parse_witness(doc)
    assert back == result.witness
    assert io.emit_witness(back) == doc


def test_witness_objects_malformed():
    with pytest.raises(FormatError):
        io.parse_witness([[["x", "a"]]])
    with pytest.raises(FormatError):
        io.parse_witness([[["v"]]])
    with pytest.raises(FormatError):
        io.parse_witness({"level": 0})


def test_pm3sat_round_trip():
    inst = showcase_layout()
    doc = io.emit_pm3sat(inst)
    back = io.parse_pm3sat(doc)
    assert back == inst
    assert io.dumps(io.emit_pm3sat(back)) == io.dumps(doc)


def test_pm3sat_polarity_consistency():
    doc = io.emit_pm3sat(showcase_layout())
    doc["clauses"][0]["polarity"] = -1
    with pytest.raises(FormatError):
        io.parse_pm3sat(doc)


def test_geo_round_trip():
    inst = GeodesicInstance(
        points={"p": (0, 0), "q": (Fraction(5, 2), 1)},
        edges=(("p", "q"),),
        directions=AXES)
    doc = io.emit_geo(inst)
    back = io.parse_geo(doc)
    assert back.points == inst.points
    assert back.edges == inst.edges
    assert back.directions == inst.directions
    assert back.normalize_map is None
    assert io.dumps(io.emit_geo(back)) == io.dumps(doc)


def test_geo_round_trip_with_normalize_map():
    inst = GeodesicInstance(
        points={"p": (0, 0)},
        edges=(),
        directions=direction_set(((1, 0), (1, 2), (-1, 0), (-1, -2))),
        normalize_map=((1, 0), (Fraction(1, 2), 1)))
    back = io.parse_geo(io.emit_geo(inst))
    assert back.normalize_map == inst.normalize_map
    assert back.directions == inst.directions


def test_tlvl_round_trip():
    inst = reduce_olp_to_tlevel(make_graph([["a"], ["b", "c"]], [("a", "b")]))
    doc = io.emit_tlvl(inst)
    back = io.parse_tlvl(doc)
    assert back.graph.vertices == inst.graph.vertices
    assert back.graph.edges == inst.graph.edges
    assert back.trees == inst.trees
    assert io.dumps(io.emit_tlvl(back)) == io.dumps(doc)


def test_clvl_round_trip():
    inst, _ = reduce_olp_to_clustered(
        make_graph([["a"], ["b", "c"]], [("a", "b")]))
    doc = io.emit_clvl(inst)
    back = io.parse_clvl(doc)
    assert back.graph.vertices == inst.graph.vertices
    assert back.graph.edges == inst.graph.edges
    assert back.clusters == inst.clusters
    assert io.dumps(io.emit_clvl(back)) == io.dumps(doc)


# -- error paths --------------------------------------------------------------


def test_loads_rejects_bad_json():
    with pytest.raises(FormatError):
        io.loads("{broken")


@pytest.mark.parametrize("doc", [
    [],
    {"vertices": {}},
    {"vertices": [], "edges": [["a"]]},
    {"vertices": [{"id": "a", "level": 0}], "edges": []},
    {"vertices": [{"id": "a", "level": "x", "pos": 0}], "edges": []},
])
def test_parse_olg_structure_errors(doc):
    with pytest.raises(FormatError):
        io.parse_olg(doc)


def test_parse_drawing_bad_edge_key():
    with pytest.raises(FormatError):
        io.parse_drawing({"points": {}, "paths": {"ab": [[0, 0]]}})


def test_file_round_trip(tmp_path):
    path = str(tmp_path / "g.olg.json")
    io.write_document(path, io.emit_olg(SAMPLE))
    doc = io.read_document(path)
    assert io.parse_olg(doc).edges == SAMPLE.edges
    with pytest.raises(FormatError):
        io.read_document(str(tmp_path / "missing.olg.json"))


def test_drawing_file_matches_realization(tmp_path):
    result = solve(SAMPLE)
    drawing = witness_to_drawing(SAMPLE, result.witness)
    path = str(tmp_path / "d.drw.json")
    io.write_document(path, io.emit_drawing(drawing))
    back = io.parse_drawing(io.read_document(path))
    assert back.drawing == drawing
