import json
import os
import subprocess
import sys

import pytest

from olpkit import io
from olpkit.cli import main
from olpkit.core import OrderedLevelGraph, witness_to_drawing
from olpkit.gen import showcase_layout
from olpkit.geoplan import build_rectilinear_drawing, reduce_olp_to_geodesic
from olpkit.levelvariants import (
    augment_drawing_clustered,
    augment_drawing_tlevel,
    reduce_olp_to_clustered,
    reduce_olp_to_tlevel,
)
from olpkit.solve import solve


def make_graph(levels, edges=()):
    vertices = [(vid, lvl, pos)
                for lvl, ids in enumerate(levels)
                for pos, vid in enumerate(ids)]
    return OrderedLevelGraph(vertices, edges)


NARROW = make_graph([["a"], ["b", "c"], ["d"]],
                    [("a", "b"), ("b", "d"), ("a", "c")])
INVERTED = make_graph([["a", "b"], ["c", "d"]], [("a", "d"), ("b", "c")])


@pytest.fixture
def olg_path(tmp_path):
    path = str(tmp_path / "g.olg.json")
    io.write_document(path, io.emit_olg(NARROW))
    return path


def write(tmp_path, name, doc):
    path = str(tmp_path / name)
    io.write_document(path, doc)
    return path


def last_json(capsys):
    return json.loads(capsys.readouterr().out)


# -- usage and validate ---------------------------------------------------------


def test_usage_errors():
    assert main([]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["--help"]) == 0
    assert main(["solve"]) == 2


def test_validate_exit_codes(tmp_path, olg_path, capsys):
    assert main(["validate", olg_path]) == 0
    assert capsys.readouterr().out == "ok\n"
    assert main(["validate", olg_path, "--json"]) == 0
    assert last_json(capsys) == {"ok": True, "issues": []}

    bad = write(tmp_path, "bad.olg.json", {
        "vertices": [{"id": "a", "level": 0, "pos": 0},
                     {"id": "b", "level": 0, "pos": 0}],
        "edges": []})
    assert main(["validate", bad, "--json"]) == 1
    assert last_json(capsys)["ok"] is False

    broken = tmp_path / "broken.olg.json"
    broken.write_text("{oops")
    assert main(["validate", str(broken)]) == 2
    assert main(["validate", str(tmp_path / "absent.olg.json")]) == 2
    assert main(["validate", str(tmp_path / "weird.json")]) == 2

    drw = write(tmp_path, "d.drw.json", {"points": {}, "paths": {}})
    assert main(["validate", drw]) == 2


def test_validate_other_kinds(tmp_path):
    pm = write(tmp_path, "f.pm3sat.json", io.emit_pm3sat(showcase_layout()))
    assert main(["validate", pm]) == 0
    geo = write(tmp_path, "m.geo.json",
                io.emit_geo(reduce_olp_to_geodesic(NARROW)))
    assert main(["validate", geo]) == 0
    tlvl = write(tmp_path, "t.tlvl.json",
                 io.emit_tlvl(reduce_olp_to_tlevel(NARROW)))
    assert main(["validate", tlvl]) == 0
    clvl = write(tmp_path, "c.clvl.json",
                 io.emit_clvl(reduce_olp_to_clustered(NARROW)[0]))
    assert main(["validate", clvl]) == 0

    doc = io.emit_tlvl(reduce_olp_to_tlevel(NARROW))
    doc["trees"] = doc["trees"][:-1]
    wrong = write(tmp_path, "short.tlvl.json", doc)
    assert main(["validate", wrong]) == 1


# -- solve -----------------------------------------------------------------------


def test_solve_feasible(olg_path, capsys):
    assert main(["solve", olg_path, "--json"]) == 0
    payload = last_json(capsys)
    assert payload["status"] == "feasible"
    assert payload["witness"] is not None


def test_solve_infeasible_matching(tmp_path, capsys):
    path = write(tmp_path, "x.olg.json", io.emit_olg(INVERTED))
    assert main(["solve", path, "--json"]) == 1
    payload = last_json(capsys)
    assert payload["status"] == "infeasible"
    assert payload["witness"] is None


def test_solve_method_and_budget(tmp_path, olg_path, capsys):
    for method in ("exact", "oracle", "auto"):
        assert main(["solve", olg_path, "--method", method]) == 0
    capsys.readouterr()
    passy = write(tmp_path, "p.olg.json", io.emit_olg(
        make_graph([["a", "x"], ["m"], ["b"]], [("a", "b")])))
    assert main(["solve", passy, "--method", "oracle",
                 "--node-budget", "1"]) == 3
    assert main(["solve", passy, "--method", "oracle"]) == 0


def test_solve_wrong_kind(tmp_path):
    pm = write(tmp_path, "f.pm3sat.json", io.emit_pm3sat(showcase_layout()))
    assert main(["solve", pm]) == 2


# -- reduce ----------------------------------------------------------------------


def test_reduce_chain(tmp_path, olg_path, capsys):
    for kind, suffix in [("olp-to-width2", "w.olg.json"),
                         ("olp-to-geodesic", "w.geo.json"),
                         ("olp-to-bimonotone", "b.geo.json"),
                         ("olp-to-tlevel", "w.tlvl.json"),
                         ("olp-to-clustered", "w.clvl.json")]:
        out = str(tmp_path / suffix)
        assert main(["reduce", kind, olg_path, "-o", out, "--json"]) == 0
        assert last_json(capsys) == {"output": out}
        assert main(["validate", out]) == 0
        capsys.readouterr()


def test_reduce_formula(tmp_path, capsys):
    pm = write(tmp_path, "f.pm3sat.json", io.emit_pm3sat(showcase_layout()))
    out = str(tmp_path / "f.olg.json")
    assert main(["reduce", "pm3sat-to-olp", pm, "-o", out]) == 0
    assert main(["validate", out]) == 0
    capsys.readouterr()


def test_reduce_degenerate_gate(tmp_path):
    doc = {"variables": [[0, 4]],
           "clauses": [{"spine": 1, "legs": [2]}]}
    pm = write(tmp_path, "d.pm3sat.json", doc)
    out = str(tmp_path / "d.olg.json")
    assert main(["reduce", "pm3sat-to-olp", pm, "-o", out]) == 2
    assert not os.path.exists(out)
    assert main(["reduce", "pm3sat-to-olp", pm, "-o", out,
                 "--allow-degenerate-clauses"]) == 0
    assert main(["validate", out]) == 0


def test_reduce_kind_mismatches(tmp_path, olg_path):
    pm = write(tmp_path, "f.pm3sat.json", io.emit_pm3sat(showcase_layout()))
    assert main(["reduce", "pm3sat-to-olp", olg_path,
                 "-o", str(tmp_path / "o.olg.json")]) == 2
    assert main(["reduce", "olp-to-width2", pm,
                 "-o", str(tmp_path / "o.olg.json")]) == 2
    assert main(["reduce", "olp-to-width2", olg_path,
                 "-o", str(tmp_path / "o.geo.json")]) == 2
    assert main(["reduce", "made-up", olg_path,
                 "-o", str(tmp_path / "o.olg.json")]) == 2


# -- verify ----------------------------------------------------------------------


def test_verify_drawing(tmp_path, olg_path, capsys):
    result = solve(NARROW)
    drawing = witness_to_drawing(NARROW, result.witness)
    good = write(tmp_path, "good.drw.json", io.emit_drawing(drawing))
    assert main(["verify", "drawing", olg_path, good, "--json"]) == 0
    assert last_json(capsys) == {"verified": True}

    doc = io.emit_drawing(drawing)
    doc["points"]["b"], doc["points"]["c"] = doc["points"]["c"], doc["points"]["b"]
    bad = write(tmp_path, "bad.drw.json", doc)
    assert main(["verify", "drawing", olg_path, bad]) == 1
    capsys.readouterr()


def test_verify_reduction_targets(tmp_path, olg_path):
    result = solve(NARROW)
    geo = write(tmp_path, "m.geo.json",
                io.emit_geo(reduce_olp_to_geodesic(NARROW)))
    geo_drawing = build_rectilinear_drawing(NARROW, result.witness)
    gdrw = write(tmp_path, "m.drw.json", io.emit_drawing(geo_drawing))
    assert main(["verify", "geodesic", geo, gdrw]) == 0
    assert main(["verify", "bimonotone", geo, gdrw]) == 0

    tlvl = write(tmp_path, "t.tlvl.json",
                 io.emit_tlvl(reduce_olp_to_tlevel(NARROW)))
    tdrw = write(tmp_path, "t.drw.json",
                 io.emit_drawing(augment_drawing_tlevel(NARROW, result.witness)))
    assert main(["verify", "tlevel", tlvl, tdrw]) == 0

    clvl = write(tmp_path, "c.clvl.json",
                 io.emit_clvl(reduce_olp_to_clustered(NARROW)[0]))
    cdrw = write(tmp_path, "c.drw.json",
                 io.emit_drawing(augment_drawing_clustered(NARROW, result.witness)))
    assert main(["verify", "clustered", clvl, cdrw]) == 0

    assert main(["verify", "tlevel", olg_path, tdrw]) == 2
    assert main(["verify", "drawing", olg_path, olg_path]) == 2


# -- render ----------------------------------------------------------------------


def test_render_writes_stable_bytes(tmp_path, olg_path):
    out = str(tmp_path / "g.svg")
    assert main(["render", olg_path, "-o", out]) == 0
    first = open(out, "rb").read()
    assert main(["render", olg_path, "-o", out]) == 0
    assert open(out, "rb").read() == first
    assert first.startswith(b"<svg ")


def test_render_rejects_bad_drawing(tmp_path, olg_path):
    result = solve(NARROW)
    drawing = witness_to_drawing(NARROW, result.witness)
    doc = io.emit_drawing(drawing)
    doc["points"]["b"], doc["points"]["c"] = doc["points"]["c"], doc["points"]["b"]
    bad = write(tmp_path, "bad.drw.json", doc)
    out = str(tmp_path / "g.svg")
    assert main(["render", olg_path, bad, "-o", out]) == 1


def test_render_option_validation(tmp_path, olg_path):
    out = str(tmp_path / "g.svg")
    assert main(["render", olg_path, "-o", out, "--scale", "zero"]) == 2
    assert main(["render", olg_path, "-o", out, "--scale", "-2"]) == 2
    assert main(["render", olg_path, "-o", out, "--layers", "levels,shadows"]) == 2
    assert main(["render", olg_path, "-o", out, "--reduced"]) == 2
    assert main(["render", olg_path, "-o", out, "--scale", "72/5"]) == 0


def test_render_reduced_formula(tmp_path):
    pm = write(tmp_path, "f.pm3sat.json", io.emit_pm3sat(showcase_layout()))
    out = str(tmp_path / "f.svg")
    assert main(["render", pm, "--reduced", "-o", out]) == 0
    svg = open(out).read()
    assert svg.count('class="clause-gadget"') == 5
    assert svg.count('<polyline class="tunnel"') == 20


# -- gen -------------------------------------------------------------------------


def test_gen_to_directory(tmp_path, capsys):
    out_dir = str(tmp_path / "corpus")
    assert main(["gen", "olp-random", "--seed", "3", "--count", "5",
                 "-o", out_dir]) == 0
    names = capsys.readouterr().out.split()
    assert len(names) == 5
    for name in names:
        assert main(["validate", os.path.join(out_dir, name)]) == 0
    capsys.readouterr()


def test_gen_stdout_deterministic(capsys):
    assert main(["gen", "pm3sat-tiny", "--seed", "6", "--count", "9"]) == 0
    first = capsys.readouterr().out
    assert main(["gen", "pm3sat-tiny", "--seed", "6", "--count", "9"]) == 0
    assert capsys.readouterr().out == first
    assert len(json.loads(first)) == 9


def test_gen_usage():
    assert main(["gen", "olp-random"]) == 2
    assert main(["gen", "no-such-family", "--seed", "1"]) == 2


# -- process level ---------------------------------------------------------------


def _run_cli(args, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=hashseed)
    return subprocess.run([sys.executable, "-m", "olpkit.cli", *args],
                          capture_output=True, text=True, env=env, check=False)


def test_subprocess_byte_identity_across_hash_seeds(tmp_path):
    pm = write(tmp_path, "f.pm3sat.json", io.emit_pm3sat(showcase_layout()))
    outs = []
    svgs = []
    for hashseed in ("0", "1"):
        proc = _run_cli(["gen", "olp-random", "--seed", "12", "--count", "6"],
                        hashseed)
        assert proc.returncode == 0
        outs.append(proc.stdout)
        out = str(tmp_path / f"h{hashseed}.svg")
        proc = _run_cli(["render", pm, "--reduced", "-o", out], hashseed)
        assert proc.returncode == 0
        svgs.append(open(out, "rb").read())
    assert outs[0] == outs[1]
    assert svgs[0] == svgs[1]


def test_env_node_budget(tmp_path):
    passy = write(tmp_path, "p.olg.json", io.emit_olg(
        make_graph([["a", "x"], ["m"], ["b"]], [("a", "b")])))
    env = dict(os.environ, OLPKIT_NODE_BUDGET="1")
    proc = subprocess.run(
        [sys.executable, "-m", "olpkit.cli", "solve", passy,
         "--method", "oracle"],
        capture_output=True, text=True, env=env, check=False)
    assert proc.returncode == 3
