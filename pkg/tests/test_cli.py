import json
import subprocess
import sys

import jsonschema
import pytest

from feyngkz.cli import main
from feyngkz.io import GKZ_SCHEMA, SATURATION_SCHEMA

from conftest import BUBBLE_DOC, PATH_DOC, SUNSET_DOC, TRIANGLE_DOC


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_forests_bubble(graph_file, capsys):
    code, out, _ = run(["forests", graph_file(BUBBLE_DOC), "-i", "2"], capsys)
    assert code == 0
    assert out.splitlines()[0] == "1 2-forest(s)"
    assert "{}" in out and "momentous" in out


def test_forests_triangle_json(graph_file, capsys):
    code, out, _ = run(["forests", graph_file(TRIANGLE_DOC), "-i", "1", "--json"], capsys)
    assert code == 0
    assert json.loads(out)["count"] == 3


def test_forests_path_graph_fails_s1i(graph_file, capsys):
    code, _, err = run(["forests", graph_file(PATH_DOC)], capsys)
    assert code == 2
    assert "bridge" in err


def test_matroids_triangle(graph_file, capsys):
    code, out, _ = run(["matroids", graph_file(TRIANGLE_DOC)], capsys)
    assert code == 0
    assert "result: all checks passed" in out


def test_matroids_single_external(graph_file, capsys):
    doc = dict(SUNSET_DOC, external=["a"])
    code, out, _ = run(["matroids", graph_file(doc)], capsys)
    assert code == 0
    assert "no momentous 2-forest" in out
    massless = dict(doc, edges=[dict(e, massive=False) for e in doc["edges"]])
    code, _, err = run(["matroids", graph_file(massless, "m.json")], capsys)
    assert code == 2
    assert "no 2-forest term" in err


def test_matroids_mixed_mass_wheel(graph_file, capsys):
    vs = ["h", "r1", "r2", "r3"]
    ends = [("h", "r1"), ("h", "r2"), ("h", "r3"), ("r1", "r2"), ("r2", "r3"), ("r3", "r1")]
    doc = {
        "vertices": vs,
        "edges": [{"id": f"e{i + 1}", "ends": list(p), "massive": i % 2 == 0} for i, p in enumerate(ends)],
        "external": ["r1", "r2", "r3"],
    }
    code, out, _ = run(["matroids", graph_file(doc), "--json"], capsys)
    assert code == 0
    data = json.loads(out)
    wit = data["quotients"]["massive_truncation"]
    assert wit["holds"]
    assert len(wit["witnesses"]) == 7  # circuits of K4: 4 triangles, 3 squares
    for w in wit["witnesses"]:
        assert sorted(set().union(*map(set, w["covered_by"]))) == sorted(w["circuit"])


def test_saturation_bubble(graph_file, capsys):
    code, out, _ = run(["saturation", graph_file(BUBBLE_DOC), "--kmax", "3"], capsys)
    assert code == 0
    assert "degree 1: 1 hole(s): (1,1,1)" in out
    assert "Q_A generators: (1,1,1)" in out
    assert out.rstrip().endswith("verdict: not saturated")


def test_saturation_json(graph_file, capsys):
    code, out, _ = run(["saturation", graph_file(TRIANGLE_DOC), "--json"], capsys)
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, SATURATION_SCHEMA)
    assert doc["verdict"] == "saturated (massless theorem)"
    assert doc["holes"] == {}


def test_saturation_usage_errors(graph_file, tmp_path, capsys):
    assert run(["saturation", graph_file(BUBBLE_DOC), "--kmax", "0"], capsys)[0] == 1
    assert run(["saturation", graph_file(BUBBLE_DOC), "--kmax", "x"], capsys)[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": [}')
    code, _, err = run(["saturation", bad], capsys)
    assert code == 1 and "bad.json:1:" in err
    assert run(["nonsense"], capsys)[0] == 1
    assert run([], capsys)[0] == 1
    deleted_u = dict(BUBBLE_DOC, deleted_monomials=[[1, 0]])
    assert run(["saturation", graph_file(deleted_u, "u.json")], capsys)[0] == 1


def test_help_exits_zero(capsys):
    assert run(["--help"], capsys)[0] == 0


def test_gkz_out(graph_file, tmp_path, capsys):
    target = tmp_path / "gkz.json"
    code, _, _ = run(["gkz", graph_file(SUNSET_DOC), "--out", target], capsys)
    assert code == 0
    doc = json.loads(target.read_text())
    jsonschema.validate(doc, GKZ_SCHEMA)
    assert len(doc["matrix"][0]) == 10


def test_gkz_text(graph_file, capsys):
    code, out, _ = run(["gkz", graph_file(BUBBLE_DOC)], capsys)
    assert code == 0 and out.startswith("E_0 = ")


def test_verify_family_small(capsys, monkeypatch):
    monkeypatch.setenv("SYMANZIK_WORKERS", "1")
    code, out, _ = run(["verify-family", "--max-edges", "3"], capsys)
    assert code == 0
    assert "result: all checks passed" in out
    code2, out2, _ = run(["verify-family", "--max-edges", "3"], capsys)
    assert out2 == out


def test_verify_family_usage(capsys, monkeypatch):
    assert run(["verify-family", "--max-edges", "0"], capsys)[0] == 1
    monkeypatch.setenv("SYMANZIK_WORKERS", "many")
    assert run(["verify-family", "--max-edges", "2"], capsys)[0] == 1


def test_module_entry_point(tmp_path):
    path = tmp_path / "b.json"
    path.write_text(json.dumps(BUBBLE_DOC))
    res = subprocess.run(
        [sys.executable, "-m", "feyngkz", "saturation", str(path), "--kmax", "2"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0
    assert "not saturated" in res.stdout
