from __future__ import annotations

import json
import subprocess
import sys

import pytest

from skeleta.cli import main
from skeleta.generators import gen_cube, gen_simplex


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, s in {"k4": gen_simplex(3), "k5": gen_simplex(4), "q3": gen_cube(3), "q4": gen_cube(4)}.items():
        path = tmp_path / f"{name}.json"
        path.write_text(s.dumps())
        paths[name] = str(path)
    graph = tmp_path / "k3graph.json"
    graph.write_text(json.dumps({"vertices": ["a", "b", "c"], "edges": [["a", "b"], ["b", "c"], ["c", "a"]]}))
    paths["k3graph"] = str(graph)
    return paths


def test_validate(capsys, files):
    code, out, _ = run(capsys, "validate", "--input", files["k4"])
    doc = json.loads(out)
    assert code == 0
    assert doc["independence_level"] == 3
    assert len(doc["input_sha256"]) == 64


def test_obstruct_k1_triangle(capsys, files, tmp_path):
    k3 = tmp_path / "k3.json"
    code, out, _ = run(capsys, "gen", "k1", files["k3graph"], "--output", str(k3))
    assert code == 0
    code, out, _ = run(capsys, "obstruct", "--input", str(k3), "--f", "1")
    assert code == 1
    assert json.loads(out)["sum"] == "1/r1^2"
    code, out, _ = run(capsys, "obstruct", "--input", str(k3))
    assert code == 1 and json.loads(out)["verdict"] == "not_realizable_k1"


def test_obstruct_no_obstruction(capsys, files):
    code, out, _ = run(capsys, "obstruct", "--input", files["k4"], "--max-degree", "3")
    assert code == 0
    assert json.loads(out)["verdict"] == "no_obstruction_up_to_degree"


def test_poset_f_vector(capsys, files):
    code, out, _ = run(capsys, "poset", "--input", files["q4"], "--f-vector", "--check-complex")
    doc = json.loads(out)
    assert code == 0
    assert doc["f_vector"] == [8, 24, 32, 16]
    assert doc["simplicial_complex"] is True


def test_faces_and_extend(capsys, files):
    code, out, _ = run(capsys, "faces", "--input", files["k5"], "--dim", "2")
    assert code == 0 and json.loads(out)["counts"] == {"2": 10}
    code, out, _ = run(capsys, "face-extend", "--input", files["q3"], "--vertex", "000", "--edges", "000/1,000/2")
    assert code == 0 and json.loads(out)["face"]["dim"] == 2


def test_connectivity_lambda_manifold(capsys, files):
    code, out, _ = run(capsys, "connectivity", "--input", files["q4"], "--criterion")
    doc = json.loads(out)
    assert code == 0 and doc["connectivity"] == 4 and doc["hypothesis_holds"]
    code, out, _ = run(capsys, "lambda", "--input", files["k4"])
    assert code == 0 and len(json.loads(out)["facets"]) == 4
    code, out, _ = run(capsys, "manifold3", "--input", files["k5"])
    assert code == 0 and json.loads(out)["f_vector"] == [5, 10, 10, 5]
    code, out, _ = run(capsys, "manifold3", "--input", files["k4"])
    assert code == 1 and json.loads(out)["kind"] == "DualityError"


def test_gen_round_trip(capsys, tmp_path):
    for argv in (["simplex", "4"], ["cube", "3"]):
        code, out, _ = run(capsys, "gen", *argv)
        assert code == 0
        path = tmp_path / "g.json"
        path.write_text(out)
        assert run(capsys, "validate", "--input", str(path))[0] == 0
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    a.write_text(gen_simplex(1).dumps())
    b.write_text(gen_cube(1).dumps())
    code, out, _ = run(capsys, "gen", "product", str(a), str(b))
    assert code == 0 and json.loads(out)["k"] == 2


def test_export_dot(capsys, files):
    code, out, _ = run(capsys, "export-dot", "--input", files["k4"])
    assert code == 0
    assert "graph skeleton {" in out and out.rstrip().endswith("}")
    assert '"0" -- "1" [id="01", label="100"];' in out
    labels = [line.split('label="')[1].split('"')[0] for line in out.splitlines() if "label=" in line]
    assert sorted(labels) == sorted(format(e.color, "03b") for e in gen_simplex(3).edges)


def test_search(capsys, tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"k": 3, "n": 3, "vertices": 4, "independence": "at-least", "level": 3}))
    code, out, _ = run(capsys, "search", str(spec), "--seed", "1")
    assert code == 0 and json.loads(out)["found"]
    spec.write_text(json.dumps({"k": 3, "n": 3, "vertices": 4, "bogus": 1}))
    assert run(capsys, "search", str(spec))[0] == 2


def test_exit_codes(capsys, tmp_path, files):
    assert run(capsys, "nope")[0] == 2
    assert run(capsys, "validate", "--input", files["k4"], "--bogus")[0] == 2
    assert run(capsys, "validate", "--input", str(tmp_path / "missing.json"))[0] == 2
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    assert run(capsys, "validate", "--input", str(broken))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text(gen_cube(3).recolor({"000/1": 0b010}).dumps())
    code, out, _ = run(capsys, "validate", "--input", str(bad))
    assert code == 1 and json.loads(out)["p2_ok"] is False
    structural = tmp_path / "structural.json"
    structural.write_text('{"k": 1, "n": 1, "vertices": ["a"], "edges": []}')
    code, out, _ = run(capsys, "validate", "--input", str(structural))
    doc = json.loads(out)
    assert code == 1 and "error" in doc and len(doc["input_sha256"]) == 64


def test_byte_identical_output(files):
    cmd = [sys.executable, "-m", "skeleta", "poset", "--input", files["q4"]]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b
