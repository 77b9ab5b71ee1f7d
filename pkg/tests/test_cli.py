import json

import pytest

from wsvol.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


def test_validate_fixture(capsys):
    code, doc = run(capsys, "validate", "--complex", "fixture:torus")
    assert code == 0
    assert doc["tool"] == "wsvol" and doc["command"] == "validate"
    assert doc["result"]["orientation"] == [1, -1]
    assert doc["result"]["fundamental_class"] is True


def test_validate_klein(capsys):
    code, doc = run(capsys, "validate", "--complex", "fixture:klein_bottle")
    assert code == 0 and doc["result"]["orientation"] == "non-orientable"


def test_bounds_output_is_deterministic(capsys):
    argv = ("bounds", "--complex", "fixture:genus2", "--field", "fp:2", "--field", "z")
    main(list(argv))
    first = capsys.readouterr().out
    main(list(argv))
    assert capsys.readouterr().out == first


def test_bounds_with_facts(tmp_path, capsys):
    facts = tmp_path / "facts.json"
    facts.write_text(json.dumps([{"kind": "isv", "value": 6}]))
    code, doc = run(capsys, "bounds", "--complex", "fixture:genus2", "--field", "z",
                    "--facts", str(facts))
    assert code == 0
    rep = doc["result"]["reports"][0]
    assert rep["lower"] == {"value": 5, "source": "strictness",
                            "detail": "free rank 4 vs integral volume 6"}


def test_complex_file_round_trip(tmp_path, capsys):
    out = tmp_path / "cover.json"
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"sheets": 2, "monodromy": {"0": [1, 0], "2": [1, 0]}}))
    code = main(["cover", "--complex", "fixture:torus", "--spec", str(spec), "--out", str(out)])
    assert code == 0 and capsys.readouterr().out == ""
    cplx = tmp_path / "c.json"
    cplx.write_text(json.dumps(json.loads(out.read_text())["result"]["complex"]))
    code, doc = run(capsys, "homology", "--complex", str(cplx), "--field", "q")
    assert code == 0 and doc["result"]["profiles"][0]["betti"] == [1, 2, 1]


def test_snf(tmp_path, capsys):
    m = tmp_path / "m.json"
    m.write_text(json.dumps({"rows": 2, "cols": 2, "entries": [[2, 4], [6, 8]]}))
    code, doc = run(capsys, "snf", "--matrix", str(m))
    assert code == 0 and doc["result"]["divisors"] == [2, 4]
    assert doc["result"]["primes"] == [2]


def test_exceptional_primes(tmp_path, capsys):
    m = tmp_path / "m.json"
    m.write_text(json.dumps({"rows": 1, "cols": 1, "entries": [[2]]}))
    code, doc = run(capsys, "exceptional-primes", "--matrix", str(m), "--target", "1")
    assert code == 0
    res = doc["result"]
    assert res["exceptional_primes"] == [2]
    assert res["feasible"] == {"q": True, "fp:2": False, "fp:3": True, "fp:5": True, "fp:7": True}


def test_model_search_and_guard(capsys):
    code, doc = run(capsys, "model-search", "--dim", "2", "--field", "q", "--max", "2")
    assert code == 0 and doc["result"]["searches"][0]["minimal"] == 2
    code, doc = run(capsys, "model-search", "--dim", "2", "--max", "5")
    assert code == 2 and doc["error"]["type"] == "guard"


def test_stabilize(capsys):
    code, doc = run(capsys, "stabilize", "--genus", "2", "--dmax", "3")
    assert code == 0
    assert [r["lower_ratio"] for r in doc["result"]["rows"]] == ["4", "3", "8/3"]


@pytest.mark.parametrize("argv", [
    ["validate", "--complex", "/nonexistent.json"],
    ["validate", "--complex", "fixture:nope"],
    ["homology", "--complex", "fixture:torus", "--field", "fp:6"],
    ["bounds", "--complex", "fixture:klein_bottle"],
])
def test_errors_exit_one(capsys, argv):
    code, doc = run(capsys, *argv)
    assert code == 1 and "error" in doc
