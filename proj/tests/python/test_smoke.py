import json
from pathlib import Path

import pytest

import fibcomm

CORPUS = Path(__file__).resolve().parents[2] / "corpus"


def d_type(n, k):
    pieces = [{"id": "C", "surface": {"genus": 1, "boundary": n}, "slots": [f"s{i}" for i in range(n)],
               "free_boundary": 0, "kind": "periodic"}]
    curves = []
    for i in range(n):
        pieces.append({"id": f"L{i}", "surface": {"genus": k, "boundary": 1}, "slots": ["s"],
                       "free_boundary": 0, "kind": "periodic"})
        curves.append({"id": f"c{i}", "a": {"piece": "C", "slot": f"s{i}"}, "b": {"piece": f"L{i}", "slot": "s"},
                       "twist": "1"})
    return {"type": "reducible_map", "pieces": pieces, "curves": curves, "orbits": []}


def test_arithmetic():
    assert fibcomm.fundamental_unit(5) == ("1/2", "1/2", -1)
    assert fibcomm.fundamental_unit(3) == ("2", "1", 1)
    assert fibcomm.squarefree_part(72) == 2
    assert fibcomm.unit_log_ratio(5, "3/2", "1/2", 5, "7/2", "3/2") == "1/2"
    assert fibcomm.unit_log_ratio(3, "2", "1", 5, "3/2", "1/2") is None


def test_surfaces_and_torus():
    assert fibcomm.euler_characteristic(2, 1) == -3
    assert fibcomm.surfaces_commensurable(2, 0, 3, 0)
    assert fibcomm.classify_torus([[0, -1], [1, 0]]) == {"type": "nt_class", "kind": "periodic", "period": 4}
    assert fibcomm.torus_commensurable([[2, 1], [1, 1]], [[1, 1], [1, 0]]) == ("commensurable", "2")


def test_invariants_and_compare():
    inv = fibcomm.invariants(d_type(3, 2))
    assert inv["pi"] == [["1/3", "0"], ["1", "0"]]
    assert fibcomm.compare(d_type(2, 2), d_type(4, 2))["verdict"] == "not_obstructed"
    assert fibcomm.compare(d_type(2, 2), d_type(2, 3))["verdict"] == "incommensurable"
    assert fibcomm.power(d_type(1, 1), 4)["curves"][0]["twist"] == "4"


def test_normalize():
    m = d_type(2, 2)
    for c in m["curves"]:
        c["twist"] = "3/2"
    out, power, degree = fibcomm.normalize(m)
    assert (power, degree) == (2, 3)
    assert {c["twist"] for c in out["curves"]} == {"1"}


def test_staircase_and_spectrum():
    manifold = json.loads((CORPUS / "ex5.2" / "manifold.json").read_text())
    plan = json.loads((CORPUS / "ex5.2" / "plan2.json").read_text())
    r = fibcomm.staircase(manifold, plan)
    assert r["twists"] == {"f#0": "1/2", "f#1": "1/2", "g": "1/6"}
    s = fibcomm.spectrum({"type": "spectrum_query", "matrix": [[2, 1], [1, 1]], "O": ["0", "0"],
                          "P": ["1/2", "1/2"], "radius": 4})
    assert s["min"]["value"] == "1/20*sqrt(5)"


def test_errors():
    bad = d_type(1, 1)
    bad["curves"][0]["twist"] = "x"
    with pytest.raises(fibcomm.ParseError, match="/curves/0/twist"):
        fibcomm.invariants(bad)
    with pytest.raises(ValueError):
        fibcomm.invariants(bad)


def test_cli_entry_points():
    code, out, _ = fibcomm.run(["corpus", "verify", str(CORPUS), "-j", "2"])
    assert code == 0
    assert out.endswith("corpus ok\n")
    doc = fibcomm.execute("invariants", [CORPUS / "ex4.6" / "d32.json"])
    assert doc["A"] == ["3", "0"]
