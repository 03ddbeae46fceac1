import itertools
import json
import math
from fractions import Fraction

import pytest

import ecw


def _read(name):
    with open(f"{ecw.data_dir()}/{name}") as f:
        return f.read()


(HYPER5,) = ecw.parse_inequality_file(_read("hyper5.ineq"))
((_, VIOLATOR),) = ecw.parse_vector_file(_read("violator.vec"))


def two_party(edges):
    ids = ["a", "b", "o"]
    return ecw.HypergraphModel(2, ids, {"a": 0, "b": 1, "o": 2}, edges)


def test_min_cut_and_entropy_vector():
    h = two_party([(["a", "b"], Fraction(3, 2))])
    assert ecw.min_cut(h, "A") == (Fraction(3, 2), ["a"])
    assert ecw.min_cut(h, "AB") == (Fraction(0), ["a", "b"])
    s = ecw.entropy_vector(h)
    assert list(s.entries) == [Fraction(3, 2), Fraction(3, 2), Fraction(0)]
    assert s["A"] == s[0b01] == Fraction(3, 2)
    again = ecw.HypergraphModel.from_json(h.to_json())
    assert again == h


def test_min_cuts_lists_all_minimizers():
    # Two parallel unit edges through an internal vertex: both sides of m tie.
    ids = ["a", "b", "o", "m"]
    h = ecw.HypergraphModel(2, ids, {"a": 0, "b": 1, "o": 2}, [(["a", "m"], 1), (["m", "b", "o"], 1)])
    assert ecw.min_cuts(h, "A") == [["a"], ["a", "m"]]


def test_graph_state_against_own_dense_statevector():
    pytest.importorskip("numpy")
    import numpy as np

    edges = [(0, 1), (1, 2), (2, 3), (0, 3), (1, 3)]
    g = ecw.GraphState(4, edges)
    amps = np.ones(16) / 4.0
    for idx in range(16):
        bits = [(idx >> q) & 1 for q in range(4)]
        if sum(bits[a] * bits[b] for a, b in edges) % 2:
            amps[idx] *= -1
    for size in (1, 2, 3):
        for qs in itertools.combinations(range(4), size):
            rest = [q for q in range(4) if q not in qs]
            psi = amps.reshape([2] * 4, order="F").transpose(list(qs) + rest).reshape(2 ** size, -1, order="F")
            ev = np.linalg.eigvalsh(psi @ psi.T)
            ent = -sum(x * math.log2(x) for x in ev if x > 1e-12)
            assert abs(ent - ecw.graph_state_entropy(g, list(qs))) < 1e-9
            assert abs(ecw.dense_oracle_entropy(g, list(qs)) - ent) < 1e-9


def test_local_complement_and_census():
    g = ecw.GraphState(6, [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)])
    assert ecw.graph_state_entropy_vector(ecw.local_complement(g, 0)) == ecw.graph_state_entropy_vector(g)
    rows = [vec for _, vec in ecw.parse_vector_file(_read("graph_states6.vec"))]
    assert len(rows) == 19
    codes = ecw.graph_census(rows + [VIOLATOR])
    assert all(c is not None for c in codes)
    target, code = VIOLATOR, codes[-1]
    assert code is not None
    assert ecw.graph_state_entropy_vector(ecw.GraphState.from_code(6, code)) == target


def test_inequality_pipeline():
    q, v = HYPER5, VIOLATOR
    assert q.name == "hyper5" and q.parties == 5
    assert ecw.Inequality.parse(str(q)) == q
    assert q(v) == Fraction(-1)
    assert ecw.evaluate(q, v) == -1
    assert ecw.unbalanced_parties(q) == ["E"]
    report = ecw.check_vector(v, ecw.instantiate_family("SA", 5) + [q])
    assert report["violated"] == [len(report["values"]) - 1]
    orbit = ecw.symmetry_orbit(q)
    assert 720 % len(orbit) == 0
    assert ecw.canonical_form(orbit[-1]) == ecw.canonical_form(q)


def test_prove_and_verify():
    q = HYPER5
    cert = ecw.prove(q)
    assert cert is not None
    result = ecw.verify_certificate(cert)
    assert result["ok"] and result["examined"] == 3 ** 7
    assert ecw.prove(q, encoding="weighted") is None
    mmi = ecw.Inequality.parse("AB + AC + BC - A - B - C - ABC >= 0")
    assert ecw.prove(mmi, mode="graph") is not None
    assert ecw.prove(mmi, mode="hypergraph") is None
    doc = json.loads(cert)
    doc["map"] = {k: "1" * len(v) for k, v in doc["map"].items()}
    assert not ecw.verify_certificate(json.dumps(doc))["ok"]


def test_realization_search():
    bell = ecw.graph_state_entropy_vector(ecw.GraphState(6, [(0, 1)]))
    model = ecw.search_realization(bell)
    assert model is not None and ecw.verify_realization(model, bell) == []
    assert ecw.search_realization(VIOLATOR) is None
    with pytest.raises(ecw.BudgetExceeded):
        ecw.search_realization(bell, "3,6,6,2")


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        ecw.Inequality.parse("A + >= 0")
    with pytest.raises(ValueError):
        ecw.instantiate_family("nope", 3)
    with pytest.raises(ValueError):
        ecw.EntropyVector.parse("n=2; 1 1")
    with pytest.raises(TypeError):
        ecw.evaluate(1, 2)


def test_cli_round_trip():
    code, out, err = ecw.run_cli(["check", "--vector", f"{ecw.data_dir()}/violator.vec",
                                  "--ineq", f"{ecw.data_dir()}/hyper5.ineq", "--json"])
    assert code == 1, err
    assert json.loads(out)["status"] == "negative"
    assert ecw.run_cli(["bogus"])[0] == 2
