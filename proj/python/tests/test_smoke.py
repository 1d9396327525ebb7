import json
import pathlib

import pytest

import relaus

DATA = pathlib.Path(__file__).resolve().parents[2] / "tests" / "data"


def load(name):
    return json.loads((DATA / name).read_text())


def test_digest_is_stable_hex():
    d = relaus.algebra_digest(load("lambda2.json"))
    assert len(d) == 64
    assert d == relaus.algebra_digest(load("lambda2.json"))


def test_indecomposables_counts():
    for name, count in [("lambda2.json", 2), ("lambda3.json", 3), ("kA2.json", 3)]:
        cat = relaus.indecomposables(load(name))
        assert len(cat["members"]) == count


def test_zeta_dims_of_the_simple():
    rep = relaus.zeta(load("lambda2.json"), load("S_lambda2.json"))
    assert rep["dims"] == [1, 2, 1, 2, 1]
    assert rep["exact"] and rep["ends_mod0"]


def test_tilting_verdict():
    rep = relaus.check_tilting(load("lambda2.json"))
    assert rep["verdict"] == "both"
    assert rep["hypotheses"]["submodule_closed"]["status"] == "verified"


def test_audit_clean():
    rep = relaus.ttf_audit(load("lambda2.json"))
    assert len(rep["samples"]) >= 20
    assert rep["counterexamples"] == []


def test_gprj_cm_free():
    rep = relaus.gprj_pipeline(load("kA2.json"))
    assert rep["cm_free"] is True
    assert rep["tilting"]["verdict"] == "both"


def test_morita_separation():
    a = relaus.morita_invariants(load("lambda2.json"))
    b = relaus.morita_invariants(load("lambda3.json"))
    assert a != b


def test_bad_input_raises_value_error():
    with pytest.raises(ValueError):
        relaus.algebra_digest("{not json")
    bad = load("lambda2.json")
    del bad["quiver"]
    with pytest.raises(ValueError):
        relaus.algebra_digest(bad)
