import json

import pytest

from odometer import elements as el
from odometer.relations import SUITES, SuiteError, run_suite

DEFAULT_RUNS = [
    ("delta", 4, {}, 8),
    ("powers", 4, {}, 8),
    ("normalizer", 3, {}, 8),
    ("commutation", 4, {"beta": "wreath(id, id, tau, id; (0 2))"}, 6),
    ("theorem-b", 6, {"s": "2"}, 6),
    ("even-half", 4, {}, 6),
    ("transposition", 4, {"beta": "wreath(id, id, tau, id; (0 2))"}, 6),
    ("n4", 4, {}, 8),
    ("wreath", 4, {"m": "2", "s": "2"}, 8),
    ("symmetric", 4, {}, 8),
]


@pytest.mark.parametrize("name,n,params,depth", DEFAULT_RUNS, ids=[r[0] for r in DEFAULT_RUNS])
def test_suite_passes_on_builtin_witnesses(name, n, params, depth):
    report = run_suite(name, n, params, depth=depth)
    assert report.passed, report.text()
    assert report.relations
    assert report.text().endswith(f"SUITE {name} PASS\n")


def test_every_suite_is_covered():
    assert {r[0] for r in DEFAULT_RUNS} == set(SUITES)


@pytest.mark.parametrize("n", [2, 3, 5, 6, 12])
def test_delta_suite_other_degrees(n):
    assert run_suite("delta", n).passed


@pytest.mark.parametrize("n", [2, 3, 5])
def test_powers_and_normalizer_other_degrees(n):
    assert run_suite("powers", n, depth=6).passed
    assert run_suite("normalizer", n, depth=6).passed


@pytest.mark.parametrize("n", [3, 5])
def test_commutation_odd_degree_default(n):
    assert run_suite("commutation", n, depth=6).passed


@pytest.mark.parametrize("m,n,s", [(2, 4, 2), (3, 3, 1), (2, 6, 3), (3, 6, 2)])
def test_wreath_models(m, n, s):
    assert run_suite("wreath", n, {"m": str(m), "s": str(s)}).passed


@pytest.mark.parametrize("n", [2, 3, 5, 7, 8])
def test_symmetric_other_degrees(n):
    assert run_suite("symmetric", n).passed


def test_commutation_detects_bad_witness():
    report = run_suite("commutation", 4, {"beta": "wreath(rigid((0 1)), id, tau, id; (0 2))"}, depth=6)
    assert not report.passed
    bad = {r.id: r for r in report.failures()}
    assert "commutation.hypothesis" in bad
    assert bad["commutation.hypothesis"].instance == "x=2"
    assert "RELATION commutation.hypothesis FAIL witness=" in report.text()


def test_theorem_b_detects_bad_witness():
    report = run_suite("theorem-b", 4, {"beta": "tau^2 * wreath(rigid((0 1)), id, id, id;)"}, depth=6)
    ids = {r.id for r in report.failures()}
    assert {"theorem-b.hypothesis", "theorem-b.generators_commute"} <= ids


def test_transposition_and_even_half_detect_bad_witness():
    bad = run_suite("transposition", 4, {"beta": "wreath(tau, id, tau, id; (0 2))"}, depth=6)
    assert "transposition.hypothesis" in {r.id for r in bad.failures()}
    bad = run_suite("even-half", 4, {"beta": "wreath(tau, id, id, id; (0 2)(1 3))"}, depth=6)
    assert "even-half.hypothesis" in {r.id for r in bad.failures()}


def test_parameter_errors():
    with pytest.raises(SuiteError):
        run_suite("nope", 4)
    with pytest.raises(SuiteError):
        run_suite("delta", 4, {"beta": "tau"})
    with pytest.raises(SuiteError):
        run_suite("commutation", 4, {"beta": "tau^1/2"})
    with pytest.raises(SuiteError):
        run_suite("wreath", 4, {"m": "3", "s": "2"})
    with pytest.raises(SuiteError):
        run_suite("wreath", 5, {"s": "5"})
    with pytest.raises(SuiteError):
        run_suite("theorem-b", 4, {"beta": "tau", "s": "2"})


def test_objects_as_parameters():
    report = run_suite("transposition", 4, {"beta": el.beta_family(1, 2)}, depth=5)
    assert report.passed


def test_reports_are_deterministic():
    a = run_suite("n4", 4, seed=3, depth=6)
    b = run_suite("n4", 4, seed=3, depth=6)
    assert a.text() == b.text()
    da, db = a.to_dict(), b.to_dict()
    da.pop("duration_ms"), db.pop("duration_ms")
    assert da == db


def test_json_schema():
    report = run_suite("wreath", 4, {"m": "2", "s": "2"}, seed=9)
    data = json.loads(report.to_json())
    assert set(data) == {"suite", "params", "relations", "seed", "duration_ms"}
    assert data["suite"] == "wreath" and data["seed"] == 9
    assert data["params"] == {"n": "4", "depth": "8", "m": "2", "s": "2"}
    ids = [r["id"] for r in data["relations"]]
    assert ids == sorted(ids)
    for r in data["relations"]:
        assert set(r) == {"id", "status", "statement", "method", "instances", "witness", "instance"}
        assert r["status"] == "PASS" and r["instances"] >= 1


def test_depth_bounded_relations_are_labelled():
    report = run_suite("theorem-b", 4, depth=5)
    methods = {r.method for r in report.relations}
    assert "generator-level, depth-bounded (5)" in methods
    assert "exhaustive" in methods
