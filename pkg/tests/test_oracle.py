import json

import pytest

from affine_biclosed import oracle, roots as R

QUICK = {
    "d_equals_h": {},
    "three_root_sum": {},
    "closure_formula": {"n": [1, 2]},
    "dominance": {"max_len": 5},
    "action_laws": {"max_len": 2, "window": 8},
    "lattice_laws": {"max_len": 3, "pairs": 30},
    "jop": {"max_len": 2},
    "distance_not_one": {"max_len": 2},
    "quasi_positive": {},
    "braid_bruteforce": {"max_size": 2},
}


def test_every_suite_is_covered():
    assert set(QUICK) == set(oracle.SUITES)


@pytest.mark.parametrize("name", sorted(QUICK))
def test_suite_passes(name):
    rep = oracle.run_suite(name, QUICK[name])
    assert rep.cases > 0
    assert rep.ok, rep.failures[:3]


def test_d_equals_h_case_counts():
    assert oracle.run_suite("d_equals_h", {"type": "G2"}).cases == 24
    assert oracle.run_suite("d_equals_h", {"type": "B2"}).cases == 16
    assert oracle.run_suite("d_equals_h", {"type": "A2"}).cases == 12


def test_unknown_suite_and_type_rejected():
    with pytest.raises(ValueError):
        oracle.run_suite("nope")
    with pytest.raises(ValueError):
        oracle.run_suite("d_equals_h", {"type": "F4"})


def test_reports_are_deterministic_and_record_the_seed():
    r1 = oracle.run_suite("lattice_laws", {"max_len": 2, "pairs": 10, "seed": 3}).to_json()
    r2 = oracle.run_suite("lattice_laws", {"max_len": 2, "pairs": 10, "seed": 3}).to_json()
    assert json.dumps(r1, sort_keys=True) == json.dumps(r2, sort_keys=True)
    assert r1["params"]["seed"] == 3 and r1["schema"] == 1


def test_failures_carry_counterexamples(monkeypatch):
    rs = R.get("A2")
    monkeypatch.setattr(type(rs), "h", lambda self, root, L: 0)
    rep = oracle.run_suite("d_equals_h", {"type": "A2"})
    assert not rep.ok
    bad = rep.failures[0]
    assert set(bad) == {"type", "L", "root", "d", "h"}
    json.dumps(rep.to_json())
