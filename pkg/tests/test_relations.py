import json
from fractions import Fraction

import pytest

from newtonmzv import relations
from newtonmzv.estimate import SumEstimate
from newtonmzv.relations import (block_exponents, check_duality, check_two_one, check_formula,
                                 check_interpolation, check_newton_vs_g,
                                 check_phi_difference, derivative_splits, numeric_case)

M = 10**5


def test_numeric_case_rules():
    a = SumEstimate(1.0, 1e-6)
    assert numeric_case((1,), {}, a, SumEstimate(1.0 + 1.5e-6, 1e-6)).passed
    assert not numeric_case((1,), {}, a, SumEstimate(1.0 + 3e-6, 1e-6)).passed
    # inside the error bars but above the tolerance
    assert not numeric_case((1,), {}, SumEstimate(1.0, 1.0), SumEstimate(1.5, 1.0)).passed


def test_report_schema():
    report = check_duality(3, M)
    data = json.loads(json.dumps(report.to_dict()))
    assert set(data) == {"command", "params", "cases", "all_pass"}
    assert data["command"] == "duality" and data["all_pass"] is True
    for case in data["cases"]:
        assert set(case) == {"alpha", "aux", "lhs", "rhs", "abs_diff", "pass", "ms"}
        assert set(case["lhs"]) >= {"re", "im", "err"}
        assert case["ms"] >= 0


def test_exact_cases_serialise_rationals():
    report = check_interpolation(2, 3, M, numeric=False)
    cases = report.to_dict()["cases"]
    assert cases[3]["alpha"] == "(1)" and cases[3]["aux"]["n"] == 3
    assert cases[3]["lhs"]["exact"] == cases[3]["rhs"]["exact"] == "11/6"
    assert cases[-1]["rhs"]["exact"] == "49/36"
    assert all(c.abs_diff == 0 for c in report.cases)


def test_exact_mismatch_is_a_hard_failure(monkeypatch):
    real = relations.multi_harmonic
    monkeypatch.setattr(relations, "multi_harmonic",
                        lambda a, n: real(a, n) + (Fraction(1, 10**30) if n == 2 else 0))
    report = check_interpolation(2, 3, M, numeric=False)
    assert not report.all_pass
    assert {c.aux["n"] for c in report.failures()} == {2}


def test_wrong_dual_is_caught(monkeypatch):
    monkeypatch.setattr(relations, "dual", lambda a: tuple(a))
    assert not check_duality(3, M).all_pass


def test_newton_vs_g_small():
    report = check_newton_vs_g((1, 2), [0.5 + 0.5j, 0], 2000, M)
    assert report.all_pass
    assert report.cases[1].lhs.value == 0 and report.cases[1].rhs.value == 0
    with pytest.raises(ValueError):
        check_newton_vs_g((2,), [-1.0], 2000, M)


def test_formula_examples():
    assert check_formula((1,), 1, M).all_pass
    report = check_formula((2,), 1, M)
    assert report.cases[0].aux["rhs_combo"] == "(3)"
    assert report.all_pass
    assert check_formula((1, 1), 1, M).cases[0].aux["rhs_combo"] == "(2,1) + (3)"
    with pytest.raises(ValueError):
        check_formula((1,), 4, M)


def test_block_exponents_and_splits():
    assert block_exponents((2, 1), (1, 0)) == (2, 1, 1)
    assert block_exponents((1, 2), (1, 2)) == (2, 3, 1)
    assert list(derivative_splits(2, 2)) == [(1, 1), (2, 0)]
    assert list(derivative_splits(1, 3)) == [(3,)]


def test_two_one_runs_algebra_first():
    report = check_two_one(3, M)
    assert report.all_pass
    assert all(c.aux["algebra_ok"] for c in report.cases)
    first = report.to_dict()["cases"][0]
    assert first["alpha"] == "(1)" and first["aux"]["rhs_combo"] == "(1)"


def test_threads_keep_order():
    a = check_duality(3, M).to_dict(timing=False)
    b = check_duality(3, M, threads=4).to_dict(timing=False)
    assert a == b


def test_phi_difference_grid_small():
    report = check_phi_difference(max_rows=1, max_n=1, M=M)
    assert report.all_pass and len(report.cases) == 4


def test_argument_limits():
    with pytest.raises(ValueError):
        check_duality(7, M)
    with pytest.raises(ValueError):
        check_interpolation(9, 2, M)
