import json

import numpy as np
import pytest

from lozilab import ParameterError, Params, check_all, check_assumptions, check_derived, check_geometry, check_structure, slopes
from lozilab.conditions import Condition, ConditionReport, c4_bound, lozi_triangle_contains
from lozilab.core import fixed_points
from lozilab.geometry import d_orbit, distinguished_points, m_point, segment_intersection

from conftest import sample_admissible


def test_assumption_examples(ref):
    rep = check_assumptions(ref)
    assert rep.passed
    assert rep["A2"].margin == pytest.approx(0.1)
    bad = check_assumptions(Params(1.7, 0.5, 0))
    assert bad.failed() == ["A3"]
    assert bad["A3"].margin == pytest.approx(1.7 * np.sqrt(2) - 2.5)
    assert bad["A3"].margin == pytest.approx(-0.0958, abs=1e-4)
    p = Params(1.8, 0.25, 0.05)
    assert check_assumptions(p).passed
    assert 4 - check_assumptions(p)["A2"].margin == pytest.approx(3.8477, abs=1e-4)


def test_assumptions_are_strict():
    for e in check_assumptions(Params(1.8, 0.3, 0)).entries:
        assert e.strict
    assert not check_assumptions(Params(1.8, 0.3, -0.01)).passed
    assert not check_assumptions(Params(1.8, 1.0, 0)).passed
    # A2 on the boundary 2a + b = 4 fails
    assert not check_assumptions(Params(1.75, 0.5, 0))["A2"].holds


def test_derived_examples(ref):
    rep = check_derived(ref)
    assert rep.passed
    assert rep["C1"].margin == pytest.approx(0.1)
    assert rep["C2"].margin == pytest.approx(0.5)
    assert c4_bound(1.8, 0) == pytest.approx(1.8 * 11.88 / 31.36)
    assert rep["C4"].margin == pytest.approx(0.2)
    assert [e.strict for e in rep.entries] == [True, True, False, False, False]


def test_c3_not_applicable_below_one():
    rep = check_derived(Params(0.9, 0.2, 0))
    assert not rep["C3"].applicable and rep["C3"].holds
    assert rep["C3"].to_dict()["applicable"] is False


def test_prop_ps_implication():
    for p in sample_admissible(2000, seed=21, c=(0.0, 0.3)):
        rep = check_derived(p)
        assert rep.passed, (p, rep.failed())


def test_slope_examples(ref):
    sd = slopes(ref)
    assert sd.s == pytest.approx(0.6 / (-1.8 + np.sqrt(4.44)))
    assert sd.s == pytest.approx(1.9536, abs=1e-4)
    assert sd.y_M == pytest.approx(-0.66143, abs=1e-5)
    X = fixed_points(ref).X
    assert sd.s == pytest.approx(0.3 / X.eigen.lambda_stable)
    assert X.point.y - sd.s * X.point.x == pytest.approx(sd.y_M, abs=1e-10)


def test_s2_specialization():
    a, b = 1.7, 0.3
    sd = slopes(Params(a, b, 0))
    assert sd.s2 == pytest.approx(2 * a * b / (a * a - np.sqrt((a * a - 2 * b) ** 2 - 4 * b * b)))


def test_slopes_positive_and_cross_checked():
    for p in sample_admissible(200, seed=22):
        sd = slopes(p)
        assert sd.s > 0
        orbit = d_orbit(p, 4)
        (x1, y1), (x2, y2), (x3, y3) = orbit[1], orbit[2], orbit[3]
        assert sd.s13 == pytest.approx((y3 - y1) / (x3 - x1), rel=1e-9)
        assert sd.s23 == pytest.approx((y3 - y2) / (x3 - x2), rel=1e-9)


def test_slopes_name_failing_radicand():
    with pytest.raises(ParameterError, match=r"\(a\^2 - 2b - c\^2\)"):
        slopes(Params(1.0, 0.3, 0))


def test_geometry_reference(ref):
    rep = check_geometry(ref)
    assert rep.passed
    assert {"L4", "AppA", "AppB", "AppC", "L3"} <= {e.name for e in rep.entries}


def test_geometry_solved_c0(solved_c0):
    rep = check_geometry(solved_c0)
    assert rep["L3"].holds
    X, M, F4 = fixed_points(solved_c0).X.point, distinguished_points(solved_c0).M, d_orbit(solved_c0, 4)[4]
    # F^4(D) on [X, M]: cross product vanishes and it lies between the endpoints
    cross = (M.x - X.x) * (F4[1] - X.y) - (M.y - X.y) * (F4[0] - X.x)
    assert abs(cross) < 1e-9
    assert min(X.x, M.x) <= F4[0] <= max(X.x, M.x)


def test_geometry_refuses_non_admissible():
    with pytest.raises(ParameterError, match="A3"):
        check_geometry(Params(1.7, 0.5, 0))


def test_x_n_matches_line_intersection():
    for p in sample_admissible(100, seed=23):
        rep = check_geometry(p)
        if not rep["L3"].holds:
            continue
        N = distinguished_points(p).N
        assert rep["AppB"].margin == pytest.approx(N.x, abs=1e-12)


def test_l3_routes_agree():
    agree = 0
    for p in sample_admissible(300, seed=24):
        rep = check_geometry(p)
        orbit = d_orbit(p, 3)
        X = fixed_points(p).X.point
        M = m_point(p)
        hit = segment_intersection(orbit[3], orbit[1], X, M) is not None
        assert rep["L3"].holds == hit, p
        agree += 1
    assert agree == 300


def test_lozi_region_is_a_triangle():
    for a in np.linspace(1.0, 2.2, 61):
        for b in np.linspace(0.0, 1.0, 51)[1:-1]:
            assert check_assumptions(Params(a, b, 0)).passed == lozi_triangle_contains(a, b), (a, b)


def test_report_json_schema(ref):
    rows = json.loads(check_all(ref).to_json())
    for row in rows:
        assert set(row) >= {"condition", "holds", "margin", "strict"}
        assert isinstance(row["holds"], bool) and isinstance(row["strict"], bool)
    names = [r["condition"] for r in rows]
    assert names[:8] == ["A1", "A2", "A3", "C1", "C2", "C3", "C4", "C5"]
    assert "L3" in names and "L4" in names


def test_check_all_skips_geometry_when_failing():
    rep = check_all(Params(1.7, 0.5, 0))
    assert "L3" not in rep and not rep.passed


def test_structure_weaker_than_assumptions(solved_c01):
    assert check_structure(solved_c01).passed
    assert not check_assumptions(solved_c01).passed
    for p in sample_admissible(300, seed=25):
        assert check_structure(p).passed


def test_condition_helpers():
    assert Condition.gt("x", 0.0).holds is False
    assert Condition.ge("x", 0.0).holds is True
    assert Condition.ge("x", -1e-13, tol=1e-12).holds is True
    rep = ConditionReport()
    rep.add(Condition.gt("x", -1.0))
    assert "FAIL" in str(rep) and rep.failed() == ["x"]
    with pytest.raises(KeyError):
        rep["y"]
