import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lozilab import Branch, ParameterError, Params, eval_branch, eval_map, fixed_points, inverse, jacobian, period2_point
from lozilab.core import eigendata, eval_points, max_expansion

from conftest import sample_admissible

coord = st.floats(-5, 5, allow_nan=False)


def test_eval_examples(ref):
    assert eval_map(ref, (1, 0)) == pytest.approx((-0.8, 0.3))
    assert eval_map(ref, (-1, 0)) == pytest.approx((-0.8, -0.3))
    for y in (-2.0, 0.0, 0.7):
        assert eval_map(ref, (0.0, y)) == (1 + y, 0.0)


def test_eval_branch_examples(ref):
    assert eval_branch(ref, Branch.LEFT, (1, 0)) == pytest.approx((2.8, 0.3))
    assert eval_branch(ref, Branch.RIGHT, (1, 0)) == pytest.approx((-0.8, 0.3))
    assert eval_branch(ref, Branch.LEFT, (0, 5)) == eval_branch(ref, Branch.RIGHT, (0, 5)) == (6, 0)


@given(coord, coord)
def test_branch_consistency(x, y):
    p = Params(1.7, 0.4, 0.05)
    if x > 0:
        assert eval_map(p, (x, y)) == eval_branch(p, Branch.RIGHT, (x, y))
    elif x < 0:
        assert eval_map(p, (x, y)) == eval_branch(p, Branch.LEFT, (x, y))
    else:
        assert eval_branch(p, Branch.LEFT, (x, y)) == eval_branch(p, Branch.RIGHT, (x, y))


@given(coord, coord)
def test_orientation_contract(x, y):
    assert np.sign(eval_map(Params(1.7, 0.4, 0.05), (x, y)).y) == np.sign(x)


def test_c0_is_lozi():
    p = Params(1.6, 0.35, 0.0)
    rng = np.random.default_rng(1)
    for x, y in rng.uniform(-3, 3, (100, 2)):
        assert eval_map(p, (x, y)) == (1 + y - 1.6 * abs(x), 0.35 * x)


def test_eval_points_matches_scalar(ref):
    pts = np.random.default_rng(2).uniform(-2, 2, (50, 2))
    vec = eval_points(ref, pts)
    for p, q in zip(pts, vec):
        assert tuple(q) == tuple(eval_map(ref, p))


def test_inverse_examples(ref):
    assert inverse(ref, (-0.8, 0.3)) == pytest.approx((1, 0))
    assert inverse(ref, (1 + 0.25, 0)) == pytest.approx((0, 0.25))
    with pytest.raises(ParameterError):
        inverse(Params(1.8, 0.0, 0.0), (0, 0))


def test_inverse_roundtrip():
    p = Params(1.7, 0.4, 0.1)
    pts = np.random.default_rng(3).uniform(-5, 5, (10_000, 2))
    for q in pts[::7]:
        back = inverse(p, eval_map(p, q))
        fwd = eval_map(p, inverse(p, q))
        scale = max(1.0, np.abs(q).max())
        assert np.abs(np.subtract(back, q)).max() <= 1e-12 * scale * 10
        assert np.abs(np.subtract(fwd, q)).max() <= 1e-12 * scale * 10


def test_jacobian_examples(ref):
    np.testing.assert_allclose(jacobian(ref, Branch.RIGHT), [[-1.8, 1], [0.3, 0]])
    np.testing.assert_allclose(jacobian(Params(1.8, 0.3, 0.05), Branch.LEFT), [[1.75, 1], [0.3, 0]])
    for p in sample_admissible(50, seed=4):
        for br in Branch:
            det = np.linalg.det(jacobian(p, br))
            assert det == pytest.approx(-p.b, abs=1e-15)
            assert -1 < det < 0


def test_fixed_points_examples(ref):
    fp = fixed_points(ref)
    assert fp.X.point == pytest.approx((0.4, 0.12))
    assert fp.Y.point == pytest.approx((-10 / 11, -3 / 11))
    lam1 = fp.X.eigen.lambda_unstable
    assert lam1 == pytest.approx(0.5 * (-1.8 - np.sqrt(4.44)))
    J = jacobian(ref, Branch.RIGHT)
    v = np.array([lam1, 0.3])
    np.testing.assert_allclose(J @ v, lam1 * v, atol=1e-14)


def test_fixed_point_properties():
    for p in sample_admissible(200, seed=5):
        fp = fixed_points(p)
        X, Y = fp.X.point, fp.Y.point
        assert X.x > 0 and X.y > 0 and Y.x < 0 and Y.y < 0
        assert np.allclose(eval_map(p, X), X, atol=1e-12)
        assert np.allclose(eval_branch(p, Branch.LEFT, Y), Y, atol=1e-12)
        eX, eY = fp.X.eigen, fp.Y.eigen
        assert eX.lambda_unstable < -1 and 0 < eX.lambda_stable < 1
        assert eY.lambda_unstable > 1 and -1 < eY.lambda_stable < 0
        for e, br in ((eX, Branch.RIGHT), (eY, Branch.LEFT)):
            J = jacobian(p, br)
            for lam, v in ((e.lambda_unstable, e.vec_unstable), (e.lambda_stable, e.vec_stable)):
                assert v == (lam, p.b)
                np.testing.assert_allclose(J @ np.array(v), lam * np.array(v), atol=1e-12)


def test_fixed_points_reject_vanishing_denominator():
    with pytest.raises(ParameterError):
        fixed_points(Params(1.0, 0.5, 0.5))  # 1 - a - b + c = 0


def test_period2_examples(ref, solved_c0):
    Q = period2_point(ref)
    assert Q == pytest.approx((2.5 / 3.73, -0.33 / 3.73))
    assert np.allclose(eval_map(ref, eval_map(ref, Q)), Q, atol=1e-12)
    a, b = 1.6, 0.3
    assert period2_point(Params(a, b, 0)).y == pytest.approx(-b * (a + b - 1) / (a * a + (b - 1) ** 2))
    Qs = period2_point(solved_c0)
    assert np.allclose(eval_map(solved_c0, eval_map(solved_c0, Qs)), Qs, atol=1e-12)


def test_period2_properties():
    for p in sample_admissible(200, seed=6):
        Q = period2_point(p)
        FQ = eval_map(p, Q)
        assert Q.x > 0 and FQ.x < 0
        assert np.allclose(eval_map(p, FQ), Q, atol=1e-10)
    with pytest.raises(ParameterError):
        period2_point(Params(0.5, 1.0, 0.5))


def test_max_expansion(ref):
    lu = abs(eigendata(ref, Branch.RIGHT).lambda_unstable)
    assert max_expansion(ref) == pytest.approx(lu)
    assert max_expansion(ref) >= eigendata(ref, Branch.LEFT).lambda_unstable
