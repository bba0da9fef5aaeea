"""Kneading-parameter equations and their numerical solution.

``r1`` vanishes when F^4(D) lands on the stable segment [X, M] (the largest
kneading sequence is then +--+++...), ``r2`` vanishes when F(B) lands on the
stable manifold of the period-2 orbit (the smallest kneading sequence is
then +-+-...).  Both come in a closed form and in a geometric form that
iterates points; the two are independent transcriptions of one condition.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import os

import numpy as np
from scipy import ndimage

from .core import Branch, Params, ParameterError, fixed_points, jacobian
from .precision import dtype, real

DEFAULT_REGION = (1.0, 2.0, 0.0, 1.0)


class ConvergenceError(RuntimeError):
    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


@dataclass(frozen=True)
class ResidualPair:
    r1: float
    r2: float

    def max_abs(self):
        return max(abs(self.r1), abs(self.r2))


# -- closed forms -------------------------------------------------------------
# The underscore versions are elementwise on arrays and never raise; the
# public versions check preconditions on scalars.

def _f1(a, b, c):
    root = np.sqrt(4 * b + (a + c) ** 2)
    poly = (a * a - c * c) ** 2 - 6 * a * a - 4 * a + 4 * b * b + a * a * b + c * (2 * a - 2 * a * b + 5 * b * c)
    return poly + (a ** 3 + 2 * a - a * b + c ** 3 - a * a * c - a * c * c + 3 * b * c) * root


def _f2(a, b, c):
    root = np.sqrt(4 * b + (a + c) ** 2)
    den = a * a + (b - 1) ** 2 - c * c
    inner = np.sqrt((a * a - c * c) * (a * a - 4 * b - c * c))
    last = -2 * b + c + root - a * (3 + 2 * a + 2 * c - 2 * root)
    return (
        -1
        + (1 + a - b - c) / den
        + (-1 + a + b + c) * (a * a - c * c - inner) / (2 * (a + c) * den)
        - 2 * b / last
    )


def _f1_c0(a, b):
    return a ** 4 - 6 * a * a - 4 * a + 4 * b * b + a * a * b + (a ** 3 + 2 * a - a * b) * np.sqrt(4 * b + a * a)


def _f2_c0(a, b):
    root_m = np.sqrt(a * a - 4 * b)
    root_p = np.sqrt(a * a + 4 * b)
    return 4 * (-a * a - 2 * b * b + 2 * b + a * root_m) / (a - 2 * b - root_m) - (2 + a - root_p) * (3 * a - root_p)


def _pole_sign(a, b, c):
    """Sign of the product of the denominators in the second residual.

    A residual that flips sign together with this product is passing
    through a pole, not through zero.
    """
    if np.all(c == 0):
        den = a - 2 * b - np.sqrt(a * a - 4 * b)
    else:
        root = np.sqrt(4 * b + (a + c) ** 2)
        den = (a * a + (b - 1) ** 2 - c * c) * (a + c) * (-2 * b + c + root - a * (3 + 2 * a + 2 * c - 2 * root))
    return np.sign(den)


def residual_f1(params):
    a, b, c = params.abc()
    if not 4 * b + (a + c) ** 2 > 0:
        raise ParameterError("4b + (a+c)^2 must be positive")
    return _f1(a, b, c)


def residual_f2(params):
    a, b, c = params.abc()
    den = a * a + (b - 1) ** 2 - c * c
    if not den > 0:
        raise ParameterError("a^2 + (b-1)^2 - c^2 must be positive")
    if (a * a - c * c) * (a * a - 4 * b - c * c) < 0:
        raise ParameterError("(a^2 - c^2)(a^2 - 4b - c^2) must be nonnegative")
    if a + c == 0:
        raise ParameterError("a + c vanishes")
    root = np.sqrt(4 * b + (a + c) ** 2)
    if -2 * b + c + root - a * (3 + 2 * a + 2 * c - 2 * root) == 0:
        raise ParameterError("denominator of the last term of the F(B) equation vanishes")
    return _f2(a, b, c)


def residuals_c0(a, b):
    """The c = 0 forms of both equations (the second one simplified)."""
    a, b = real(a), real(b)
    if a * a - 4 * b < 0:
        raise ParameterError("a^2 - 4b must be nonnegative")
    if a - 2 * b - np.sqrt(a * a - 4 * b) == 0:
        raise ParameterError("a - 2b - sqrt(a^2 - 4b) vanishes")
    return ResidualPair(_f1_c0(a, b), _f2_c0(a, b))


# -- geometric route ------------------------------------------------------------

def _period2_by_solve(params):
    # fixed point of the affine map F1 o F2: (I - J1 J2) Q = J1 e + e, e = (1, 0)
    J = jacobian(params, Branch.LEFT) @ jacobian(params, Branch.RIGHT)
    rhs = jacobian(params, Branch.LEFT)[:, 0] + np.array([1, 0], dtype=J.dtype)
    A = np.eye(2, dtype=J.dtype) - J
    det = A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]
    x = (A[1, 1] * rhs[0] - A[0, 1] * rhs[1]) / det
    y = (A[0, 0] * rhs[1] - A[1, 0] * rhs[0]) / det
    return x, y, J


def _stable_slope(J):
    tr = J[0, 0] + J[1, 1]
    det = J[0, 0] * J[1, 1] - J[0, 1] * J[1, 0]
    disc = np.sqrt(tr * tr - 4 * det)
    mu = (tr - disc) / 2 if abs(tr - disc) < abs(tr + disc) else (tr + disc) / 2
    # eigenvector (J01, mu - J00) solves the first row
    return (mu - J[0, 0]) / J[0, 1]


def geometric_residuals(params):
    """Both conditions evaluated on iterated points.

    ``r2`` is oriented as ``s2 (x_Q - x_FB) - y_Q`` so that its sign agrees
    with the closed form on the admissible region.
    """
    from .geometry import b_point, d_orbit

    fp = fixed_points(params).X
    xX, yX = fp.point
    _, b, _ = params.abc()
    s = b / fp.eigen.lambda_stable
    orbit = d_orbit(params, 4)
    x4, y4 = orbit[4]
    r1 = y4 - yX - s * (x4 - xX)

    B = b_point(orbit)
    x_fb = 1 + B[1]  # F(0, y) = (1 + y, 0)
    xQ, yQ, J = _period2_by_solve(params)
    r2 = _stable_slope(J) * (xQ - x_fb) - yQ
    return ResidualPair(r1, r2)


# -- sign grid --------------------------------------------------------------------

def _workers():
    n = int(os.environ.get("LOZI_LAB_THREADS", "0") or 0)
    return n if n > 0 else min(8, os.cpu_count() or 1)


def _admissible(a, b, c):
    with np.errstate(divide="ignore", invalid="ignore"):
        return (
            (b > 0) & (b < 1) & (c >= 0)
            & ((2 * a + b) * (1 - c * c / (a + b) ** 2) < 4)
            & ((a - c) * np.sqrt(real(2)) > b + 2)
        )


def _grid_rows(c, a_vals, b_vals):
    A, Bv = np.meshgrid(a_vals, b_vals, indexing="ij")
    with np.errstate(divide="ignore", invalid="ignore"):
        if c == 0:
            r1, r2 = _f1_c0(A, Bv), _f2_c0(A, Bv)
        else:
            r1, r2 = _f1(A, Bv, c), _f2(A, Bv, c)
        pole = _pole_sign(A, Bv, c)
    return r1, r2, np.isfinite(r1) & np.isfinite(r2), _admissible(A, Bv, c), pole


@dataclass
class SignGrid:
    """Residual signs at cell centres; ``r1[i, j]`` is at (a_centers[i], b_centers[j]).

    ``valid`` marks cells where both residuals are defined (radicands and
    denominators fine); ``admissible`` marks cells satisfying A1-A3.  Sign
    changes are searched over valid cells; admissibility is reported
    alongside, since a solution may sit outside the A1-A3 region.
    """

    c: float
    region: tuple
    resolution: tuple
    a_centers: np.ndarray
    b_centers: np.ndarray
    r1: np.ndarray
    r2: np.ndarray
    valid: np.ndarray
    admissible: np.ndarray
    pole_sign: np.ndarray
    components: list = field(default_factory=list)

    @property
    def sign_r1(self):
        return np.where(self.valid, np.sign(self.r1), 0).astype(np.int8)

    @property
    def sign_r2(self):
        return np.where(self.valid, np.sign(self.r2), 0).astype(np.int8)

    def change_blocks(self):
        """Boolean map of 2x2 blocks of valid cells where both residuals change sign.

        Blocks straddling a pole of the second residual are left out.
        """
        s1, s2, v = self.sign_r1, self.sign_r2, self.valid

        def corners(s):
            return np.stack([s[:-1, :-1], s[1:, :-1], s[:-1, 1:], s[1:, 1:]])

        def both_signs(s):
            q = corners(s)
            return (q > 0).any(axis=0) & (q < 0).any(axis=0)

        all_valid = corners(v).all(axis=0)
        return all_valid & both_signs(s1) & both_signs(s2) & ~both_signs(self.pole_sign)

    def change_components(self):
        """Connected groups of sign-change blocks, as (block indices, centre (a, b))."""
        labels, count = ndimage.label(self.change_blocks(), structure=np.ones((3, 3)))
        out = []
        for k in range(1, count + 1):
            idx = np.argwhere(labels == k)
            # block (i, j) is centred between cells i, i+1 and j, j+1
            a = np.mean([(self.a_centers[i] + self.a_centers[i + 1]) / 2 for i, _ in idx])
            b = np.mean([(self.b_centers[j] + self.b_centers[j + 1]) / 2 for _, j in idx])
            out.append((idx, (a, b)))
        return out


def sign_grid(c, region=DEFAULT_REGION, resolution=(100, 100)):
    a_min, a_max, b_min, b_max = (real(v) for v in region)
    na, nb = resolution
    if not (a_max > a_min and b_max > b_min):
        raise ValueError("empty region")
    if na < 2 or nb < 2:
        raise ValueError("resolution must be at least 2x2")
    c = real(c)
    a_vals = a_min + (np.arange(na, dtype=dtype()) + real(0.5)) * (a_max - a_min) / na
    b_vals = b_min + (np.arange(nb, dtype=dtype()) + real(0.5)) * (b_max - b_min) / nb

    chunks = np.array_split(np.arange(na), min(_workers(), na))
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        parts = list(pool.map(lambda rows: _grid_rows(c, a_vals[rows], b_vals), chunks))
    r1 = np.concatenate([p[0] for p in parts])
    r2 = np.concatenate([p[1] for p in parts])
    valid = np.concatenate([p[2] for p in parts])
    admissible = np.concatenate([p[3] for p in parts])
    pole = np.concatenate([p[4] for p in parts])
    grid = SignGrid(c, tuple(region), (na, nb), a_vals, b_vals, r1, r2, valid, admissible, pole)
    grid.components = grid.change_components()
    return grid


# -- root refinement --------------------------------------------------------------

@dataclass
class Solution:
    a: float
    b: float
    c: float
    iterations: int
    residuals: ResidualPair
    geometric: ResidualPair
    converged: bool

    @property
    def params(self):
        return Params(self.a, self.b, self.c)


def _residual_vector(a, b, c):
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.array([_f1(a, b, c), _f2(a, b, c)], dtype=dtype())


def refine(c, a0, b0, tol=1e-12, max_iter=200):
    """Damped Newton on (r1, r2) with a central-difference Jacobian."""
    c = real(c)
    x = np.array([real(a0), real(b0)])
    f = _residual_vector(x[0], x[1], c)
    best = (np.max(np.abs(f)), x.copy())
    polish = 0
    for it in range(1, max_iter + 1):
        h = real(1e-7) * np.maximum(1, np.abs(x))
        J = np.empty((2, 2), dtype=x.dtype)
        for k in range(2):
            e = np.zeros(2, dtype=x.dtype)
            e[k] = h[k]
            J[:, k] = (_residual_vector(*(x + e), c) - _residual_vector(*(x - e), c)) / (2 * h[k])
        det = J[0, 0] * J[1, 1] - J[0, 1] * J[1, 0]
        if det == 0 or not np.isfinite(det):
            break
        step = np.array([J[1, 1] * f[0] - J[0, 1] * f[1], J[0, 0] * f[1] - J[1, 0] * f[0]]) / det
        norm = np.max(np.abs(f))
        lam = real(1)
        for _ in range(40):
            trial = x - lam * step
            ft = _residual_vector(trial[0], trial[1], c)
            if np.all(np.isfinite(ft)) and np.max(np.abs(ft)) <= norm:
                break
            lam /= 2
        else:
            break
        x, f = trial, ft
        if np.max(np.abs(f)) < best[0]:
            best = (np.max(np.abs(f)), x.copy())
        if best[0] < tol:
            # a few extra steps squeeze out the last digits
            polish += 1
            if polish > 2 or np.max(np.abs(step)) == 0:
                break
    a, b = best[1]
    if not best[0] < tol:
        raise ConvergenceError(f"no convergence: best max|r| = {float(best[0]):.3e} at a={a}, b={b}", best=(a, b))
    return a, b, it


def solve_system(c, region=DEFAULT_REGION, tol=1e-12, resolution=(100, 100), grid=None):
    """Bracket a common zero of both residuals on a sign grid, then refine it.

    The first sign-change component of the grid seeds the refinement; use
    :func:`solve_all` to refine every component.
    """
    solutions = solve_all(c, region, tol, resolution, grid=grid, first_only=True)
    return solutions[0]


def solve_all(c, region=DEFAULT_REGION, tol=1e-12, resolution=(100, 100), grid=None, first_only=False):
    grid = sign_grid(c, region, resolution) if grid is None else grid
    if not grid.components:
        raise ConvergenceError("no cell where both residuals change sign in the region")
    out = []
    for _, (a0, b0) in grid.components:
        a, b, iterations = refine(c, a0, b0, tol=tol)
        params = Params(a, b, real(c))
        geo = geometric_residuals(params)
        res = ResidualPair(residual_f1(params), residual_f2(params))
        ok = bool(res.max_abs() < tol and geo.max_abs() < 10 * tol)
        out.append(Solution(a, b, real(c), iterations, res, geo, ok))
        if first_only:
            break
    return out


def segment_root(func, p0, p1, xtol=1e-15):
    """Zero of ``func(t)`` for t in [0, 1] along the segment p0 -> p1 (bisection).

    Returns the parameter point; raises ValueError when the endpoints share a sign.
    """
    from scipy.optimize import brentq

    p0, p1 = np.asarray(p0, dtype=float), np.asarray(p1, dtype=float)
    t = brentq(lambda s: float(func(p0 + s * (p1 - p0))), 0.0, 1.0, xtol=xtol, rtol=4 * np.finfo(float).eps)
    return p0 + t * (p1 - p0)
