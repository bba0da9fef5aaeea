"""Constant invariant cone pair for the family.

The unstable cone is ``|dy| <= d |dx|`` and the stable cone is
``(b/d) |dx| <= |dy|``, where ``d`` is the smaller root of
``t^2 - (a - c) t + b = 0``.
"""

from dataclasses import dataclass
import enum

import numpy as np

from .conditions import Condition, ConditionReport
from .core import Branch, ParameterError, jacobian
from .precision import real


class Cone(enum.Enum):
    STABLE = "stable"
    UNSTABLE = "unstable"


@dataclass(frozen=True)
class ConeConstants:
    d: float
    expansion: float  # b/d
    ell_u: float
    ell_s: float


def cone_constants(params):
    a, b, c = params.abc()
    disc = (a - c) ** 2 - 4 * b
    if not disc > 0:
        raise ParameterError(f"cone constants need (a-c)^2 - 4b > 0, got {disc}")
    # 2b / (a - c + sqrt(disc)) equals (a - c - sqrt(disc)) / 2 without the cancellation
    d = 2 * b / (a - c + np.sqrt(disc))
    expansion = b / d
    ell_u = 1 / np.sqrt(1 + d * d)
    ell_s = expansion / np.sqrt(1 + expansion * expansion)
    return ConeConstants(d, expansion, ell_u, ell_s)


def in_cone(cc, which, v):
    dx, dy = real(v[0]), real(v[1])
    if dx == 0 and dy == 0:
        raise ValueError("cone membership is undefined for the zero vector")
    if which is Cone.UNSTABLE:
        return bool(abs(dy) <= cc.d * abs(dx))
    return bool(cc.expansion * abs(dx) <= abs(dy))


def verify_cone_invariance(params, sample_count, rng_seed, tol=1e-12):
    """Sampled check of the forward/backward cone implications.

    For each branch, ``sample_count`` unit vectors are drawn across the
    unstable cone and pushed forward; another ``sample_count`` vectors are
    drawn across the stable cone as *images* and pulled back.  Each report
    entry carries the worst margin of one implication over all samples.
    """
    cc = cone_constants(params)
    a, b, c = params.abc()
    d, lam = cc.d, cc.expansion
    report = ConditionReport()
    if sample_count <= 0:
        return report

    rng = np.random.default_rng(rng_seed)
    # slopes across the cone, both edges included
    t = np.concatenate([[-1.0, 1.0], rng.uniform(-1.0, 1.0, max(sample_count - 2, 0))])[:sample_count]
    sign = np.where(rng.random(sample_count) < 0.5, -1.0, 1.0)
    dtype = np.asarray(d).dtype

    u = np.column_stack([sign, t * d]).astype(dtype)
    u /= np.hypot(u[:, 0], u[:, 1])[:, None]
    # stable images: y' = +-1, |x'| <= d/b
    w = np.column_stack([t * d / b, sign]).astype(dtype)
    w /= np.hypot(w[:, 0], w[:, 1])[:, None]

    for branch in (Branch.LEFT, Branch.RIGHT):
        J = jacobian(params, branch)
        tag = branch.value
        img = u @ J.T
        x, y = np.abs(u[:, 0]), np.abs(u[:, 1])
        xp, yp = np.abs(img[:, 0]), np.abs(img[:, 1])
        report.add(Condition.ge(f"unstable-invariant[{tag}]", np.min(d * xp - yp), tol=tol))
        report.add(Condition.ge(f"unstable-growth-x[{tag}]", np.min(xp - lam * x), tol=tol))
        report.add(Condition.ge(f"unstable-growth-y[{tag}]", np.min(yp - lam * y), tol=tol))

        pre = _pull_back(J, w)
        x, y = np.abs(pre[:, 0]), np.abs(pre[:, 1])
        xp, yp = np.abs(w[:, 0]), np.abs(w[:, 1])
        report.add(Condition.ge(f"stable-invariant[{tag}]", np.min(d * y - b * x), tol=tol))
        report.add(Condition.ge(f"stable-contract-x[{tag}]", np.min(d * x - xp), tol=tol))
        report.add(Condition.ge(f"stable-contract-y[{tag}]", np.min(d * y - yp), tol=tol))
    return report


def _pull_back(J, w):
    # inverse of [[p, 1], [b, 0]] is [[0, 1/b], [1, -p/b]]
    p, b = J[0, 0], J[1, 0]
    x = w[:, 1] / b
    y = w[:, 0] - p * x
    return np.column_stack([x, y])
