"""The piecewise-affine family F(x, y) = (1 + y - a|x| - c x, b x).

For c = 0 this is the Lozi map.  The y-axis is the divider: left of it the
map agrees with the affine branch F1(x, y) = (1 + y + (a - c) x, b x), right
of it with F2(x, y) = (1 + y - (a + c) x, b x).
"""

from dataclasses import dataclass
import enum
from typing import NamedTuple

import numpy as np

from .precision import asarray, real


class ParameterError(ValueError):
    """Raised when parameters violate the precondition of an operation."""


class Point(NamedTuple):
    x: float
    y: float


class Vector(NamedTuple):
    dx: float
    dy: float


class Branch(enum.Enum):
    LEFT = "left"    # F1, used for x <= 0
    RIGHT = "right"  # F2, used for x >= 0


@dataclass(frozen=True)
class Params:
    """Parameter triple ``(a, b, c)``.

    Values may be given as numbers or decimal strings; :meth:`abc` converts
    them to the active precision profile on every call, so a ``Params``
    built from strings keeps its full digits under the extended profile.
    """

    a: object
    b: object
    c: object = 0.0

    def abc(self):
        return real(self.a), real(self.b), real(self.c)

    def __str__(self):
        return f"a={self.a}, b={self.b}, c={self.c}"


@dataclass(frozen=True)
class EigenData:
    lambda_unstable: float
    lambda_stable: float
    vec_unstable: Vector
    vec_stable: Vector


@dataclass(frozen=True)
class FixedPoint:
    point: Point
    eigen: EigenData


@dataclass(frozen=True)
class FixedPoints:
    X: FixedPoint  # fixed point of F2, first quadrant
    Y: FixedPoint  # fixed point of F1, third quadrant


def eval_map(params, p):
    a, b, c = params.abc()
    x, y = real(p[0]), real(p[1])
    # branch form, so eval_map and eval_branch agree bit for bit
    slope = (a - c) if x < 0 else -(a + c)
    return Point(1 + y + slope * x, b * x)


def eval_points(params, pts):
    """Vectorised :func:`eval_map` over an ``(n, 2)`` array."""
    a, b, c = params.abc()
    pts = asarray(pts)
    x, y = pts[:, 0], pts[:, 1]
    slope = np.where(x < 0, a - c, -(a + c))
    return np.column_stack([1 + y + slope * x, b * x])


def eval_branch(params, branch, p):
    a, b, c = params.abc()
    x, y = real(p[0]), real(p[1])
    slope = (a - c) if branch is Branch.LEFT else -(a + c)
    return Point(1 + y + slope * x, b * x)


def branch_of(x):
    return Branch.LEFT if x < 0 else Branch.RIGHT


def inverse(params, q):
    a, b, c = params.abc()
    if b == 0:
        raise ParameterError("map is not invertible for b = 0")
    qx, qy = real(q[0]), real(q[1])
    x = qy / b
    return Point(x, qx - 1 + a * abs(x) + c * x)


def jacobian(params, branch):
    a, b, c = params.abc()
    corner = (a - c) if branch is Branch.LEFT else -(a + c)
    return asarray([[corner, 1], [b, 0]])


def _eigen(trace, b):
    # characteristic polynomial: lambda^2 - trace*lambda - b = 0
    root = np.sqrt(trace * trace + 4 * b)
    l_plus, l_minus = (trace + root) / 2, (trace - root) / 2
    if abs(l_plus) > abs(l_minus):
        lu, ls = l_plus, l_minus
    else:
        lu, ls = l_minus, l_plus
    return EigenData(lu, ls, Vector(lu, b), Vector(ls, b))


def eigendata(params, branch):
    a, b, c = params.abc()
    trace = (a - c) if branch is Branch.LEFT else -(a + c)
    return _eigen(trace, b)


def fixed_points(params):
    a, b, c = params.abc()
    den_x = 1 + a - b + c
    den_y = 1 - a - b + c
    if den_x == 0 or den_y == 0:
        raise ParameterError("fixed point denominator 1 +/- a - b + c vanishes")
    X = Point(1 / den_x, b / den_x)
    Y = Point(1 / den_y, b / den_y)
    return FixedPoints(
        X=FixedPoint(X, eigendata(params, Branch.RIGHT)),
        Y=FixedPoint(Y, eigendata(params, Branch.LEFT)),
    )


def period2_point(params):
    """The point Q with Q right of the divider, F(Q) left of it and F^2(Q) = Q."""
    a, b, c = params.abc()
    den = a * a + (b - 1) ** 2 - c * c
    if not den > 0:
        raise ParameterError("a^2 + (b-1)^2 - c^2 must be positive for the period-2 point")
    return Point((1 + a - b - c) / den, -b * (-1 + a + b + c) / den)


def max_expansion(params):
    """Largest unstable eigenvalue modulus over both branches."""
    lu_right = eigendata(params, Branch.RIGHT).lambda_unstable
    lu_left = eigendata(params, Branch.LEFT).lambda_unstable
    return max(abs(lu_right), abs(lu_left))
