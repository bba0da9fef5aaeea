"""Parameter conditions with signed margins.

Margins are in the natural units of each inequality: ``lhs - rhs`` arranged
so that a positive value means the inequality is satisfied.
"""

from dataclasses import dataclass, field
import json
import math

import numpy as np

from .core import ParameterError
from .precision import real

SQRT2 = math.sqrt(2.0)


@dataclass
class Condition:
    name: str
    holds: bool
    margin: float | None
    strict: bool = False
    applicable: bool = True
    tol: float = 0.0

    @classmethod
    def gt(cls, name, margin):
        return cls(name, bool(margin > 0), margin, strict=True)

    @classmethod
    def ge(cls, name, margin, tol=0.0):
        return cls(name, bool(margin >= -tol), margin, strict=False, tol=tol)

    @classmethod
    def not_applicable(cls, name, strict=False):
        return cls(name, True, None, strict=strict, applicable=False)

    def to_dict(self):
        out = {
            "condition": self.name,
            "holds": self.holds,
            "margin": None if self.margin is None else float(self.margin),
            "strict": self.strict,
        }
        if not self.applicable:
            out["applicable"] = False
        return out


@dataclass
class ConditionReport:
    entries: list = field(default_factory=list)

    def add(self, entry):
        self.entries.append(entry)
        return entry

    def extend(self, other):
        self.entries.extend(other.entries)
        return self

    @property
    def passed(self):
        return all(e.holds for e in self.entries)

    def failed(self):
        return [e.name for e in self.entries if not e.holds]

    def __getitem__(self, name):
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def __contains__(self, name):
        return any(e.name == name for e in self.entries)

    def to_json(self, **kwargs):
        return json.dumps([e.to_dict() for e in self.entries], **kwargs)

    def __str__(self):
        lines = []
        for e in self.entries:
            if not e.applicable:
                lines.append(f"{e.name:28s} n/a")
                continue
            flag = "ok  " if e.holds else "FAIL"
            rel = ">" if e.strict else ">="
            lines.append(f"{e.name:28s} {flag} margin {float(e.margin): .6e} ({rel} 0)")
        return "\n".join(lines)


def check_assumptions(params):
    """Standing assumptions A1-A3 (all strict)."""
    a, b, c = params.abc()
    report = ConditionReport()
    # c >= 0 is the only non-strict part of A1; a negative c dominates the margin
    a1 = min(b, 1 - b) if c >= 0 else c
    report.add(Condition.gt("A1", a1))
    report.add(Condition.gt("A2", 4 - (2 * a + b) * (1 - c * c / (a + b) ** 2)))
    report.add(Condition.gt("A3", (a - c) * np.sqrt(real(2)) - (b + 2)))
    return report


def is_admissible(params):
    try:
        return check_assumptions(params).passed
    except (ZeroDivisionError, FloatingPointError):
        return False


def require_admissible(params):
    report = check_assumptions(params)
    if not report.passed:
        raise ParameterError(f"parameters ({params}) violate {', '.join(report.failed())}")
    return report


def check_structure(params):
    """Prerequisites of the geometric constructions, weaker than A1-A3.

    The manifold, turning points and itineraries only need the standing
    sign conditions, real cone constants, X right of the divider, F(D)
    right of it and F^2(D) in the second quadrant.  Every admissible triple
    passes; so does the c = 0.1 solution of the kneading equations, which misses A3.
    """
    a, b, c = params.abc()
    report = ConditionReport()
    report.add(Condition.gt("A1", min(b, 1 - b) if c >= 0 else c))
    report.add(Condition.gt("cone-discriminant", (a - c) ** 2 - 4 * b))
    den = 1 + a - b + c
    report.add(Condition.gt("X-right", den))
    if not report.passed:
        return report
    root = np.sqrt((a + c) ** 2 + 4 * b)
    x1 = (2 + a + c + root) / (2 * den)
    x2 = 1 - (a + c) * x1
    report.add(Condition.gt("FD1-right", x1))
    report.add(Condition.gt("FD2-second-quadrant", min(-x2, b * x1)))
    return report


def require_structure(params):
    report = check_structure(params)
    if not report.passed:
        raise ParameterError(f"parameters ({params}) violate {', '.join(report.failed())}")
    return report


def c4_bound(a, c):
    return (a - c) * (2 * a * a + 3 * a + (2 * a + 1) * c) / (4 * (a + 1) ** 2)


def check_derived(params):
    """Consequences C1-C5 of the standing assumptions."""
    a, b, c = params.abc()
    report = ConditionReport()
    report.add(Condition.gt("C1", 2 * (1 + np.sqrt(1 + c * c)) - (2 * a + b)))
    report.add(Condition.gt("C2", min(min(a - b - 1, real(1)) - c, a - b - 1)))
    if a >= 1:
        rhs = real(7) / 16 * a - (3 * c * c + 2 * c + 2) / 16
        report.add(Condition.ge("C3", c4_bound(a, c) - rhs))
    else:
        report.add(Condition.not_applicable("C3"))
    report.add(Condition.ge("C4", min(c4_bound(a, c), real(0.5)) - b))
    root = np.sqrt((a + c) ** 2 + 4 * b)
    lhs = a ** 3 - 4 * a + a * a * c - a * c * c - c ** 3 - 4 * b * c
    report.add(Condition.ge("C5", lhs - (-a * a + 2 * b + c * c) * root))
    return report


@dataclass(frozen=True)
class SlopeData:
    s: float     # line through X and M (stable direction of X)
    s13: float   # line through F(D) and F^3(D)
    s23: float   # line through F^2(D) and F^3(D)
    s2: float    # stable direction of F1 o F2 at the period-2 point
    y_M: float


def _nonzero(value, what):
    if value == 0 or not np.isfinite(value):
        raise ParameterError(f"{what} vanishes or is not finite")
    return value


def _positive(value, what):
    if not value > 0:
        raise ParameterError(f"{what} must be positive, got {value}")
    return value


def slopes(params):
    a, b, c = params.abc()
    root = np.sqrt(_positive(4 * b + (a + c) ** 2, "4b + (a+c)^2"))
    den_s = _nonzero(-a - c + root, "-a - c + sqrt(4b + (a+c)^2)")
    den_x = _nonzero(1 + a - b + c, "1 + a - b + c")
    s = 2 * b / den_s
    y_M = b / den_x - 2 * b / (den_x * den_s)
    s13 = b * (3 * a - c + root) / _nonzero(-2 * b + 4 * a * (a - c), "-2b + 4a(a-c)")
    s23 = 2 * b * b / _nonzero(
        2 * a * a + a * (3 * b + 2 * c - 2 * root) - b * (c + root),
        "2a^2 + a(3b + 2c - 2r) - b(c + r)",
    )
    rad = _positive((a * a - 2 * b - c * c) ** 2 - 4 * b * b, "(a^2 - 2b - c^2)^2 - 4b^2")
    s2 = 2 * b * (a + c) / _nonzero(a * a - c * c - np.sqrt(rad), "a^2 - c^2 - sqrt(...)")
    return SlopeData(s, s13, s23, s2, y_M)


def check_geometry(params):
    """Geometric conditions L3/L4 through the closed-form slope tests.

    ``AppA`` is ``F^3(D)`` left of the line through X and M, ``AppB`` is the
    intersection of that line with the line through F(D), F^3(D) lying right
    of the divider, ``AppC`` is ``F^4(D)`` right of the line through F^2(D),
    F^3(D) (only relevant when F^3(D) is left of the divider).
    """
    from .cones import cone_constants
    from .geometry import d_orbit

    require_admissible(params)
    sd = slopes(params)
    pts = d_orbit(params, 4)
    (x1, _), (x2, y2), (x3, y3), (x4, y4) = pts[1], pts[2], pts[3], pts[4]

    report = ConditionReport()
    report.add(Condition.gt("L4", cone_constants(params).expansion - np.sqrt(real(2))))
    app_a = report.add(Condition.gt("AppA", y3 - (sd.s * x3 + sd.y_M)))
    x_N = (sd.y_M + sd.s13 * x1) / (sd.s13 - sd.s)
    app_b = report.add(Condition.gt("AppB", x_N))
    if x3 < 0:
        x_P = x2 + (y4 - y2) / sd.s23
        report.add(Condition.gt("AppC", x4 - x_P))
    else:
        report.add(Condition.not_applicable("AppC", strict=True))
    l3 = app_a.holds and app_b.holds
    report.add(Condition("L3", l3, min(app_a.margin, app_b.margin), strict=True))
    return report


def check_all(params):
    """Assumptions, derived conditions and (if admissible) geometry in one report."""
    report = check_assumptions(params)
    report.extend(check_derived(params))
    if report.passed:
        report.extend(check_geometry(params))
    return report


def lozi_triangle_contains(a, b):
    """Open triangle bounded by b = 0, 2a + b = 4 and a*sqrt(2) = b + 2."""
    return b > 0 and 2 * a + b < 4 and a * SQRT2 > b + 2
