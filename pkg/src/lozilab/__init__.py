"""Numerics for the three-parameter Lozi-like family F(x, y) = (1 + y - a|x| - cx, bx)."""

from .precision import get_precision, precision, set_precision
from .core import (
    Branch,
    EigenData,
    ParameterError,
    Params,
    Point,
    Vector,
    eval_branch,
    eval_map,
    eval_points,
    fixed_points,
    inverse,
    jacobian,
    period2_point,
)
from .conditions import (
    check_structure,
    Condition,
    ConditionReport,
    check_all,
    check_assumptions,
    check_derived,
    check_geometry,
    slopes,
)
from .cones import Cone, ConeConstants, cone_constants, in_cone, verify_cone_invariance
from .geometry import (
    GeometryError,
    Polygon,
    Polyline,
    attractor_orbit,
    distinguished_points,
    grow_unstable_manifold,
    map_polygon,
    triangle,
    triangle_invariance,
    turning_points,
)
from .symbolic import SymbolSequence, compare_sequences, itinerary, kneading_sequence, reliable_length
from .solver import (
    ConvergenceError,
    ResidualPair,
    SignGrid,
    geometric_residuals,
    residual_f1,
    residual_f2,
    residuals_c0,
    sign_grid,
    solve_system,
)

# Parameter values (30 digits) at which both kneading equations hold.
SOLVED_C0 = Params("1.65531960296885174459210852526", "0.276507107967726099812119447619", "0")
SOLVED_C01 = Params("1.63537454884191587958622457986", "0.276988367360779957370639853557", "0.1")

__version__ = "0.1.0"
