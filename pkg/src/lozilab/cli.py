"""Command-line front end: ``lozilab {check,attractor,knead,regions,solve}``.

Exit codes: 0 success, 1 failed conditions or numerical failure, 2 bad
arguments.
"""

import argparse
import json
import sys

import numpy as np

from . import export
from .conditions import Condition, check_all, check_assumptions, check_structure
from .core import ParameterError, Params
from .geometry import GeometryError, attractor_orbit, triangle_invariance
from .precision import PROFILES, precision
from .solver import ConvergenceError, sign_grid, solve_all
from .symbolic import kneading_sequence, reliable_length


def _number(text):
    # validate now, keep the text so extended runs parse it at full precision
    try:
        float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    return text


def _positive(text):
    value = float(_number(text))
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _count(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {text!r}")
    return value


def _range(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected LO,HI, got {text!r}")
    lo, hi = (float(_number(p.strip())) for p in parts)
    if not hi > lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _grid_spec(text):
    parts = text.lower().split("x")
    try:
        w, h = (int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected WxH, got {text!r}") from None
    if w < 2 or h < 2:
        raise argparse.ArgumentTypeError(f"grid must be at least 2x2, got {text!r}")
    return w, h


def _num(v):
    return np.format_float_positional(v, unique=True, trim="-")


def _sci(v):
    return np.format_float_scientific(v, precision=3)


def _param_args(p, c_default="0"):
    p.add_argument("--a", type=_number, required=True)
    p.add_argument("--b", type=_number, required=True)
    p.add_argument("--c", type=_number, default=c_default)


def _params(args):
    return Params(args.a, args.b, args.c)


def build_parser():
    parser = argparse.ArgumentParser(prog="lozilab", description=__doc__.splitlines()[0])
    parser.add_argument("--precision", choices=sorted(PROFILES), default="double")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="evaluate every parameter condition")
    _param_args(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("attractor", help="sample an attractor orbit to CSV/SVG")
    _param_args(p)
    p.add_argument("--iters", type=_count, default=10_000)
    p.add_argument("--transient", type=_count, default=1_000)
    p.add_argument("--out", required=True, help="CSV path")
    p.add_argument("--svg", help="optional SVG scatter path")
    p.add_argument("--y-stretch", type=_positive, default=1.0)
    p.add_argument("--radius", type=_positive, default=0.002)
    p.set_defaults(func=cmd_attractor)

    p = sub.add_parser("knead", help="kneading sequence of a turning point")
    _param_args(p)
    p.add_argument("--turning-index", type=_count, default=1, help="0 is F(D), 1 is S")
    p.add_argument("--length", type=_count, default=17)
    p.add_argument("--precision", dest="knead_precision", choices=sorted(PROFILES))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_knead)

    p = sub.add_parser("regions", help="sign map of both kneading equations")
    p.add_argument("--c", type=_number, default="0")
    p.add_argument("--grid", type=_grid_spec, default=(100, 100), help="WxH cells (a by b)")
    p.add_argument("--a-range", type=_range, default=(1.0, 2.0))
    p.add_argument("--b-range", type=_range, default=(0.0, 1.0))
    p.add_argument("--out", required=True, help="output path ending in .ppm or .csv")
    p.set_defaults(func=cmd_regions)

    p = sub.add_parser("solve", help="solve both kneading equations for (a, b)")
    p.add_argument("--c", type=_number, default="0")
    p.add_argument("--a-range", type=_range, default=(1.0, 2.0))
    p.add_argument("--b-range", type=_range, default=(0.0, 1.0))
    p.add_argument("--tol", type=_positive, default=1e-12)
    p.add_argument("--grid", type=_grid_spec, default=(100, 100))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)
    return parser


def cmd_check(args):
    params = _params(args)
    try:
        report = check_all(params)
    except (ParameterError, GeometryError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if check_structure(params).passed:
        ok, margin = triangle_invariance(params)
        report.add(Condition("triangle-invariance", ok, margin))
    if args.json:
        print(report.to_json(indent=2))
    else:
        print(f"parameters a={args.a} b={args.b} c={args.c}")
        print(report)
        if not report.passed:
            print(f"failed: {', '.join(report.failed())}")
    return 0 if report.passed else 1


def cmd_attractor(args):
    params = _params(args)
    if args.out.lower().endswith(".ppm"):
        print("error: --out takes a CSV path", file=sys.stderr)
        return 2
    try:
        orbit = attractor_orbit(params, args.iters, args.transient)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    export.write_points_csv(args.out, orbit)
    if args.svg:
        export.write_svg(args.svg, orbit, y_stretch=args.y_stretch, radius=args.radius)
    print(f"wrote {len(orbit)} points to {args.out}")
    return 0


def cmd_knead(args):
    params = _params(args)
    try:
        seq = kneading_sequence(params, args.turning_index, args.length)
        budget = reliable_length(params)
    except (ParameterError, GeometryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.length > budget:
        print(
            f"warning: length {args.length} exceeds reliable_length {budget} "
            f"under the {args.active_precision} profile",
            file=sys.stderr,
        )
    if args.json:
        print(json.dumps({"sequence": seq.symbols, "reliable_length": seq.reliable_length,
                          "profile_reliable_length": budget, "precision": args.active_precision}))
    else:
        print(seq.symbols)
        print(f"reliable_length {seq.reliable_length}")
    return 0


def cmd_regions(args):
    region = (*args.a_range, *args.b_range)
    out = args.out.lower()
    if not (out.endswith(".ppm") or out.endswith(".csv")):
        print("error: --out must end in .ppm or .csv", file=sys.stderr)
        return 2
    grid = sign_grid(args.c, region, args.grid)
    if out.endswith(".ppm"):
        export.write_grid_ppm(args.out, grid)
    else:
        export.write_grid_csv(args.out, grid)
    print(f"wrote {args.grid[0]}x{args.grid[1]} grid to {args.out}")
    print(f"sign-change components: {len(grid.components)}")
    for blocks, (a, b) in grid.components:
        print(f"  near a={float(a):.6f} b={float(b):.6f} ({len(blocks)} blocks)")
    return 0


def cmd_solve(args):
    region = (*args.a_range, *args.b_range)
    try:
        solutions = solve_all(args.c, region, tol=args.tol, resolution=args.grid)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.best is not None:
            print(f"best a={_num(exc.best[0])} b={_num(exc.best[1])}")
        return 1
    rows = []
    for sol in solutions:
        verdicts = check_assumptions(sol.params)
        rows.append({
            "a": _num(sol.a), "b": _num(sol.b), "c": _num(sol.c),
            "iterations": sol.iterations, "converged": sol.converged,
            "r1": float(sol.residuals.r1), "r2": float(sol.residuals.r2),
            "geometric_r1": float(sol.geometric.r1), "geometric_r2": float(sol.geometric.r2),
            "assumptions": [e.to_dict() for e in verdicts.entries],
        })
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        for k, (sol, row) in enumerate(zip(solutions, rows)):
            if len(solutions) > 1:
                print(f"solution {k + 1} of {len(solutions)}")
            print(f"a = {row['a']}")
            print(f"b = {row['b']}")
            print(f"c = {row['c']}")
            print(f"residuals  r1 {_sci(sol.residuals.r1)}  r2 {_sci(sol.residuals.r2)}")
            print(f"geometric  r1 {_sci(sol.geometric.r1)}  r2 {_sci(sol.geometric.r2)}")
            print(f"iterations {sol.iterations}, converged {sol.converged}")
            for e in check_assumptions(sol.params).entries:
                print(f"  {e.name} {'holds' if e.holds else 'fails'} (margin {float(e.margin):.6e})")
    return 0 if all(s.converged for s in solutions) else 1


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    profile = getattr(args, "knead_precision", None) or args.precision
    args.active_precision = profile
    with precision(profile):
        return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
