"""Command-line harness for the convergence studies and boundary solves.

Subcommands
-----------
quad-selftest   verify the basic rule families (degrees, cross-checks)
h-study         fixed-degree composite quadrature on algebraic meshes
hp-study        geometric mesh with linearly graded rule sizes
contour-study   h-p contour integration around the unit circle
solve           one boundary solve of a power test problem
table           (D, O) error-table sweep of boundary solves

Exit codes: 0 success, 2 invalid arguments, 3 numerical failure.
Options may also be supplied through a flat key=value file via
--config; explicit flags win over file entries.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .quadrature import NumericalError, gauss_lobatto, lobatto_nodes_legendre, newton_cotes_closed
from .contour import make_contour
from .solver import power_boundary_data, solve_boundary
from .studies import (
    run_error_table,
    run_contour_study,
    run_h_study,
    run_hp_study,
)

_EXIT_OK = 0
_EXIT_BADARG = 2
_EXIT_NUMERICAL = 3


def _read_config(path):
    conf = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"config line without '=': {line!r}")
            key, val = line.split("=", 1)
            conf[key.strip().replace("-", "_")] = val.strip()
    return conf


def _resolve(args, config, key, default, cast):
    val = getattr(args, key, None)
    if val is not None:
        return val
    if key in config:
        raw = config[key]
        if cast is bool:
            return raw.lower() in ("1", "true", "yes", "on")
        return cast(raw)
    return default


def _emit(result, args):
    csv = result.to_csv()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(csv)
    else:
        sys.stdout.write(csv)
    for key, fit in sorted(result.fits.items()):
        print(f"# fit {key}: slope={fit['slope']:.4f} r2={fit['r_squared']:.5f} "
              f"residual={fit['residual']:.3e}", file=sys.stderr)
    if args.plot:
        from .studies import plot_study

        plot_study(result, args.plot)


def _cmd_quad_selftest(args, config):
    failures = 0

    def report(name, ok):
        nonlocal failures
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
        failures += 0 if ok else 1

    for n in range(2, 11):
        rule = gauss_lobatto(n, 0.0, 1.0)
        ok = True
        for j in range(0, 2 * n - 2):
            q = float(np.dot(rule.weights, rule.nodes ** j))
            ok = ok and abs(q - 1.0 / (j + 1)) * (j + 1) <= 1e-12
        report(f"gauss-lobatto n={n} exact through degree {2 * n - 3}", ok)
        miss = abs(float(np.dot(rule.weights, rule.nodes ** (2 * n - 2))) - 1.0 / (2 * n - 1))
        report(f"gauss-lobatto n={n} not exact at degree {2 * n - 2}", miss > 1e-13)
    for n in range(2, 13):
        rule = gauss_lobatto(n, -1.0, 1.0)
        x2, w2 = lobatto_nodes_legendre(n)
        ok = (np.max(np.abs(rule.nodes - x2)) < 1e-12
              and np.max(np.abs(rule.weights - w2)) < 1e-12)
        report(f"gauss-lobatto n={n} eigen/Legendre agreement", ok)
    for n in range(2, 12):
        rule = newton_cotes_closed(n)
        ok = abs(rule.weights.sum() - 1.0) < 1e-13
        for j in range(0, rule.degree + 1):
            q = float(np.dot(rule.weights, rule.nodes ** j))
            ok = ok and abs(q - 1.0 / (j + 1)) * (j + 1) <= 1e-12
        report(f"newton-cotes n={n} exact through degree {rule.degree}", ok)
    print(f"{'OK' if failures == 0 else 'FAILED'}: "
          f"{failures} failing check(s)")
    return _EXIT_OK if failures == 0 else _EXIT_NUMERICAL


def _cmd_h_study(args, config):
    gammas_raw = _resolve(args, config, "gamma", "1,2,3,4,5,6", str)
    gammas = [float(g) for g in str(gammas_raw).split(",") if g]
    points = _resolve(args, config, "p", 6, int)
    d_max = _resolve(args, config, "dmax", 19, int)
    result = run_h_study(gammas, points=points, d_max=d_max)
    _emit(result, args)
    return _EXIT_OK


def _cmd_hp_study(args, config):
    sigma = _resolve(args, config, "sigma", 0.15, float)
    d_max = _resolve(args, config, "dmax", 19, int)
    result = run_hp_study(sigma, d_max)
    _emit(result, args)
    return _EXIT_OK


def _cmd_contour_study(args, config):
    sigma = _resolve(args, config, "sigma", 0.15, float)
    d_min = _resolve(args, config, "dmin", 8, int)
    d_max = _resolve(args, config, "dmax", 15, int)
    result = run_contour_study(sigma, d_min, d_max)
    _emit(result, args)
    return _EXIT_OK


def _cmd_solve(args, config):
    contour_name = _resolve(args, config, "contour", "teardrop", str)
    alpha = _resolve(args, config, "alpha", 0.5, float)
    sigma = _resolve(args, config, "sigma", 0.10, float)
    D = _resolve(args, config, "D", 9, int)
    O = _resolve(args, config, "O", 6, int)
    norm = _resolve(args, config, "norm", "unweighted2", str)
    code_orientation = bool(_resolve(args, config, "code_orientation", False, bool))
    if norm not in ("weighted2", "unweighted2", "inf"):
        raise ValueError(f"unknown norm {norm!r}")
    kwargs = {"code_orientation": code_orientation} if contour_name == "teardrop" else {}
    contour = make_contour(contour_name, **kwargs)
    u, v = power_boundary_data(alpha)
    sol = solve_boundary(contour, D, sigma, O, u, v_reference=v)
    chosen = {"weighted2": sol.norm_weighted, "unweighted2": sol.norm_unweighted,
              "inf": sol.norm_inf}[norm]
    print(f"contour={contour_name} alpha={alpha:g} sigma={sigma:g} D={D} O={O} "
          f"N={sol.disc.N}")
    print(f"error[{norm}]={chosen:.6e}")
    print(f"error[weighted2]={sol.norm_weighted:.6e} "
          f"error[unweighted2]={sol.norm_unweighted:.6e} "
          f"error[inf]={sol.norm_inf:.6e}")
    print(f"condition={sol.condition:.3e}")
    return _EXIT_OK


def _cmd_table(args, config):
    contour_name = _resolve(args, config, "contour", "teardrop", str)
    alpha = _resolve(args, config, "alpha", 0.5, float)
    sigma = _resolve(args, config, "sigma", 0.10, float)
    d_min = _resolve(args, config, "dmin", 3, int)
    d_max = _resolve(args, config, "dmax", 9, int)
    o_min = _resolve(args, config, "omin", 2, int)
    o_max = _resolve(args, config, "omax", 10, int)
    norm = _resolve(args, config, "norm", "unweighted2", str)
    code_orientation = bool(_resolve(args, config, "code_orientation", False, bool))
    result = run_error_table(contour_name, alpha, sigma,
                             range(d_min, d_max + 1), range(o_min, o_max + 1, 2),
                             norm=norm, code_orientation=code_orientation)
    _emit(result, args)
    return _EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hplaplace", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="flat key=value option file (flags win)")
        p.add_argument("--out", help="write CSV here instead of stdout")
        p.add_argument("--plot", help="write an SVG plot here (needs matplotlib)")

    p = sub.add_parser("quad-selftest", help="verify the basic quadrature rules")
    p.add_argument("--config", help="unused; accepted for symmetry")
    p.set_defaults(func=_cmd_quad_selftest)

    p = sub.add_parser("h-study", help="algebraic-mesh convergence study")
    common(p)
    p.add_argument("--gamma", help="comma-separated grading exponents (default 1,2,3,4,5,6)")
    p.add_argument("--p", type=int, help="points per basic rule (default 6)")
    p.add_argument("--dmax", type=int, help="largest depth; meshes use m = 2D intervals")
    p.set_defaults(func=_cmd_h_study)

    p = sub.add_parser("hp-study", help="geometric-mesh h-p convergence study")
    common(p)
    p.add_argument("--sigma", type=float, help="grading ratio (default 0.15)")
    p.add_argument("--dmax", type=int, help="largest depth (default 19)")
    p.set_defaults(func=_cmd_hp_study)

    p = sub.add_parser("contour-study", help="h-p contour integration study")
    common(p)
    p.add_argument("--sigma", type=float, help="grading ratio (default 0.15)")
    p.add_argument("--dmin", type=int, help="smallest depth (default 8)")
    p.add_argument("--dmax", type=int, help="largest depth (default 15)")
    p.set_defaults(func=_cmd_contour_study)

    p = sub.add_parser("solve", help="solve one boundary problem")
    p.add_argument("--config", help="flat key=value option file (flags win)")
    p.add_argument("--contour", choices=["circle", "teardrop", "cardioid", "wide-teardrop"])
    p.add_argument("--alpha", type=float, help="test field exponent (default 0.5)")
    p.add_argument("--sigma", type=float, help="grading ratio (default 0.10)")
    p.add_argument("--D", type=int, help="grading depth (default 9)")
    p.add_argument("--O", type=int, help="interpolation stencil size (default 6)")
    p.add_argument("--norm", choices=["weighted2", "unweighted2", "inf"])
    p.add_argument("--code-orientation", dest="code_orientation", action="store_const",
                   const=True, help="mirror the teardrop across the real axis")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("table", help="error-table sweep over D and O")
    common(p)
    p.add_argument("--contour", choices=["circle", "teardrop", "cardioid", "wide-teardrop"])
    p.add_argument("--alpha", type=float, help="test field exponent (default 0.5)")
    p.add_argument("--sigma", type=float, help="grading ratio (default 0.10)")
    p.add_argument("--dmin", type=int)
    p.add_argument("--dmax", type=int)
    p.add_argument("--omin", type=int)
    p.add_argument("--omax", type=int)
    p.add_argument("--norm", choices=["weighted2", "unweighted2", "inf"])
    p.add_argument("--code-orientation", dest="code_orientation", action="store_const",
                   const=True)
    p.set_defaults(func=_cmd_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _read_config(args.config) if getattr(args, "config", None) else {}
        return args.func(args, config)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_BADARG
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return _EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
