"""Convergence studies and error-table sweeps with CSV output.

Each study returns a StudyResult: parameter/error rows in a fixed order,
least-squares slope estimates over the asymptotic range, and metadata.
CSV serialisation is deterministic (fixed formatting and row order) so
identical parameters give byte-identical files; timestamps stay in the
metadata and never enter the CSV.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np

from .contour import make_contour
from .mesh import algebraic_mesh, compose_hp_rule, geometric_mesh, replicate_over_segments, segment_rule
from .quadrature import NumericalError
from .solver import power_boundary_data, solve_boundary

# rows at or below this error sit on the roundoff plateau and are
# excluded from slope fits
PLATEAU = 100.0 * np.finfo(float).eps


@dataclass
class StudyResult:
    """Rows of one parameter sweep plus slope diagnostics."""

    name: str
    columns: list[str]
    rows: list[tuple]
    metadata: dict = field(default_factory=dict)
    fits: dict = field(default_factory=dict)

    def to_csv(self) -> str:
        out = [",".join(self.columns)]
        for row in self.rows:
            cells = []
            for v in row:
                if isinstance(v, float):
                    cells.append(f"{v:.12e}")
                else:
                    cells.append(str(v))
            out.append(",".join(cells))
        return "\n".join(out) + "\n"

    def write_csv(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_csv())


def _fit_line(x, y):
    # least-squares slope/intercept with R^2 and residual norm
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    A = np.vstack([x, np.ones_like(x)]).T
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - A @ coef
    ss_res = float(np.dot(resid, resid))
    ss_tot = float(np.dot(y - y.mean(), y - y.mean()))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return {"slope": float(coef[0]), "intercept": float(coef[1]),
            "r_squared": r2, "residual": math.sqrt(ss_res)}


def _valid(errors):
    return np.asarray(errors) > PLATEAU


def fit_loglog_slope(N_values, errors) -> dict:
    """Slope of log10(error) vs log10(N) over the last half of valid rows."""
    N_values = np.asarray(N_values, dtype=float)
    errors = np.asarray(errors, dtype=float)
    keep = _valid(errors)
    Nv, ev = N_values[keep], errors[keep]
    if len(Nv) < 2:
        return {"slope": float("nan"), "intercept": float("nan"),
                "r_squared": float("nan"), "residual": float("nan")}
    half = len(Nv) // 2
    return _fit_line(np.log10(Nv[half:]), np.log10(ev[half:]))


def fit_sqrtn_line(N_values, errors) -> dict:
    """Linear fit of log10(error) vs sqrt(N) over all pre-plateau rows."""
    N_values = np.asarray(N_values, dtype=float)
    errors = np.asarray(errors, dtype=float)
    keep = _valid(errors)
    if keep.sum() < 2:
        return {"slope": float("nan"), "intercept": float("nan"),
                "r_squared": float("nan"), "residual": float("nan")}
    return _fit_line(np.sqrt(N_values[keep]), np.log10(errors[keep]))


def singular_integrand(x):
    """Test integrand 1 - (3/2) sqrt(x); its integral over [0, 1] is 0.

    The computed quadrature value therefore *is* the error.
    """
    return 1.0 - 1.5 * np.sqrt(x)


def _now():
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def run_h_study(gammas, points: int = 6, d_max: int = 19) -> StudyResult:
    """Fixed-degree composite quadrature on algebraic meshes.

    For each grading exponent gamma, integrates the square-root test
    integrand on meshes of m = 2D intervals (D = 1..d_max) with the
    ``points``-point Gauss-Lobatto rule (degree 2*points - 3) on every
    interval.  The log-log slope approaches -min(3 gamma / 2, degree+1).
    """
    if points < 2:
        raise ValueError(f"need points >= 2, got {points}")
    gammas = [float(g) for g in gammas]
    if any(g < 1.0 for g in gammas):
        raise ValueError("algebraic grading needs gamma >= 1")
    degree = 2 * points - 3
    rows = []
    fits = {}
    for g in gammas:
        Ns, errs = [], []
        for D in range(1, d_max + 1):
            m = 2 * D
            rule = compose_hp_rule(algebraic_mesh(m, g), points)
            err = abs(float(np.dot(rule.weights, singular_integrand(rule.params))))
            rows.append((g, rule.N, err))
            Ns.append(rule.N)
            errs.append(err)
        fit = fit_loglog_slope(Ns, errs)
        fit["theory"] = -min(1.5 * g, degree + 1.0)
        fits[f"gamma={g:g}"] = fit
    return StudyResult(
        name="h-study",
        columns=["param_gamma", "N", "error"],
        rows=rows,
        metadata={"points": points, "degree": degree, "d_max": d_max,
                  "integrand": "1 - 1.5 sqrt(x)", "timestamp": _now()},
        fits=fits,
    )


def run_hp_study(sigma: float = 0.15, d_max: int = 19) -> StudyResult:
    """Geometric mesh with linearly increasing rule sizes.

    Interval j of the m = D + 1 interval mesh carries a (j+1)-point rule,
    so N = m (m + 1) / 2 + 1; log10(error) against sqrt(N) is a straight
    line down to the roundoff plateau.
    """
    if not 0.0 < sigma < 1.0:
        raise ValueError(f"need 0 < sigma < 1, got {sigma}")
    rows = []
    Ns, errs = [], []
    for D in range(1, d_max + 1):
        m = D + 1
        rule = compose_hp_rule(geometric_mesh(m, sigma), list(range(2, D + 3)))
        err = abs(float(np.dot(rule.weights, singular_integrand(rule.params))))
        rows.append((sigma, rule.N, err))
        Ns.append(rule.N)
        errs.append(err)
    fits = {"sqrtN": fit_sqrtn_line(Ns, errs)}
    return StudyResult(
        name="hp-study",
        columns=["param_sigma", "N", "error"],
        rows=rows,
        metadata={"sigma": sigma, "d_max": d_max,
                  "integrand": "1 - 1.5 sqrt(x)", "timestamp": _now()},
        fits=fits,
    )


def contour_integrand(z):
    """sqrt((z - 1)/i) / z on the principal branch.

    Around the unit circle the residue at 0 gives the loop integral
    2 pi i sqrt(i); the integrand has a derivative singularity at z = 1.
    """
    z = np.asarray(z, dtype=complex)
    return np.sqrt((z - 1.0) / 1j) / z


def run_contour_study(sigma: float = 0.15, d_min: int = 8, d_max: int = 15) -> StudyResult:
    """h-p contour integration of a root-singular integrand on the circle.

    Two artificial corners (at z = 1 and z = -1) anchor the grading; the
    reported error is |1 - I / (2 pi i sqrt(i))|, which decays like an
    exponential in sqrt(N).
    """
    if not 0.0 < sigma < 0.5:
        raise ValueError(f"need 0 < sigma < 1/2, got {sigma}")
    if d_min < 1 or d_max < d_min:
        raise ValueError("need 1 <= d_min <= d_max")
    circle = make_contour("circle", segments=2)
    exact = 2j * np.pi * np.sqrt(1j)
    rows = []
    Ns, errs = [], []
    for D in range(d_min, d_max + 1):
        rule = replicate_over_segments(circle.segment_bounds, segment_rule(D, sigma),
                                       wrap_closed=True)
        from .contour import discretize

        disc = discretize(circle, rule)
        approx = np.sum(disc.weights * contour_integrand(disc.zeta_nodes))
        err = abs(1.0 - approx / exact)
        rows.append((sigma, D, disc.N, err))
        Ns.append(disc.N)
        errs.append(err)
    fits = {"sqrtN": fit_sqrtn_line(Ns, errs)}
    return StudyResult(
        name="contour-study",
        columns=["param_sigma", "param_D", "N", "error"],
        rows=rows,
        metadata={"sigma": sigma, "d_min": d_min, "d_max": d_max,
                  "integrand": "sqrt((z-1)/i)/z", "timestamp": _now()},
        fits=fits,
    )


def run_error_table(contour_name: str = "teardrop", alpha: float = 0.5,
                    sigma: float = 0.10, d_range=range(3, 10), o_range=range(2, 11, 2),
                    norm: str = "unweighted2", code_orientation: bool = False) -> StudyResult:
    """Error-table sweep of the boundary solve over a (D, O) grid.

    Every grid cell is solved independently; cells whose solve fails
    record an infinite error, and a row (fixed D) whose best error
    exceeds 1 is flagged as diverged.  Rows are emitted sorted by N then
    O regardless of execution order.
    """
    d_list = sorted(int(d) for d in d_range)
    o_list = sorted(int(o) for o in o_range)
    if any(o % 2 for o in o_list):
        raise ValueError("stencil sizes must be even")
    contour = make_contour(contour_name, code_orientation=code_orientation) \
        if contour_name == "teardrop" else make_contour(contour_name)
    u, v = power_boundary_data(alpha)
    rows = []
    for D in d_list:
        errs = {}
        for O in o_list:
            S = (D + 1) ** 2 + 1
            if O > S - 2:
                errs[O] = float("inf")
                continue
            try:
                sol = solve_boundary(contour, D, sigma, O, u, v_reference=v)
            except NumericalError:
                errs[O] = float("inf")
                continue
            errs[O] = {"weighted2": sol.norm_weighted,
                       "unweighted2": sol.norm_unweighted,
                       "inf": sol.norm_inf}[norm]
        diverged = min(errs.values()) > 1.0
        N = len(contour.corner_params) * (D + 1) ** 2
        for O in o_list:
            rows.append((D, O, N, errs[O], int(diverged)))
    return StudyResult(
        name="error-table",
        columns=["param_D", "param_O", "N", "error", "diverged"],
        rows=rows,
        metadata={"contour": contour_name, "alpha": alpha, "sigma": sigma,
                  "norm": norm, "code_orientation": code_orientation,
                  "timestamp": _now()},
    )


def plot_study(result: StudyResult, path) -> None:
    """Write an SVG scatter/line plot of a study (requires matplotlib)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4.5))
    cols = result.columns
    n_idx = cols.index("N")
    e_idx = cols.index("error")
    group_idx = 0 if cols[0].startswith("param_") else None
    groups = {}
    for row in result.rows:
        key = row[group_idx] if group_idx is not None else ""
        groups.setdefault(key, []).append((row[n_idx], row[e_idx]))
    sqrt_axis = result.name in ("hp-study", "contour-study")
    for key, pts in groups.items():
        pts = sorted(pts)
        N = np.array([p[0] for p in pts], dtype=float)
        e = np.array([max(p[1], 1e-300) for p in pts])
        x = np.sqrt(N) if sqrt_axis else np.log10(N)
        label = f"{cols[group_idx]}={key:g}" if group_idx is not None else result.name
        ax.plot(x, np.log10(e), "-+", label=label)
    ax.set_xlabel("sqrt(N)" if sqrt_axis else "log10(N)")
    ax.set_ylabel("log10(error)")
    ax.grid(True)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
