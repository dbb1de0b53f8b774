"""Collocation solve of the complex boundary integral equation.

For boundary data U on a closed contour, the harmonic conjugate V of the
Laplace solution is recovered at the quadrature nodes by collocating the
discretised Cauchy identity

    sum_j (W_j - W_{k-1/2}) w_j / (zeta_j - zeta_{k-1/2}) = 0

at the parameter midpoints, with W = U + iV and the midpoint values
V_{k-1/2} expressed through Lagrange interpolation from the O nearest
nodes (never across a corner).  Collecting unknowns gives C = B - A with
A the Cauchy-kernel matrix and B the banded interpolation matrix; taking
the real part and differencing consecutive rows removes the two
redundancies (V is real, and only determined up to a constant), leaving
a dense order N-1 system solved by LU with partial pivoting.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .contour import Contour, Discretization, discretize_graded
from .quadrature import NumericalError

_COND_WARN = 1e12


@dataclass(frozen=True)
class InterpolationTables:
    """Stencil indices F, Lagrange weights L and the row shift vector.

    F[k] holds the 0-based indices of the O nodes interpolating the k-th
    collocation point; L[k] the corresponding Lagrange weights (each row
    sums to 1).  The first O/2 rows reference the wrapped seam node N-1
    in column 0, treated as parameter 0.  shift[k] is the starting
    column of the contiguous band in row k of B (-1 for the wrapped head
    rows whose first entry lives in column N-1).
    """

    O: int
    F: np.ndarray
    L: np.ndarray
    shift: np.ndarray


def stencil_table(N: int, NC: int, S: int, O: int) -> np.ndarray:
    """Nearest-node stencil indices per collocation point.

    Away from corners row k reads {k - O/2, ..., k + O/2 - 1}; rows whose
    stencil would cross a segment boundary clamp to the one-sided block
    of O nodes starting or ending at the corner node.
    """
    if O % 2 != 0 or O < 2:
        raise ValueError(f"stencil size O must be even and >= 2, got {O}")
    if O > S - 2:
        raise ValueError(f"stencil size O={O} exceeds the S-2={S - 2} bound")
    NS = S - 1
    if N != NC * NS:
        raise ValueError(f"N={N} inconsistent with NC={NC}, S={S}")
    half = O // 2
    Ft = np.zeros((NS, O), dtype=int)
    Ft[0] = np.arange(O) - 1
    Ft[NS - 1] = np.arange(NS - O, NS)
    Ft[1:half] = Ft[0]
    Ft[NS - half:NS - 1] = Ft[NS - 1]
    for k in range(half, NS - half):
        Ft[k] = Ft[k - 1] + 1
    F = np.vstack([Ft + k * NS for k in range(NC)])
    F[:half, 0] = N - 1  # wraparound through the 0 == 1 seam
    return F


def build_interp_tables(t_nodes: np.ndarray, NC: int, S: int, O: int) -> InterpolationTables:
    """Build F and the Lagrange weight table L in parameter space.

    The weights are evaluated at the parameter midpoints t_{k-1/2} =
    (t_{k-1} + t_k)/2 (with t_0 = 0 at the seam), and formed from the
    node parameters t, never from the complex node positions: contour
    segments are curved.  In the first O/2 rows the seam node keeps
    parameter 0 rather than 1.

    Each numerator t_{k-1/2} - t_nu is evaluated as the mean of the two
    exact differences (t_{k-1} - t_nu) and (t_k - t_nu); this keeps the
    weights accurate on geometrically clustered stencils and makes the
    O = 2 case degenerate to exact halves.
    """
    N = len(t_nodes)
    F = stencil_table(N, NC, S, O)
    half = O // 2
    tF = t_nodes[F].copy()
    tF[:half, 0] = 0.0
    t_lo = np.concatenate(([0.0], t_nodes[:-1]))
    t_hi = t_nodes
    num = 0.5 * ((t_lo[:, None] - tF) + (t_hi[:, None] - tF))
    L = np.ones((N, O))
    for a in range(O):
        for b in range(O):
            if a == b:
                continue
            L[:, a] *= num[:, b] / (tF[:, a] - tF[:, b])
    NS = S - 1
    t2 = np.concatenate([np.full(half, -1, dtype=int),
                         np.arange(NS - O, dtype=int),
                         np.full(half, NS - O, dtype=int)])
    shift = np.concatenate([t2 + k * NS for k in range(NC)])
    return InterpolationTables(O=O, F=F, L=L, shift=shift)


def assemble_A(disc: Discretization) -> tuple[np.ndarray, np.ndarray]:
    """Cauchy-kernel matrix A[k, j] = w_j / (zeta_j - zeta_{k-1/2}) and its row sums H."""
    if disc.N < 2:
        raise ValueError("discretisation too small to collocate")
    denom = disc.zeta_nodes[None, :] - disc.zeta_coll[:, None]
    if np.min(np.abs(denom)) == 0.0:
        raise NumericalError("a collocation point coincides with a node")
    A = disc.weights[None, :] / denom
    return A, A.sum(axis=1)


def assemble_B(tables: InterpolationTables, H: np.ndarray) -> np.ndarray:
    """Banded interpolation matrix: row k holds H_k L[k] at columns F[k].

    The first O/2 rows wrap one entry to column N-1; for O = 2 this
    degenerates to the bidiagonal-with-corner matrix of the linear
    interpolation scheme.
    """
    N = len(H)
    B = np.zeros((N, N), dtype=complex)
    B[np.arange(N)[:, None], tables.F] = tables.L
    return B * H[:, None]


def assemble_and_reduce(A: np.ndarray, B: np.ndarray,
                        U_nodes: np.ndarray, U_coll: np.ndarray,
                        branch: str = "real") -> tuple[np.ndarray, np.ndarray]:
    """Reduce C = B - A to the real order N-1 system.

    The right side is d_k = sum_j A[k, j] (U_coll[k] - U_nodes[j]); the
    "real" branch solves Re(C) V = -Im(d), the "imag" branch Im(C) V =
    Re(d).  Differencing consecutive rows and dropping the last column
    pins the V_N = 0 normalisation.
    """
    C = B - A
    d = (A * (U_coll[:, None] - U_nodes[None, :])).sum(axis=1)
    if branch == "real":
        Cr, dr = C.real, -d.imag
    elif branch == "imag":
        Cr, dr = C.imag, d.real
    else:
        raise ValueError(f"branch must be 'real' or 'imag', got {branch!r}")
    Cs = Cr[1:, :-1] - Cr[:-1, :-1]
    ds = dr[1:] - dr[:-1]
    return Cs, ds


def error_norm(v_true: np.ndarray, v_hat: np.ndarray, weights: np.ndarray,
               kind: str = "weighted2") -> float:
    """Error norms of V - V_hat.

    "weighted2" is sqrt(sum |w_j| e_j^2) with the absorbed complex
    weights; "unweighted2" (the error tables' convention) and "inf" are
    the plain vector norms.
    """
    v_true = np.asarray(v_true, dtype=float)
    v_hat = np.asarray(v_hat, dtype=float)
    if v_true.shape != v_hat.shape:
        raise ValueError("error_norm needs vectors of equal length")
    e = v_true - v_hat
    if kind == "weighted2":
        if np.shape(weights) != v_true.shape:
            raise ValueError("error_norm needs one weight per entry")
        return float(np.sqrt(np.dot(np.abs(weights), e ** 2)))
    if kind == "unweighted2":
        return float(np.linalg.norm(e))
    if kind == "inf":
        return float(np.max(np.abs(e))) if len(e) else 0.0
    raise ValueError(f"unknown norm kind {kind!r}")


@dataclass
class BoundarySolution:
    """Recovered harmonic conjugate on the contour nodes.

    v_hat carries the chosen normalisation in its last entry; w_hat is
    U + i v_hat with the supplied boundary data as real part.  The three
    norms are filled only when a reference solution was supplied.
    """

    disc: Discretization
    tables: InterpolationTables
    u_nodes: np.ndarray
    v_hat: np.ndarray
    w_hat: np.ndarray
    condition: float
    v_true: np.ndarray | None = None
    error: np.ndarray | None = None
    norm_weighted: float | None = None
    norm_unweighted: float | None = None
    norm_inf: float | None = None


def _solve_reduced(Cs: np.ndarray, ds: np.ndarray,
                   least_squares: bool = False) -> tuple[np.ndarray, float]:
    cond = float(np.linalg.cond(Cs, 1))
    if not least_squares and (not np.isfinite(cond) or cond > _COND_WARN):
        import logging

        logging.getLogger(__name__).warning(
            "reduced collocation matrix is ill conditioned (cond_1 ~ %.2e)", cond)
    try:
        if least_squares:
            # the imag split carries a spurious near-null direction; the
            # rank-truncated minimal-norm solution is the meaningful one
            sol, *_ = np.linalg.lstsq(Cs, ds, rcond=1e-10)
            return sol, cond
        return np.linalg.solve(Cs, ds), cond
    except np.linalg.LinAlgError as exc:
        raise NumericalError(
            f"reduced collocation matrix is singular (cond_1 ~ {cond:.2e})") from exc


def solve_boundary(contour: Contour, D: int, sigma: float, O: int,
                   u_boundary, *, v_reference=None, normalization: float | None = None,
                   branch: str = "real",
                   stencil_grading: list[int] | None = None) -> BoundarySolution:
    """Solve for the boundary conjugate V_hat on a graded discretisation.

    Parameters
    ----------
    contour : Contour
    D : int
        Grading depth; every segment gets 2D + 1 intervals and
        S = (D+1)^2 + 1 nodes, so the system has order NC (S-1) - 1.
    sigma : float
        Geometric grading ratio in (0, 1/2).
    O : int
        Interpolation stencil size (even).
    u_boundary : callable
        Boundary data z -> U(z), evaluated at nodes and collocation
        points.
    v_reference : callable, optional
        True conjugate z -> V(z) for test problems; enables the error
        norms and the exact normalisation at the last node.
    normalization : float, optional
        Value pinned at V_hat[N-1].  Defaults to the reference value at
        the last node when v_reference is given, else 0.
    branch : str
        Which real reduction of the complex system to solve.  "real"
        (the default) gives a well-conditioned LU solve;
        "imag" is singular up to a spurious direction and is solved by
        minimal-norm least squares, agreeing with "real" only at the
        discretisation-error level.
    stencil_grading : list of int, optional
        Experimental: per-interval stencil sizes graded by distance from
        the nearest corner (entry d-1 applies at depth d, last entry
        beyond); builds one B per distinct size and splices rows.
    """
    disc = discretize_graded(contour, D, sigma)
    NC = len(contour.corner_params)
    S = (D + 1) ** 2 + 1
    A, H = assemble_A(disc)
    if stencil_grading is None:
        tables = build_interp_tables(disc.t_nodes, NC, S, O)
        B = assemble_B(tables, H)
    else:
        tables, B = _graded_stencil_B(disc, NC, S, stencil_grading, H)
    U_nodes = np.asarray(u_boundary(disc.zeta_nodes), dtype=float)
    U_coll = np.asarray(u_boundary(disc.zeta_coll), dtype=float)
    Cs, ds = assemble_and_reduce(A, B, U_nodes, U_coll, branch=branch)
    v_reduced, cond = _solve_reduced(Cs, ds, least_squares=(branch == "imag"))

    v_hat = np.zeros(disc.N)
    v_hat[:-1] = v_reduced
    if normalization is None:
        if v_reference is not None:
            normalization = float(v_reference(disc.zeta_nodes[-1]))
        else:
            normalization = 0.0
    # the reduced system annihilates constants, so pinning V_hat[N-1]
    # is a plain shift of the whole vector
    v_hat += normalization

    sol = BoundarySolution(
        disc=disc,
        tables=tables,
        u_nodes=U_nodes,
        v_hat=v_hat,
        w_hat=U_nodes + 1j * v_hat,
        condition=cond,
    )
    if v_reference is not None:
        v_true = np.asarray(v_reference(disc.zeta_nodes), dtype=float)
        sol.v_true = v_true
        sol.error = v_true - v_hat
        sol.norm_weighted = error_norm(v_true, v_hat, disc.weights, "weighted2")
        sol.norm_unweighted = error_norm(v_true, v_hat, disc.weights, "unweighted2")
        sol.norm_inf = error_norm(v_true, v_hat, disc.weights, "inf")
    return sol


def _graded_stencil_B(disc, NC, S, o_by_depth, H):
    # splice rows from one B per distinct stencil size; the row's depth is
    # that of the mesh interval holding its collocation point
    sizes = [int(o) for o in o_by_depth]
    if not sizes:
        raise ValueError("stencil grading needs at least one size")
    depth = disc.rule.node_depth
    row_o = np.array([sizes[min(d - 1, len(sizes) - 1)] for d in depth])
    B = np.zeros((disc.N, disc.N), dtype=complex)
    tables = None
    for o in sorted(set(row_o.tolist())):
        tab = build_interp_tables(disc.t_nodes, NC, S, o)
        Bo = assemble_B(tab, H)
        rows = row_o == o
        B[rows] = Bo[rows]
        if tables is None or o == max(row_o):
            tables = tab
    return tables, B


def power_boundary_data(alpha: float):
    """Boundary data pair (U, V) of the test field z^alpha (principal branch)."""

    def u(z):
        return np.real(np.asarray(z, dtype=complex) ** alpha)

    def v(z):
        return np.imag(np.asarray(z, dtype=complex) ** alpha)

    return u, v
