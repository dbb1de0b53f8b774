"""Closed basic quadrature rules on finite intervals.

Two families are provided: Gauss-Lobatto rules (maximal degree 2n - 3
among closed rules on n points) and closed Newton-Cotes rules (degree n
for odd n, n - 1 for even n).  Both families include the interval end
points, which is what composite rules over corner meshes require.

Gauss-Lobatto nodes and weights are computed from a bordered symmetric
tridiagonal eigenproblem that prescribes both end points; an independent
construction from the roots of the derivative of the Legendre polynomial
is exposed for cross-validation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from numpy.polynomial import legendre as npleg

GAUSS_LOBATTO = "gauss-lobatto"
NEWTON_COTES = "newton-cotes-closed"

_SOLVE_TOL = 1e-14
_MAX_NEWTON_ITER = 100


class NumericalError(RuntimeError):
    """A solve or eigendecomposition failed for numerical reasons."""


@dataclass(frozen=True)
class QuadratureRule:
    """A basic closed rule {nodes, weights} on [a, b].

    Attributes
    ----------
    family : str
        One of ``GAUSS_LOBATTO`` or ``NEWTON_COTES``.
    a, b : float
        Interval end points, a < b.
    nodes : ndarray, shape (n,)
        Strictly increasing, with nodes[0] == a and nodes[-1] == b.
    weights : ndarray, shape (n,)
        Quadrature weights; sum to b - a.
    degree : int
        Maximal polynomial degree integrated exactly.
    """

    family: str
    a: float
    b: float
    nodes: np.ndarray
    weights: np.ndarray
    degree: int

    @property
    def n(self) -> int:
        """Number of quadrature points."""
        return len(self.nodes)

    def mapped_to(self, a: float, b: float) -> "QuadratureRule":
        """Affine copy of this rule on [a, b]."""
        if a >= b:
            raise ValueError(f"need a < b, got [{a}, {b}]")
        width = (b - a) / (self.b - self.a)
        nodes = a + (self.nodes - self.a) * width
        # pin the end points so composite assembly can rely on them exactly
        nodes[0] = a
        nodes[-1] = b
        return QuadratureRule(
            family=self.family,
            a=a,
            b=b,
            nodes=nodes,
            weights=self.weights * width,
            degree=self.degree,
        )

    def integrate(self, f) -> float:
        """Apply the rule to a callable f."""
        return float(np.dot(self.weights, f(self.nodes)))


def _symmetrize(x: np.ndarray, w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # average mirror pairs about the midpoint to remove eigensolver asymmetry
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    return x, w


def _lobatto_eigen_unit(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights on [-1, 1] from the bordered Jacobi eigenproblem.

    The (n-1) x (n-1) Jacobi matrix of the Legendre recurrence is bordered
    with one extra row/column chosen so that -1 and +1 are eigenvalues of
    the extended matrix; eigenvalues give the nodes and squared first
    eigenvector components give the weights.
    """
    nn = n - 1
    k = np.arange(1, nn)
    off = k / np.sqrt((2.0 * k - 1.0) * (2.0 * k + 1.0))
    J = np.diag(off, -1) + np.diag(off, 1)
    en = np.zeros(nn)
    en[-1] = 1.0
    try:
        gam = np.linalg.solve(J + np.eye(nn), en)
        mu = np.linalg.solve(J - np.eye(nn), en)
        sol = np.linalg.solve(np.array([[1.0, -gam[-1]], [1.0, -mu[-1]]]), np.array([-1.0, 1.0]))
        alpha, beta = sol[0], np.sqrt(sol[1])
        Jb = np.zeros((nn + 1, nn + 1))
        Jb[:nn, :nn] = J
        Jb[nn, :nn] = beta * en
        Jb[:nn, nn] = beta * en
        Jb[nn, nn] = alpha
        vals, vecs = np.linalg.eigh(Jb)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"Lobatto eigensolve failed for n={n}") from exc
    order = np.argsort(vals)
    x = vals[order]
    w = 2.0 * vecs[0, order] ** 2
    x[0], x[-1] = -1.0, 1.0
    return _symmetrize(x, w)


def _legendre_coeffs(deg: int) -> np.ndarray:
    c = np.zeros(deg + 1)
    c[deg] = 1.0
    return c


def lobatto_nodes_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Independent Gauss-Lobatto construction on [-1, 1].

    Interior nodes are the roots of P'_{n-1}, polished by Newton iteration;
    weights come from the closed form 2 / (n (n-1) P_{n-1}(x)^2).  Used to
    cross-validate the eigenvalue construction.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if n == 2:
        return np.array([-1.0, 1.0]), np.array([1.0, 1.0])
    cP = _legendre_coeffs(n - 1)
    cdP = npleg.legder(cP)
    cddP = npleg.legder(cdP)
    x = np.sort(npleg.legroots(cdP).real)
    for _ in range(_MAX_NEWTON_ITER):
        step = npleg.legval(x, cdP) / npleg.legval(x, cddP)
        x = x - step
        if np.max(np.abs(step)) < _SOLVE_TOL:
            break
    else:
        raise NumericalError(f"Newton polish did not converge for n={n}")
    x = np.concatenate(([-1.0], x, [1.0]))
    w = 2.0 / (n * (n - 1) * npleg.legval(x, cP) ** 2)
    return _symmetrize(x, w)


@lru_cache(maxsize=None)
def _lobatto_unit(n: int) -> tuple[np.ndarray, np.ndarray]:
    # cached n-point rule on [0, 1]; arrays are treated as immutable
    if n == 2:
        x = np.array([0.0, 1.0])
        w = np.array([0.5, 0.5])
    elif n == 3:
        x = np.array([0.0, 0.5, 1.0])
        w = np.array([1.0, 4.0, 1.0]) / 6.0
    else:
        xm, wm = _lobatto_eigen_unit(n)
        x = 0.5 * (xm + 1.0)
        w = 0.5 * wm
        x[0], x[-1] = 0.0, 1.0
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_lobatto(n: int, a: float = 0.0, b: float = 1.0) -> QuadratureRule:
    """n-point Gauss-Lobatto rule on [a, b].

    The rule has degree 2n - 3; n = 2 is the trapezoidal rule and n = 3
    is Simpson's rule.

    Parameters
    ----------
    n : int
        Number of points, n >= 2.
    a, b : float
        Interval end points, a < b.
    """
    if n < 2:
        raise ValueError(f"Gauss-Lobatto needs n >= 2, got {n}")
    if a >= b:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    x, w = _lobatto_unit(int(n))
    rule = QuadratureRule(
        family=GAUSS_LOBATTO,
        a=0.0,
        b=1.0,
        nodes=x,
        weights=w,
        degree=2 * n - 3,
    )
    if a == 0.0 and b == 1.0:
        return rule
    return rule.mapped_to(a, b)


# Integer weight columns of the closed Newton-Cotes rules on n = 2..11
# points; each column sums to the normalisation for [0, 1].
_NEWTON_COTES_WEIGHTS = {
    2: [1, 1],
    3: [1, 4, 1],
    4: [1, 3, 3, 1],
    5: [7, 32, 12, 32, 7],
    6: [19, 75, 50, 50, 75, 19],
    7: [41, 216, 27, 272, 27, 216, 41],
    8: [751, 3577, 1323, 2989, 2989, 1323, 3577, 751],
    9: [989, 5888, -928, 10496, -4540, 10496, -928, 5888, 989],
    10: [2857, 15741, 1080, 19344, 5778, 5778, 19344, 1080, 15741, 2857],
    11: [16067, 106300, -48525, 272400, -260550, 427368,
         -260550, 272400, -48525, 106300, 16067],
}


@lru_cache(maxsize=None)
def _newton_cotes_unit(n: int) -> tuple[np.ndarray, np.ndarray]:
    ints = _NEWTON_COTES_WEIGHTS[n]
    total = sum(ints)
    w = np.array([float(Fraction(v, total)) for v in ints])
    x = np.arange(n) / (n - 1)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def newton_cotes_closed(n: int) -> QuadratureRule:
    """Closed Newton-Cotes rule on [0, 1] for n in 2..11.

    Weights are exact rationals from the classical integer tables,
    normalised to sum 1; they turn negative for n >= 9.
    """
    if not 2 <= n <= 11:
        raise ValueError(f"closed Newton-Cotes supports n in 2..11, got {n}")
    x, w = _newton_cotes_unit(int(n))
    return QuadratureRule(
        family=NEWTON_COTES,
        a=0.0,
        b=1.0,
        nodes=x,
        weights=w,
        degree=n if n % 2 == 1 else n - 1,
    )


def error_constant(p: int) -> float:
    """Per-interval error constant C(p) of the degree-p Gauss-Lobatto rule.

    The single-interval error model is e = C(p) h^(p+2) f^(p+1)(xi); this
    constant is used only for diagnostics against observed per-interval
    errors.  C(p) < 0 for every valid p.
    """
    if p < 1 or p % 2 == 0:
        raise ValueError(f"degree must be an odd positive integer, got {p}")
    half = (p - 1) // 2
    num = Fraction((p + 3) * (p + 5)) * Fraction(math.factorial(half)) ** 4
    den = Fraction(4 * (p + 2)) * Fraction(math.factorial(p + 1)) ** 3
    return float(-num / den)
