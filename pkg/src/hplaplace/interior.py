"""Evaluation of the recovered analytic field at interior points.

The naive discretised Cauchy formula degrades badly as the evaluation
point approaches the boundary (the kernel becomes nearly singular).
Dividing by the discretised Cauchy integral of the constant 1 cancels
the leading quadrature error and keeps near-boundary evaluation
accurate; that ratio form is the default.

No interiority test is performed; callers assert that z lies inside the
contour.  A vanishing denominator in the ratio form flags a point that
is almost certainly exterior, where the true denominator integral is 0.
"""

from __future__ import annotations

import numpy as np

from .contour import Discretization
from .quadrature import NumericalError

_EXTERIOR_TOL = 1e-13


def evaluate_naive(w_nodes: np.ndarray, disc: Discretization, z):
    """Plain discretised Cauchy formula (1/2 pi i) sum W_j w_j / (zeta_j - z).

    Accurate only well away from the boundary.  z may be a scalar or an
    array; z must not coincide with a quadrature node.
    """
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    zz = np.atleast_1d(z)
    diff = disc.zeta_nodes[None, :] - zz[:, None]
    if np.min(np.abs(diff)) == 0.0:
        raise NumericalError("evaluation point coincides with a quadrature node")
    vals = (w_nodes * disc.weights / diff).sum(axis=1) / (2j * np.pi)
    return complex(vals[0]) if scalar else vals


def evaluate_subtracted(w_nodes: np.ndarray, disc: Discretization, z):
    """Singularity-subtracted interior evaluation.

    W(z) ~ [sum W_j w_j / (zeta_j - z)] / [sum w_j / (zeta_j - z)];
    exact for constant data on any discretisation, and far more accurate
    than the naive formula near the boundary.
    """
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    zz = np.atleast_1d(z)
    diff = disc.zeta_nodes[None, :] - zz[:, None]
    if np.min(np.abs(diff)) == 0.0:
        raise NumericalError("evaluation point coincides with a quadrature node")
    kernel = disc.weights / diff
    den = kernel.sum(axis=1)
    if np.min(np.abs(den)) < _EXTERIOR_TOL:
        raise NumericalError(
            "denominator nearly zero: evaluation point is likely outside the contour")
    vals = (w_nodes * kernel).sum(axis=1) / den
    return complex(vals[0]) if scalar else vals
