"""Closed parameterised contours and their collocation discretisation.

Each contour is a map gamma : [0, 1] -> C with gamma(0) = gamma(1),
smooth inside (0, 1); genuine corners therefore only show up through the
0 == 1 seam, where the two one-sided tangents differ.  Smooth contours
(the circle) can still carry "artificial corners": parameters that act
as segment boundaries for meshing without any tangent jump.

discretize() maps a closed composite rule through the contour, forms the
parameter-midpoint collocation points, and absorbs the contour tangent
into the weights.  At nodes merged across a segment boundary the tangent
is absorbed per side before summing, which is what a corner requires.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .mesh import CompositeRule, replicate_over_segments, segment_rule

_TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class Contour:
    """Closed anticlockwise-parameterised boundary with optional corners.

    corner_params hold the segment boundaries in [0, 1) used for meshing;
    the parameterisation seam t = 0 is always one of them.
    """

    name: str
    gamma: Callable[[np.ndarray], np.ndarray]
    gamma_dot: Callable[[np.ndarray], np.ndarray]
    corner_params: tuple[float, ...]

    def __post_init__(self):
        if abs(self.gamma(0.0) - self.gamma(1.0)) > 1e-12:
            raise ValueError("contour must close: gamma(0) != gamma(1)")
        cp = tuple(float(c) for c in self.corner_params)
        if len(cp) == 0 or cp[0] != 0.0 or any(not 0.0 <= c < 1.0 for c in cp):
            raise ValueError("corner parameters must start at 0 and lie in [0, 1)")
        if any(b <= a for a, b in zip(cp, cp[1:])):
            raise ValueError("corner parameters must be strictly increasing")
        object.__setattr__(self, "corner_params", cp)

    @property
    def segment_bounds(self) -> np.ndarray:
        return np.array(self.corner_params + (1.0,))

    def one_sided_tangents(self, c: float) -> tuple[complex, complex]:
        """Tangent limits (from below, from above) at parameter c.

        The parametric formulas are smooth inside (0, 1), so the only
        place the limits can differ is the seam c = 0 (equivalently 1),
        where "below" means t -> 1-.
        """
        below = complex(self.gamma_dot(1.0 if c in (0.0, 1.0) else c))
        above = complex(self.gamma_dot(0.0 if c == 1.0 else c))
        return below, above


def tangent_at_node(contour: Contour, t: float) -> complex:
    """Contour tangent at parameter t; the mean of both limits at a corner."""
    if t in contour.corner_params or t in (0.0, 1.0):
        below, above = contour.one_sided_tangents(t)
        return 0.5 * (below + above)
    return complex(contour.gamma_dot(t))


def make_contour(name: str, *, segments: int | None = None,
                 code_orientation: bool = False,
                 angle_deg: float = 20.0) -> Contour:
    """Build a named contour from the catalog.

    Parameters
    ----------
    name : str
        "circle", "teardrop", "cardioid" or "wide-teardrop".
    segments : int, optional
        Number of artificial segments for the circle (default 4); the
        other contours have a single corner at t = 0.
    code_orientation : bool
        Mirror the teardrop across the real axis (imaginary part
        negated).  Only the teardrop has the two conventions.
    angle_deg : float
        Corner opening angle of the wide teardrop, in degrees.
    """
    key = name.lower().replace("_", "-")
    if key in ("circle", "unit-circle"):
        nseg = 4 if segments is None else int(segments)
        if nseg < 1:
            raise ValueError(f"need at least one segment, got {nseg}")
        corners = tuple(k / nseg for k in range(nseg))
        return Contour(
            name="circle",
            gamma=lambda t: np.exp(2j * np.pi * np.asarray(t, dtype=float)),
            gamma_dot=lambda t: _TWO_PI * 1j * np.exp(2j * np.pi * np.asarray(t, dtype=float)),
            corner_params=corners,
        )
    if segments is not None:
        raise ValueError(f"segments only applies to the circle, not {name!r}")
    if key == "teardrop":
        s = -1.0 if code_orientation else 1.0

        def gamma(t, s=s):
            t = np.asarray(t, dtype=float)
            return 2.0 * np.sin(np.pi * t) + s * 1j * np.sin(2.0 * np.pi * t)

        def gamma_dot(t, s=s):
            t = np.asarray(t, dtype=float)
            return _TWO_PI * (np.cos(np.pi * t) + s * 1j * np.cos(2.0 * np.pi * t))

        return Contour(name="teardrop", gamma=gamma, gamma_dot=gamma_dot,
                       corner_params=(0.0,))
    if key == "cardioid":

        def gamma(t):
            t = np.asarray(t, dtype=float)
            return (-1.0 + np.cos(2.0 * np.pi * t)) * np.exp(2j * np.pi * t)

        def gamma_dot(t):
            t = np.asarray(t, dtype=float)
            ph = np.exp(2j * np.pi * t)
            return -_TWO_PI * ph * (np.sin(2.0 * np.pi * t) + 1j * (1.0 - np.cos(2.0 * np.pi * t)))

        return Contour(name="cardioid", gamma=gamma, gamma_dot=gamma_dot,
                       corner_params=(0.0,))
    if key == "wide-teardrop":
        a = 2.0 / (3.0 * np.tan(angle_deg * np.pi / 360.0))

        def gamma(t, a=a):
            t = np.asarray(t, dtype=float)
            return -a * np.sin(3.0 * np.pi * t) - 1j * np.sin(2.0 * np.pi * t)

        def gamma_dot(t, a=a):
            t = np.asarray(t, dtype=float)
            return -_TWO_PI * (1.5 * a * np.cos(3.0 * np.pi * t) + 1j * np.cos(2.0 * np.pi * t))

        return Contour(name="wide-teardrop", gamma=gamma, gamma_dot=gamma_dot,
                       corner_params=(0.0,))
    raise ValueError(f"unknown contour {name!r}")


@dataclass(frozen=True)
class Discretization:
    """Nodes, collocation points and absorbed weights on a contour.

    weights holds the complex products w_j * gamma_dot_j used by every
    discretised Cauchy sum; weights_raw keeps the underlying real
    composite-rule weights.
    """

    contour: Contour
    rule: CompositeRule
    t_nodes: np.ndarray
    t_coll: np.ndarray
    zeta_nodes: np.ndarray
    zeta_coll: np.ndarray
    weights_raw: np.ndarray
    weights: np.ndarray

    @property
    def N(self) -> int:
        return len(self.t_nodes)


def discretize(contour: Contour, rule: CompositeRule) -> Discretization:
    """Map a closed composite rule through the contour.

    Collocation points are the parameter midpoints t_{k-1/2} =
    (t_{k-1} + t_k)/2 (t_0 = 0), mapped through gamma; they never
    coincide with nodes or corners.  Tangents are absorbed into the
    weights, per side at nodes merged across segment boundaries.
    """
    if not rule.closed:
        raise ValueError("discretisation needs a closed (wrapped) composite rule")
    if not np.allclose(rule.segment_bounds, contour.segment_bounds, rtol=0, atol=1e-15):
        raise ValueError("composite-rule segments do not match the contour corners")

    tn = rule.params
    tc = tn - np.diff(np.concatenate(([0.0], tn))) / 2.0
    absorbed = rule.weights * np.asarray(contour.gamma_dot(tn), dtype=complex)
    for split in rule.boundary_splits:
        below, above = contour.one_sided_tangents(split.param)
        absorbed[split.node] = split.w_below * below + split.w_above * above
    return Discretization(
        contour=contour,
        rule=rule,
        t_nodes=tn,
        t_coll=tc,
        zeta_nodes=np.asarray(contour.gamma(tn), dtype=complex),
        zeta_coll=np.asarray(contour.gamma(tc), dtype=complex),
        weights_raw=rule.weights,
        weights=absorbed,
    )


def discretize_graded(contour: Contour, D: int, sigma: float) -> Discretization:
    """Standard discretisation: symmetric geometric grading on every segment.

    Builds the S = (D+1)^2 + 1 node h-p segment rule, replicates it over
    the contour's segments and wraps it closed, giving N = NC (S - 1)
    nodes in total.
    """
    rule = replicate_over_segments(contour.segment_bounds, segment_rule(D, sigma),
                                   wrap_closed=True)
    return discretize(contour, rule)
