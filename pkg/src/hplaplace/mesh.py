"""Graded meshes on [0, 1] and composite h-p quadrature rules.

A composite rule glues basic Gauss-Lobatto rules over the intervals of a
graded mesh, merging coincident interval end points by summing their
weights.  Two layers exist: a single-segment composite over [0, 1]
(optionally wrapped closed, for periodic integrands) and the replication
of one segment rule over the segments of a multi-corner closed contour
parameterisation.

Merging is done by index bookkeeping only; no floating-point coincidence
tests are used, since geometric gradings push mesh widths far below any
sensible comparison tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .quadrature import gauss_lobatto


@dataclass(frozen=True)
class Mesh:
    """Mesh points 0 = x_0 < x_1 < ... < x_m = 1."""

    points: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.points, dtype=float)
        if p.ndim != 1 or len(p) < 2:
            raise ValueError("mesh needs at least two points")
        if p[0] != 0.0 or p[-1] != 1.0:
            raise ValueError("mesh must span [0, 1] exactly")
        if not np.all(np.diff(p) > 0):
            raise ValueError("mesh points must be strictly increasing")
        object.__setattr__(self, "points", p)

    @property
    def m(self) -> int:
        """Number of mesh intervals."""
        return len(self.points) - 1

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.points)


def uniform_mesh(m: int) -> Mesh:
    """m equal intervals on [0, 1]."""
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    return Mesh(np.linspace(0.0, 1.0, m + 1))


def algebraic_mesh(m: int, gamma: float) -> Mesh:
    """Algebraically graded mesh x_j = (j/m)^gamma, clustering at 0.

    gamma = 1 degenerates to the uniform mesh; gamma < 1 would push
    points outside the interval and is rejected.
    """
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    if gamma < 1.0:
        raise ValueError(f"algebraic grading needs gamma >= 1, got {gamma}")
    return Mesh((np.arange(m + 1) / m) ** gamma)


def geometric_mesh(m: int, sigma: float) -> Mesh:
    """Geometrically graded mesh x_j = sigma^(m-j), x_0 = 0.

    Interval widths satisfy h_j = (1 - sigma) sigma^(m-j) for j >= 2.
    """
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    if not 0.0 < sigma < 1.0:
        raise ValueError(f"geometric grading needs 0 < sigma < 1, got {sigma}")
    pts = np.empty(m + 1)
    pts[0] = 0.0
    pts[1:] = sigma ** np.arange(m - 1, -1, -1, dtype=float)
    return Mesh(pts)


def symmetric_segment_mesh(D: int, sigma: float) -> Mesh:
    """Segment mesh refined geometrically toward both ends.

    Points are {0, sigma^D, ..., sigma, 1-sigma, ..., 1-sigma^D, 1}:
    2D + 1 intervals, with a wide central interval and D geometrically
    shrinking intervals against each end.  Needs sigma < 1/2 so the two
    halves stay ordered.
    """
    if D < 1:
        raise ValueError(f"need D >= 1, got {D}")
    if not 0.0 < sigma < 0.5:
        raise ValueError(f"symmetric grading needs 0 < sigma < 1/2, got {sigma}")
    left = sigma ** np.arange(D, 0, -1, dtype=float)
    pts = np.concatenate(([0.0], left, 1.0 - left[::-1], [1.0]))
    return Mesh(pts)


@dataclass(frozen=True)
class GradingSpec:
    """Named mesh grading with its parameter.

    kind is one of "uniform", "algebraic", "geometric",
    "symmetric-geometric"; build() materialises the Mesh.
    """

    kind: str
    gamma: float | None = None
    sigma: float | None = None
    depth: int | None = None

    @classmethod
    def uniform(cls) -> "GradingSpec":
        return cls("uniform")

    @classmethod
    def algebraic(cls, gamma: float) -> "GradingSpec":
        if gamma < 1.0:
            raise ValueError(f"algebraic grading needs gamma >= 1, got {gamma}")
        return cls("algebraic", gamma=gamma)

    @classmethod
    def geometric(cls, sigma: float) -> "GradingSpec":
        if not 0.0 < sigma < 1.0:
            raise ValueError(f"geometric grading needs 0 < sigma < 1, got {sigma}")
        return cls("geometric", sigma=sigma)

    @classmethod
    def symmetric_geometric(cls, D: int, sigma: float) -> "GradingSpec":
        if D < 1:
            raise ValueError(f"need D >= 1, got {D}")
        if not 0.0 < sigma < 0.5:
            raise ValueError(f"symmetric grading needs 0 < sigma < 1/2, got {sigma}")
        return cls("symmetric-geometric", sigma=sigma, depth=D)

    def build(self, m: int | None = None) -> Mesh:
        if self.kind == "uniform":
            return uniform_mesh(m)
        if self.kind == "algebraic":
            return algebraic_mesh(m, self.gamma)
        if self.kind == "geometric":
            return geometric_mesh(m, self.sigma)
        if self.kind == "symmetric-geometric":
            return symmetric_segment_mesh(self.depth, self.sigma)
        raise ValueError(f"unknown grading kind {self.kind!r}")


class BoundarySplit(NamedTuple):
    """Weight contributions of a merged node sitting on a segment boundary.

    ``param`` is the boundary parameter (0.0 denotes the 0 == 1 seam of a
    wrapped rule); ``w_below``/``w_above`` are the raw weight parts
    contributed by the intervals just below and above the boundary.
    """

    node: int
    param: float
    w_below: float
    w_above: float


@dataclass(frozen=True)
class CompositeRule:
    """Merged composite quadrature rule over [0, 1].

    Attributes
    ----------
    params : ndarray, shape (N,)
        Node parameters, strictly increasing.  Open rules keep both end
        points; closed (wrapped) rules drop t = 0 and fold its weight
        into the final node at t = 1.
    weights : ndarray, shape (N,)
        Real composite weights; they sum to 1 either way.
    closed : bool
        Whether the rule has been wrapped.
    segment_bounds : ndarray
        Parameters of the contour-segment boundaries covered by the rule
        ([0, 1] for a single segment).
    node_segment : ndarray of int, shape (N,)
        Index of the segment each node belongs to.
    node_depth : ndarray of int, shape (N,)
        1-based index of the node's mesh interval counted from the
        nearest segment end (diagnostic; merged nodes take the minimum).
    boundary_splits : tuple of BoundarySplit
        Per-side weight parts for every node merged across a segment
        boundary; used to absorb one-sided contour tangents.
    """

    params: np.ndarray
    weights: np.ndarray
    closed: bool
    segment_bounds: np.ndarray
    node_segment: np.ndarray
    node_depth: np.ndarray
    boundary_splits: tuple[BoundarySplit, ...]

    @property
    def N(self) -> int:
        return len(self.params)


def _wrap(params, weights, segment, depth, splits):
    # fold the t=0 node into the t=1 node (weights add; indices shift by 1)
    w_first = weights[0]
    w_last = weights[-1]
    params = params[1:].copy()
    weights = weights[1:].copy()
    weights[-1] += w_first
    segment = segment[1:]
    depth = depth[1:]
    splits = [s._replace(node=s.node - 1) for s in splits]
    splits.append(BoundarySplit(node=len(params) - 1, param=0.0,
                                w_below=w_last, w_above=w_first))
    return params, weights, segment, depth, tuple(splits)


def compose_hp_rule(mesh: Mesh, counts, wrap_closed: bool = False) -> CompositeRule:
    """Compose Gauss-Lobatto rules over the mesh intervals.

    counts gives the per-interval point count n_j >= 2 (a scalar is
    broadcast).  Interior mesh points are shared by the adjacent basic
    rules and their weights are summed.  With wrap_closed the t = 0 node
    is merged into the t = 1 node as well, for closed-contour use.
    """
    if np.isscalar(counts):
        counts = [int(counts)] * mesh.m
    counts = [int(c) for c in counts]
    if len(counts) != mesh.m:
        raise ValueError(f"got {len(counts)} counts for {mesh.m} intervals")
    if any(c < 2 for c in counts):
        raise ValueError("every basic rule needs at least 2 points")

    m = mesh.m
    pts = mesh.points
    N = sum(c - 1 for c in counts) + 1
    params = np.empty(N)
    weights = np.zeros(N)
    depth = np.zeros(N, dtype=int)

    def interval_depth(j):  # 1-based interval index from the nearest end
        return min(j, m + 1 - j)

    params[0] = pts[0]
    depth[0] = interval_depth(1)
    pos = 0
    for j, nj in enumerate(counts, start=1):
        rule = gauss_lobatto(nj, pts[j - 1], pts[j])
        weights[pos] += rule.weights[0]
        if pos > 0:
            depth[pos] = min(depth[pos], interval_depth(j))
        k = nj - 1
        params[pos + 1:pos + 1 + k] = rule.nodes[1:]
        weights[pos + 1:pos + 1 + k] = rule.weights[1:]
        depth[pos + 1:pos + 1 + k] = interval_depth(j)
        pos += k

    segment = np.zeros(N, dtype=int)
    splits: list[BoundarySplit] = []
    if wrap_closed:
        params, weights, segment, depth, splits = _wrap(params, weights, segment, depth, splits)
    return CompositeRule(
        params=params,
        weights=weights,
        closed=wrap_closed,
        segment_bounds=np.array([0.0, 1.0]),
        node_segment=segment,
        node_depth=depth,
        boundary_splits=tuple(splits),
    )


def replicate_over_segments(corner_params: Sequence[float],
                            segment_rule: CompositeRule,
                            wrap_closed: bool = True) -> CompositeRule:
    """Affine-copy one open segment rule into each corner-to-corner segment.

    corner_params must be the ordered boundaries 0 = c_0 < ... < c_NC = 1.
    Nodes shared at the internal corners are merged (weights add) and,
    when wrap_closed, the t = 0 node merges into the t = 1 node.  For NC
    identical segments of an S-node rule the result has NC (S - 1) + 1
    nodes open, one fewer wrapped.
    """
    c = np.asarray(corner_params, dtype=float)
    if c.ndim != 1 or len(c) < 2:
        raise ValueError("need at least two corner parameters")
    if c[0] != 0.0 or c[-1] != 1.0 or not np.all(np.diff(c) > 0):
        raise ValueError("corner parameters must be sorted with c_0 = 0, c_NC = 1")
    if segment_rule.closed:
        raise ValueError("segment rule must be open (end points present)")
    t1 = segment_rule.params
    w1 = segment_rule.weights
    if t1[0] != 0.0 or t1[-1] != 1.0:
        raise ValueError("segment rule must span [0, 1]")

    nc = len(c) - 1
    S = segment_rule.N
    if nc == 1:
        params = t1.copy()
        weights = w1.copy()
        segment = np.zeros(S, dtype=int)
        depth = segment_rule.node_depth.copy()
        splits: list[BoundarySplit] = []
    else:
        h = np.diff(c)
        N = nc * (S - 1) + 1
        params = np.empty(N)
        weights = np.zeros(N)
        segment = np.empty(N, dtype=int)
        depth = np.empty(N, dtype=int)
        splits = []
        for k in range(nc):
            lo = k * (S - 1)
            params[lo:lo + S - 1] = c[k] + t1[:-1] * h[k]
            params[lo] = c[k]
            weights[lo] += w1[0] * h[k]
            weights[lo + 1:lo + S - 1] += w1[1:-1] * h[k]
            segment[lo:lo + S - 1] = k
            depth[lo:lo + S - 1] = segment_rule.node_depth[:-1]
            # right end point of this copy merges into the next corner node
            end = lo + S - 1
            weights[end] += w1[-1] * h[k]
            if k < nc - 1:
                splits.append(BoundarySplit(node=end, param=c[k + 1],
                                            w_below=w1[-1] * h[k],
                                            w_above=w1[0] * h[k + 1]))
        params[-1] = 1.0
        segment[-1] = nc - 1
        depth[-1] = segment_rule.node_depth[-1]

    if wrap_closed:
        params, weights, segment, depth, splits = _wrap(params, weights, segment, depth, list(splits))
        splits = list(splits)
    return CompositeRule(
        params=params,
        weights=weights,
        closed=wrap_closed,
        segment_bounds=c,
        node_segment=segment,
        node_depth=depth,
        boundary_splits=tuple(splits),
    )


def hp_counts(D: int) -> list[int]:
    """Point counts {2, 3, ..., D+2, D+1, ..., 3, 2} for a symmetric segment.

    Linear increase away from both segment ends, peaking at D + 2 on the
    central interval; pairs with symmetric_segment_mesh(D, sigma) to give
    an S = (D+1)^2 + 1 node segment rule.
    """
    if D < 1:
        raise ValueError(f"need D >= 1, got {D}")
    return list(range(2, D + 3)) + list(range(D + 1, 1, -1))


def segment_rule(D: int, sigma: float) -> CompositeRule:
    """Open h-p rule over one corner-to-corner segment."""
    return compose_hp_rule(symmetric_segment_mesh(D, sigma), hp_counts(D))
