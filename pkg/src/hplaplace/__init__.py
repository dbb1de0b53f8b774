"""Laplace Dirichlet solver on corner domains via complex boundary integrals.

The solution of the Dirichlet problem is recovered as the real part of an
analytic field W = U + iV; V is found on the boundary by collocating a
discretised Cauchy identity on a geometrically graded h-p Gauss-Lobatto
quadrature rule, and the interior field follows from the (singularity
subtracted) Cauchy integral formula.
"""

from .quadrature import (
    GAUSS_LOBATTO,
    NEWTON_COTES,
    NumericalError,
    QuadratureRule,
    error_constant,
    gauss_lobatto,
    lobatto_nodes_legendre,
    newton_cotes_closed,
)
from .mesh import (
    BoundarySplit,
    CompositeRule,
    GradingSpec,
    Mesh,
    algebraic_mesh,
    compose_hp_rule,
    geometric_mesh,
    hp_counts,
    replicate_over_segments,
    segment_rule,
    symmetric_segment_mesh,
    uniform_mesh,
)
from .contour import (
    Contour,
    Discretization,
    discretize,
    discretize_graded,
    make_contour,
    tangent_at_node,
)
from .solver import (
    BoundarySolution,
    InterpolationTables,
    assemble_A,
    assemble_B,
    assemble_and_reduce,
    build_interp_tables,
    error_norm,
    power_boundary_data,
    solve_boundary,
    stencil_table,
)
from .interior import evaluate_naive, evaluate_subtracted
from .studies import (
    StudyResult,
    run_error_table,
    run_contour_study,
    run_h_study,
    run_hp_study,
)

__version__ = "0.1.0"

__all__ = [
    "GAUSS_LOBATTO",
    "NEWTON_COTES",
    "NumericalError",
    "QuadratureRule",
    "error_constant",
    "gauss_lobatto",
    "lobatto_nodes_legendre",
    "newton_cotes_closed",
    "BoundarySplit",
    "CompositeRule",
    "GradingSpec",
    "Mesh",
    "algebraic_mesh",
    "compose_hp_rule",
    "geometric_mesh",
    "hp_counts",
    "replicate_over_segments",
    "segment_rule",
    "symmetric_segment_mesh",
    "uniform_mesh",
    "Contour",
    "Discretization",
    "discretize",
    "discretize_graded",
    "make_contour",
    "tangent_at_node",
    "BoundarySolution",
    "InterpolationTables",
    "assemble_A",
    "assemble_B",
    "assemble_and_reduce",
    "build_interp_tables",
    "error_norm",
    "power_boundary_data",
    "solve_boundary",
    "stencil_table",
    "evaluate_naive",
    "evaluate_subtracted",
    "StudyResult",
    "run_error_table",
    "run_contour_study",
    "run_h_study",
    "run_hp_study",
]
