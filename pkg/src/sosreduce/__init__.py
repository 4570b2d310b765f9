"""Monomial reduction and simplification for sum-of-squares programs.

Exact rational arithmetic throughout: polynomials, Gram systems, the
convex-hull LP and the exported SDP data are all built from ``Fraction``.
"""
from .basis import MonomialBasis, count_monomials, full_basis, heuristic_init
from .gram import (
    Equation,
    GramConstraintSystem,
    GramMatrix,
    InfeasibilityCertificate,
    build_gram_system,
    deactivate,
    evaluate_gram,
    is_psd,
)
from .newton import (
    PointSet,
    ScreenResult,
    caratheodory_membership,
    even_vertex_screen,
    hull_membership,
    newton_reduce,
    polytope_vertices,
)
from .poly import (
    Polynomial,
    PolynomialSyntaxError,
    degree,
    format_polynomial,
    multiply,
    parse_polynomial,
    sum_of_squares,
)
from .ratlp import LpFeasibilityProblem, LpOutcome, LpStatus, lp_feasible
from .sdpio import (
    PrimalSdpData,
    ReductionReport,
    export_report_json,
    export_sdpa_sparse,
    parse_program_json,
    report_from_json,
    to_primal_form,
)
from .simplify import (
    AffineSosConstraint,
    ProgramSystem,
    Sign,
    SimplificationReport,
    SosProgram,
    build_program_system,
    simplify_program,
)
from .zda import ZdaResult, ZdaStatus, find_forced_zero_diagonals, zda_reduce, zda_reduce_polynomial

__version__ = "0.1.0"
