"""Exact slack matrices and slack ideals of polytopes.

Modules
-------
exactmath   rationals, dense rational matrices, fraction-free rank
polyring    sparse polynomials over Q and monomial orders
groebner    Buchberger, elimination, saturation, dimension
polytope    facets, slack matrices, slack conditions, flags
slackideal  symbolic slack matrices, minors, (affine) slack ideals
analyses    realizability, rationality and prescribability probes
"""

__version__ = "0.1.0"

from .exactmath import RationalMatrix, in_column_span, rank, solve_linear
from .groebner import (
    Budget,
    BudgetExhausted,
    GroebnerBasis,
    IdealBasis,
    buchberger,
    dimension,
    eliminate,
    ideal_membership,
    is_trivial,
    reduce,
    saturate,
    saturate_all_vars,
)
from .polyring import GREVLEX, LEX, MonomialOrder, Polynomial, elimination_order, parse_polynomial
from .polytope import (
    HRepresentation,
    IncidenceStructure,
    VRepresentation,
    check_slack_conditions,
    enumerate_facets,
    flag_submatrix,
    normalize_s1,
    realize_from_slack,
    row_scale_to_true,
    slack_matrix,
)
from .slackideal import (
    ScalingFix,
    SymbolicSlackMatrix,
    affine_slack_ideal,
    evaluate_on_variety,
    fix_variables_by_scaling,
    scale_to_fix,
    slack_ideal,
    symbolic_minors,
    symbolic_slack_matrix,
)
from .analyses import AnalysisReport, prescribability_probe, rationality_probe, realizability_probe

__all__ = [
    "AnalysisReport",
    "Budget",
    "BudgetExhausted",
    "GREVLEX",
    "GroebnerBasis",
    "HRepresentation",
    "IdealBasis",
    "IncidenceStructure",
    "LEX",
    "MonomialOrder",
    "Polynomial",
    "RationalMatrix",
    "ScalingFix",
    "SymbolicSlackMatrix",
    "VRepresentation",
    "affine_slack_ideal",
    "buchberger",
    "check_slack_conditions",
    "dimension",
    "eliminate",
    "elimination_order",
    "enumerate_facets",
    "evaluate_on_variety",
    "fix_variables_by_scaling",
    "flag_submatrix",
    "ideal_membership",
    "in_column_span",
    "is_trivial",
    "normalize_s1",
    "parse_polynomial",
    "prescribability_probe",
    "rank",
    "rationality_probe",
    "realizability_probe",
    "realize_from_slack",
    "reduce",
    "row_scale_to_true",
    "saturate",
    "saturate_all_vars",
    "scale_to_fix",
    "slack_ideal",
    "slack_matrix",
    "solve_linear",
    "symbolic_minors",
    "symbolic_slack_matrix",
]
