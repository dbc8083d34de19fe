"""
Constraints Module

Formal unknown sequences, constraint identities derived from module axioms,
the case systems with their determinants, fraction-free elimination, and
the q = -1/2 and q = -1 case analyses.
"""

from constraints.formal import (
    IndexExpr,
    Unknown,
    FormalExpr,
    FormalVector,
    FormalAction,
    shifted_d,
    sequence,
    as_scalar,
)
from constraints.linear import (
    FormalSystem,
    LinearSolution,
    bareiss_det,
    det3,
    coeff_extract,
    monomial_support,
    eliminate,
    solve_linear,
    solve_nullspace,
)
from constraints.block_case import (
    CASE_VARIABLES,
    case_context,
    h_coeffs,
    EquationDerivation,
    derive_equ_element,
    bracket_coefficients,
    derived_rows,
    f_coeff,
    g_coeff,
    case_unknowns,
    assemble_case_system,
    case_determinant,
    displayed_coefficients,
    DeterminantReport,
    determinant_report,
    OmegaResult,
    omega_pipeline,
    QOneFallback,
    q_one_fallback,
)
from constraints.half import (
    Q_HALF,
    HalfIdentities,
    half_context,
    expected_identity,
    displayed_instances,
    q_half_identities,
)
from constraints.minus_one import (
    SUBCASES,
    Claim,
    CaseAnalysis,
    minus_one_context,
    eqa1,
    eqa2,
    eqb1,
    eqb2,
    eqb3,
    eqb4,
    eqc1,
    eqc2,
    subcase_23_action,
    zero_mode_claim,
    f_level,
    main_system,
    spike_branch,
    q_minus1_systems,
)

__all__ = [
    # Formal expressions
    "IndexExpr",
    "Unknown",
    "FormalExpr",
    "FormalVector",
    "FormalAction",
    "shifted_d",
    "sequence",
    "as_scalar",
    # Systems and linear algebra
    "FormalSystem",
    "LinearSolution",
    "bareiss_det",
    "det3",
    "coeff_extract",
    "monomial_support",
    "eliminate",
    "solve_linear",
    "solve_nullspace",
    # Case systems
    "CASE_VARIABLES",
    "case_context",
    "h_coeffs",
    "EquationDerivation",
    "derive_equ_element",
    "bracket_coefficients",
    "derived_rows",
    "f_coeff",
    "g_coeff",
    "case_unknowns",
    "assemble_case_system",
    "case_determinant",
    "displayed_coefficients",
    "DeterminantReport",
    "determinant_report",
    "OmegaResult",
    "omega_pipeline",
    "QOneFallback",
    "q_one_fallback",
    # q = -1/2
    "Q_HALF",
    "HalfIdentities",
    "half_context",
    "expected_identity",
    "displayed_instances",
    "q_half_identities",
    # q = -1
    "SUBCASES",
    "Claim",
    "CaseAnalysis",
    "minus_one_context",
    "eqa1",
    "eqa2",
    "eqb1",
    "eqb2",
    "eqb3",
    "eqb4",
    "eqc1",
    "eqc2",
    "subcase_23_action",
    "zero_mode_claim",
    "f_level",
    "main_system",
    "spike_branch",
    "q_minus1_systems",
]
