"""
Intermediate Series Module

Modules of the intermediate series over B(q) as executable action tables,
with module-axiom residuals, eigenvalue checks and reachability probes.
"""

from intseries.families import (
    Family,
    Aab,
    Aa,
    Ba,
    Ap01,
    Extension,
    Trivial,
    Level,
    S,
    ST,
    IntermediateModule,
    GradedVector,
    FAMILIES,
    EXTENSIONS,
    module_texts,
)
from intseries.checks import (
    act,
    act_element,
    bracket_residual,
    Violation,
    window_range,
    verify_module,
    eigen_check,
    ReachabilityReport,
    irreducible_window,
    vir_restriction,
    ObstructionProbe,
    obstruction_probe,
    pullback_module,
    pullback_mismatches,
)

__all__ = [
    # Families and extensions
    "Family",
    "Aab",
    "Aa",
    "Ba",
    "Ap01",
    "Extension",
    "Trivial",
    "Level",
    "S",
    "ST",
    "FAMILIES",
    "EXTENSIONS",
    # Modules
    "IntermediateModule",
    "GradedVector",
    "module_texts",
    # Checks
    "act",
    "act_element",
    "bracket_residual",
    "Violation",
    "window_range",
    "verify_module",
    "eigen_check",
    "ReachabilityReport",
    "irreducible_window",
    "vir_restriction",
    "ObstructionProbe",
    "obstruction_probe",
    "pullback_module",
    "pullback_mismatches",
]
