"""
Scalar Module

Exact arithmetic for the coefficient field: rational functions over QQ or a
simple algebraic extension QQ(theta), with parsing, printing and
specialization.
"""

from scalar.errors import (
    BlockAlgError,
    ScalarParseError,
    ContextMismatchError,
    FieldError,
    SingularSpecializationError,
    AlgebraError,
    TruncationError,
    QuasifinitenessError,
    RealizationError,
    ModuleDefinitionError,
    EliminationError,
    ShapeError,
    InconsistentSystemError,
)
from scalar.context import (
    FieldContext,
    CUBE_ROOT_OF_UNITY,
    rational_context,
    cyclotomic_context,
)
from scalar.element import Scalar
from scalar.parser import parse_scalar, scalar_from_expr, names_in, infer_context

__all__ = [
    # Errors
    "BlockAlgError",
    "ScalarParseError",
    "ContextMismatchError",
    "FieldError",
    "SingularSpecializationError",
    "AlgebraError",
    "TruncationError",
    "QuasifinitenessError",
    "RealizationError",
    "ModuleDefinitionError",
    "EliminationError",
    "ShapeError",
    "InconsistentSystemError",
    # Contexts
    "FieldContext",
    "CUBE_ROOT_OF_UNITY",
    "rational_context",
    "cyclotomic_context",
    # Values
    "Scalar",
    "parse_scalar",
    "scalar_from_expr",
    "names_in",
    "infer_context",
]
