"""
Exception hierarchy shared by every blockalg package.

Library code raises these; main.py turns them into exit codes.
"""
from typing import Optional


class BlockAlgError(Exception):
    """Base class for all blockalg errors."""


class ScalarParseError(BlockAlgError, ValueError):
    """Raised when scalar text cannot be parsed exactly."""

    def __init__(self, text: str, message: str, column: Optional[int] = None):
        self.text = text
        self.column = column
        where = f" at column {column}" if column is not None else ""
        super().__init__(f"parse error{where}: {message} in {text!r}")


class ContextMismatchError(BlockAlgError, TypeError):
    """Raised when values from two different field contexts are combined."""


class FieldError(BlockAlgError, ValueError):
    """Raised for an invalid field context."""


class SingularSpecializationError(BlockAlgError, ZeroDivisionError):
    """Raised when a substitution annihilates a denominator."""

    def __init__(self, factor: str, message: Optional[str] = None):
        self.factor = factor
        super().__init__(message or f"singular specialization: denominator factor {factor} vanishes")


class AlgebraError(BlockAlgError, ValueError):
    """Raised for invalid operations on the Block type algebra."""


class TruncationError(BlockAlgError, ValueError):
    """Raised when a computation needs labels beyond the truncation depth."""


class QuasifinitenessError(BlockAlgError, ValueError):
    """Raised when a characteristic polynomial is requested but not detected."""

    def __init__(self, verdict: str, message: str):
        self.verdict = verdict
        super().__init__(message)


class RealizationError(BlockAlgError, ValueError):
    """Raised when a quasipolynomial cannot be realized as a label sequence."""


class ModuleDefinitionError(BlockAlgError, ValueError):
    """Raised for a module whose extension is invalid for its q."""


class EliminationError(BlockAlgError, ArithmeticError):
    """Raised when an elimination pivot vanishes identically."""


class ShapeError(BlockAlgError, ValueError):
    """Raised when a system has the wrong shape for the requested operation."""


class InconsistentSystemError(BlockAlgError, ArithmeticError):
    """Raised when a linear system has no solution."""
