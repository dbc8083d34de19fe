"""
Exact parsing of scalar text.

Grammar: integer literals, indeterminate names of the context, theta in
extension contexts, + - * / ^ ** and parentheses. Decimal literals and
unknown names are rejected.
"""
import logging
import re
from fractions import Fraction
from tokenize import TokenError
from typing import Iterable, List

from sympy import Add, Float, Integer, Mul, Number, Pow, Rational, Symbol
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)

from scalar.context import CUBE_ROOT_OF_UNITY, FieldContext
from scalar.element import Scalar
from scalar.errors import ScalarParseError

logger = logging.getLogger(__name__)

_TRANSFORMATIONS = standard_transformations + (convert_xor,)


def parse_scalar(context: FieldContext, text: str) -> Scalar:
    """
    Parse scalar text into a canonical Scalar of the given context.

    Args:
        context: Field context supplying the allowed names
        text: e.g. "(8*b*(1-b)*(2*b-1)*q*(1+q)^3*(1+2*q)*a0)"

    Returns:
        Scalar

    Raises:
        ScalarParseError: With the column of the offending token when known
    """
    if not isinstance(text, str):
        raise ScalarParseError(repr(text), "expected a string")
    stripped = text.strip()
    if not stripped:
        raise ScalarParseError(text, "empty expression", 1)
    column = _decimal_column(stripped)
    if column is not None:
        raise ScalarParseError(text, "decimal literals are not exact", column)

    names = {name: Symbol(name) for name in context.variables}
    if context.is_extension:
        names[context.generator] = Symbol(context.generator)
    try:
        expr = parse_expr(stripped, local_dict=names, transformations=_TRANSFORMATIONS, evaluate=True)
    except SyntaxError as e:
        raise ScalarParseError(text, e.msg or "invalid syntax", e.offset)
    except TokenError as e:
        position = e.args[1] if len(e.args) > 1 else None
        column = position[1] + 1 if isinstance(position, tuple) else None
        raise ScalarParseError(text, str(e.args[0]), column)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise ScalarParseError(text, str(e))
    return scalar_from_expr(context, expr, text)


def _decimal_column(text: str):
    for i, ch in enumerate(text):
        if ch == "." and (
            (i > 0 and text[i - 1].isdigit()) or (i + 1 < len(text) and text[i + 1].isdigit())
        ):
            return i + 1
    return None


def scalar_from_expr(context: FieldContext, expr, text: str = "") -> Scalar:
    """Convert a sympy expression built from integers and context names into a Scalar."""
    if isinstance(expr, Float):
        raise ScalarParseError(text, "floating point values are not allowed")
    if isinstance(expr, (Integer, Rational)):
        return context.constant(_fraction(expr))
    if isinstance(expr, Number):
        raise ScalarParseError(text, f"unsupported number {expr}")
    if isinstance(expr, Symbol):
        name = expr.name
        if context.is_extension and name == context.generator:
            return context.theta
        if context.has_variable(name):
            return context.var(name)
        known = ", ".join(context.variables) or "none"
        raise ScalarParseError(text, f"unknown name {name!r} (known: {known})", _find(text, name))
    if isinstance(expr, Add):
        total = context.zero
        for arg in expr.args:
            total = total + scalar_from_expr(context, arg, text)
        return total
    if isinstance(expr, Mul):
        product = context.one
        for arg in expr.args:
            product = product * scalar_from_expr(context, arg, text)
        return product
    if isinstance(expr, Pow):
        base, exponent = expr.args
        if not isinstance(exponent, Integer):
            raise ScalarParseError(text, f"non-integer exponent {exponent}")
        value = scalar_from_expr(context, base, text)
        try:
            return value ** int(exponent)
        except ZeroDivisionError as e:
            raise ScalarParseError(text, str(e))
    raise ScalarParseError(text, f"unsupported expression {expr}")


def _fraction(value) -> Fraction:
    return Fraction(int(value.p), int(value.q))


def _find(text: str, name: str):
    position = text.find(name)
    return position + 1 if position >= 0 else None


_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def names_in(texts: Iterable[str], exclude: Iterable[str] = ()) -> List[str]:
    """Identifiers used in scalar texts, in order of first appearance."""
    skip = set(exclude)
    seen: List[str] = []
    for text in texts:
        for name in _NAME.findall(text or ""):
            if name not in skip and name not in seen:
                seen.append(name)
    return seen


def infer_context(
    texts: Iterable[str],
    modulus=None,
    required: Iterable[str] = (),
) -> FieldContext:
    """
    Smallest context in which every text parses.

    Args:
        texts: Scalar texts (e.g. the fields of a JSON input file)
        modulus: Minimal polynomial of theta, or None for QQ
        required: Names that must be present even if unused

    Returns:
        FieldContext with the names sorted alphabetically
    """
    exclude = ("theta",) if modulus is not None else ()
    names = set(names_in(texts, exclude=exclude)) | set(required)
    if "theta" in names and modulus is None:
        names.discard("theta")
        modulus = CUBE_ROOT_OF_UNITY
    logger.debug(f"inferred context names {sorted(names)} (modulus={modulus})")
    return FieldContext(sorted(names), modulus=modulus)
