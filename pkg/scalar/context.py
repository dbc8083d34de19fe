"""
Field contexts for exact scalar arithmetic.

A context is the rational function field over either QQ or a simple
algebraic extension QQ[theta]/(m(theta)), in a fixed ordered list of named
indeterminates. Contexts with the same base and names compare equal and
share the same underlying sympy field.
"""
import logging
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Iterable, Optional, Sequence, Tuple, Union

from sympy import Poly, Symbol, QQ
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)
from sympy.polys.fields import FracField
from sympy.polys.orderings import grlex

from scalar.errors import FieldError

logger = logging.getLogger(__name__)

MAX_EXTENSION_DEGREE = 4
DEFAULT_GENERATOR = "theta"

# minimal polynomial of a primitive cube root of unity
CUBE_ROOT_OF_UNITY = "theta^2 + theta + 1"

ModulusLike = Union[str, Sequence[int]]


def _modulus_poly(modulus: ModulusLike, generator: str) -> Poly:
    """Turn text or a descending coefficient list into a Poly over QQ."""
    gen = Symbol(generator)
    if isinstance(modulus, str):
        try:
            expr = parse_expr(
                modulus,
                local_dict={generator: gen},
                transformations=standard_transformations + (convert_xor,),
            )
        except (SyntaxError, TypeError) as e:
            raise FieldError(f"cannot parse minimal polynomial {modulus!r}: {e}")
        if expr.free_symbols - {gen}:
            raise FieldError(f"minimal polynomial {modulus!r} may only use {generator}")
        poly = Poly(expr, gen, domain=QQ)
    else:
        poly = Poly([QQ(int(c)) for c in modulus], gen, domain=QQ)
    return poly


@lru_cache(maxsize=None)
def _extension_field(coeffs: Tuple[Any, ...], generator: str):
    poly = Poly(list(coeffs), Symbol(generator), domain=QQ)
    return QQ.alg_field_from_poly(poly, alias=generator)


class FieldContext:
    """
    Rational function field in named indeterminates over QQ or QQ(theta).

    Args:
        variables: Ordered indeterminate names, e.g. ("q", "a", "b")
        modulus: Optional monic irreducible minimal polynomial of theta,
            given as text ("theta^2+theta+1") or descending coefficients
        generator: Name of the adjoined element

    Raises:
        FieldError: On duplicate names or an unusable minimal polynomial
    """

    def __init__(
        self,
        variables: Iterable[str] = (),
        modulus: Optional[ModulusLike] = None,
        generator: str = DEFAULT_GENERATOR,
    ):
        names = tuple(variables)
        for name in names:
            if not isinstance(name, str) or not name.isidentifier():
                raise FieldError(f"invalid indeterminate name: {name!r}")
        if len(set(names)) != len(names):
            raise FieldError(f"duplicate indeterminate names in {names}")

        self.variables: Tuple[str, ...] = names
        self.generator: Optional[str] = None
        self.modulus: Optional[Poly] = None
        self._modulus_source = modulus

        if modulus is None:
            self.base = QQ
            modulus_key: Tuple[Any, ...] = ()
        else:
            if generator in names:
                raise FieldError(f"generator {generator} clashes with an indeterminate")
            poly = _modulus_poly(modulus, generator)
            degree = poly.degree()
            if degree < 2 or degree > MAX_EXTENSION_DEGREE:
                raise FieldError(
                    f"minimal polynomial must have degree 2..{MAX_EXTENSION_DEGREE}, got {degree}"
                )
            if poly.LC() != 1:
                raise FieldError(f"minimal polynomial {poly.as_expr()} is not monic")
            if not poly.is_irreducible:
                raise FieldError(f"minimal polynomial {poly.as_expr()} is reducible over QQ")
            self.generator = generator
            self.modulus = poly
            modulus_key = tuple(poly.all_coeffs())
            self.base = _extension_field(modulus_key, generator)

        self.field = FracField(tuple(Symbol(n) for n in names), self.base, grlex)
        self.domain = self.field.to_domain()
        self._key = (names, self.generator, modulus_key)

    @property
    def is_extension(self) -> bool:
        return self.modulus is not None

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldContext) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        base = "QQ"
        if self.is_extension:
            m = str(self.modulus.as_expr()).replace("**", "^")
            base = f"QQ<{self.generator}: {m}>"
        return f"FieldContext({base}; {', '.join(self.variables)})"

    def describe(self) -> Dict[str, Any]:
        """Context description for reports."""
        return {
            "variables": list(self.variables),
            "modulus": str(self.modulus.as_expr()).replace("**", "^") if self.is_extension else None,
        }

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise FieldError(f"unknown indeterminate {name!r} in {self!r}")

    def has_variable(self, name: str) -> bool:
        return name in self.variables

    def extend(self, *names: str) -> "FieldContext":
        """Context with extra indeterminates appended (existing names are kept once)."""
        extra = [n for n in names if n not in self.variables]
        if not extra:
            return self
        return FieldContext(
            self.variables + tuple(extra),
            self._modulus_source,
            self.generator or DEFAULT_GENERATOR,
        )

    def ground(self, value: Union[int, Fraction]):
        """Base-field element for an integer or Fraction."""
        value = Fraction(value)
        element = QQ(value.numerator, value.denominator)
        if self.is_extension:
            element = self.base.convert(element)
        return element

    # Scalar factories; imported lazily because scalar.element depends on this module.

    def var(self, name: str):
        from scalar.element import Scalar
        return Scalar(self, self.field.gens[self.index(name)])

    def constant(self, value: Union[int, Fraction]):
        from scalar.element import Scalar
        return Scalar(self, self.field.ground_new(self.ground(value)))

    @property
    def zero(self):
        return self.constant(0)

    @property
    def one(self):
        return self.constant(1)

    @property
    def theta(self):
        """The adjoined algebraic element."""
        from scalar.element import Scalar
        if not self.is_extension:
            raise FieldError(f"{self!r} has no algebraic generator")
        return Scalar(self, self.field.ground_new(self.base.unit))

    def parse(self, text: str):
        from scalar.parser import parse_scalar
        return parse_scalar(self, text)

    def coerce(self, value: Any):
        """Scalar from a Scalar of this context, an int, a Fraction or scalar text."""
        from scalar.element import Scalar
        if isinstance(value, Scalar):
            if value.context != self:
                return value.lift(self)
            return value
        if isinstance(value, bool):
            raise FieldError(f"cannot use a boolean as a scalar: {value!r}")
        if isinstance(value, (int, Fraction)):
            return self.constant(value)
        if isinstance(value, str):
            return self.parse(value)
        raise FieldError(f"cannot convert {value!r} to a scalar of {self!r}")


def rational_context(*names: str) -> FieldContext:
    """Context over QQ in the given indeterminates."""
    return FieldContext(names)


def cyclotomic_context(*names: str) -> FieldContext:
    """Context over QQ(theta) with theta a primitive cube root of unity."""
    return FieldContext(names, modulus=CUBE_ROOT_OF_UNITY)
