"""
Differential operators x^alpha D^i (D = x d/dx, i >= 1) with the central
extension of W_infinity, and the comparison of its associated graded
bracket with B(1).
"""
import logging
from fractions import Fraction
from types import MappingProxyType
from typing import Any, Dict, Mapping, Optional, Tuple

from sympy import Poly, Symbol, factorial, ff

from scalar import FieldContext, Scalar, rational_context
from scalar.errors import AlgebraError, ContextMismatchError
from algebra.element import BlockAlgebra

logger = logging.getLogger(__name__)

_D = Symbol("D")

DiffIndex = Tuple[int, int]


class DiffOpElement:
    """
    Finite combination of x^alpha D^i (i >= 1) plus a central coefficient.

    Args:
        context: Coefficient field
        terms: (alpha, i) -> coefficient
        central: Coefficient of c
    """

    __slots__ = ("context", "terms", "central")

    def __init__(
        self,
        context: FieldContext,
        terms: Mapping[DiffIndex, Any],
        central: Any = 0,
    ):
        clean: Dict[DiffIndex, Scalar] = {}
        for (alpha, i), value in terms.items():
            if i < 1:
                raise AlgebraError(f"x^{alpha} D^{i} is outside W_infinity (needs i >= 1)")
            coeff = context.coerce(value)
            if not coeff.is_zero:
                clean[(alpha, i)] = coeff
        object.__setattr__(self, "context", context)
        object.__setattr__(self, "terms", MappingProxyType(clean))
        object.__setattr__(self, "central", context.coerce(central))

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("DiffOpElement is immutable")

    @classmethod
    def monomial(cls, alpha: int, i: int, context: Optional[FieldContext] = None) -> "DiffOpElement":
        context = context or rational_context()
        return cls(context, {(alpha, i): 1})

    def __add__(self, other: "DiffOpElement") -> "DiffOpElement":
        if other.context != self.context:
            raise ContextMismatchError("differential operators over different contexts")
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms[k] + v if k in terms else v
        return DiffOpElement(self.context, terms, self.central + other.central)

    def __neg__(self) -> "DiffOpElement":
        return DiffOpElement(self.context, {k: -v for k, v in self.terms.items()}, -self.central)

    def __sub__(self, other: "DiffOpElement") -> "DiffOpElement":
        return self + (-other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiffOpElement):
            return NotImplemented
        return (
            self.context == other.context
            and dict(self.terms) == dict(other.terms)
            and self.central == other.central
        )

    def __hash__(self) -> int:
        return hash((frozenset(self.terms.items()), self.central))

    def coefficient(self, alpha: int, i: int) -> Scalar:
        return self.terms.get((alpha, i), self.context.zero)

    @property
    def is_zero(self) -> bool:
        return not self.terms and self.central.is_zero

    def to_text(self) -> str:
        parts = [f"({v.to_text()})*x^{a}*D^{i}" for (a, i), v in sorted(self.terms.items())]
        if not self.central.is_zero:
            parts.append(f"({self.central.to_text()})*c")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"DiffOpElement({self.to_text()!r})"


def generalized_binomial(n: int, k: int) -> Fraction:
    """C(n, k) = n(n-1)...(n-k+1)/k! for any integer n and k >= 0."""
    if k < 0:
        return Fraction(0)
    value = ff(n, k) / factorial(k)
    return Fraction(int(value.p), int(value.q))


def winf_central(alpha: int, i: int, beta: int, j: int) -> Fraction:
    """delta_{alpha+beta,0} (-1)^i i! j! C(alpha+i, i+j+1)."""
    if alpha + beta != 0:
        return Fraction(0)
    sign = -1 if i % 2 else 1
    return sign * int(factorial(i)) * int(factorial(j)) * generalized_binomial(alpha + i, i + j + 1)


def _basis_bracket(alpha: int, i: int, beta: int, j: int) -> Dict[int, Fraction]:
    """D-degree -> coefficient of x^{alpha+beta}((D+beta)^i D^j - D^i (D+alpha)^j)."""
    poly = Poly((_D + beta) ** i * _D ** j - _D ** i * (_D + alpha) ** j, _D)
    result: Dict[int, Fraction] = {}
    for (degree,), coeff in poly.terms():
        if coeff:
            result[degree] = Fraction(int(coeff.p), int(coeff.q))
    return result


def winf_bracket(x: DiffOpElement, y: DiffOpElement) -> DiffOpElement:
    """Bracket of W_infinity with its central term; c is central."""
    if x.context != y.context:
        raise ContextMismatchError("differential operators over different contexts")
    context = x.context
    terms: Dict[DiffIndex, Scalar] = {}
    central = context.zero
    for (alpha, i), cx in x.terms.items():
        for (beta, j), cy in y.terms.items():
            coeff = cx * cy
            for degree, value in _basis_bracket(alpha, i, beta, j).items():
                key = (alpha + beta, degree)
                term = coeff * value
                terms[key] = terms[key] + term if key in terms else term
            ct = winf_central(alpha, i, beta, j)
            if ct:
                central = central + coeff * ct
    return DiffOpElement(context, terms, central)


def assoc_graded_check(alpha: int, beta: int, i: int, j: int) -> Scalar:
    """
    Compare the top D-degree part of [x^alpha D^i, x^beta D^j] with B(1).

    The coefficient of x^{alpha+beta} D^{i+j-1} is compared with the B(1)
    structure constant of [L[alpha,i-1], L[beta,j-1]] under
    x^alpha D^{i+1} <-> L[alpha,i].

    Returns:
        The difference (zero when the two agree)
    """
    if i < 1 or j < 1:
        raise AlgebraError(f"i and j must be positive, got ({i}, {j})")
    context = rational_context()
    x = DiffOpElement.monomial(alpha, i, context)
    y = DiffOpElement.monomial(beta, j, context)
    top = winf_bracket(x, y).coefficient(alpha + beta, i + j - 1)
    block = BlockAlgebra.at(1, context=context)
    return top - block.structure_constant(alpha, i - 1, beta, j - 1)
