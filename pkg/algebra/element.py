"""
The Block type algebra B(q) and its elements.

An algebra is a FieldContext together with the value of q (an indeterminate
of the context or a specialized scalar). Elements are finite sparse
combinations of L[alpha,i] and c with no stored zero coefficients.
"""
import logging
import re
from fractions import Fraction
from types import MappingProxyType
from typing import Any, Dict, Iterable, List, Mapping, Optional

from sympy import Symbol, expand
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from scalar import FieldContext, Scalar, ScalarParseError, scalar_from_expr
from scalar.errors import AlgebraError, ContextMismatchError
from algebra.basis import CENTRAL, BasisIndex, Central, Generator, basis_sort_key

logger = logging.getLogger(__name__)


class BlockAlgebra:
    """
    B(q) over a field context.

    Args:
        context: Coefficient field
        q: Value of the parameter q (Scalar, int, Fraction or text)
    """

    def __init__(self, context: FieldContext, q: Any):
        self.context = context
        self.q: Scalar = context.coerce(q)

    @classmethod
    def symbolic(cls, *extra: str) -> "BlockAlgebra":
        """B(q) with q an indeterminate, plus optional extra indeterminates."""
        context = FieldContext(("q",) + tuple(n for n in extra if n != "q"))
        return cls(context, context.var("q"))

    @classmethod
    def at(cls, q: Any, *extra: str, context: Optional[FieldContext] = None) -> "BlockAlgebra":
        """B(q) at a specialized value of q."""
        if context is None:
            context = FieldContext(extra)
        return cls(context, q)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BlockAlgebra) and self.context == other.context and self.q == other.q

    def __hash__(self) -> int:
        return hash((self.context, self.q))

    def __repr__(self) -> str:
        return f"BlockAlgebra(q={self.q.to_text()}, {self.context!r})"

    # --- elements -------------------------------------------------------

    def element(self, terms: Mapping[BasisIndex, Any]) -> "AlgebraElement":
        return AlgebraElement(self, {k: self.context.coerce(v) for k, v in terms.items()})

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def L(self, alpha: int, i: int) -> "AlgebraElement":
        return AlgebraElement(self, {Generator(alpha, i): self.context.one})

    def c(self) -> "AlgebraElement":
        return AlgebraElement(self, {CENTRAL: self.context.one})

    # --- structure constants -------------------------------------------

    def structure_constant(self, alpha: int, i: int, beta: int, j: int) -> Scalar:
        """beta*(i+q) - alpha*(j+q), the coefficient of L[alpha+beta,i+j]."""
        return self.q * (beta - alpha) + (beta * i - alpha * j)

    @staticmethod
    def central_term(alpha: int, i: int, beta: int, j: int) -> Fraction:
        """delta_{alpha+beta,0} delta_{i+j,0} (alpha^3-alpha)/12."""
        if alpha + beta == 0 and i + j == 0:
            return Fraction(alpha ** 3 - alpha, 12)
        return Fraction(0)

    def bracket_basis(self, x: Generator, y: Generator) -> Dict[BasisIndex, Scalar]:
        """[L[x], L[y]] as a map basis index -> coefficient."""
        result: Dict[BasisIndex, Scalar] = {}
        sc = self.structure_constant(x.alpha, x.i, y.alpha, y.i)
        if sc:
            result[Generator(x.alpha + y.alpha, x.i + y.i)] = sc
        ct = self.central_term(x.alpha, x.i, y.alpha, y.i)
        if ct:
            result[CENTRAL] = self.context.constant(ct)
        return result


class AlgebraElement:
    """Immutable finite combination of basis symbols of one BlockAlgebra."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: BlockAlgebra, terms: Mapping[BasisIndex, Scalar]):
        clean = {k: v for k, v in terms.items() if not v.is_zero}
        for v in clean.values():
            if v.context != algebra.context:
                raise ContextMismatchError(f"coefficient {v} is not in {algebra.context!r}")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "terms", MappingProxyType(clean))

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("AlgebraElement is immutable")

    @property
    def context(self) -> FieldContext:
        return self.algebra.context

    def _check(self, other: "AlgebraElement") -> None:
        if not isinstance(other, AlgebraElement):
            raise TypeError(f"expected an AlgebraElement, got {type(other).__name__}")
        if other.algebra != self.algebra:
            raise ContextMismatchError(f"elements of {self.algebra!r} and {other.algebra!r}")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms[k] + v if k in terms else v
        return AlgebraElement(self.algebra, terms)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, {k: -v for k, v in self.terms.items()})

    def __mul__(self, scalar: Any) -> "AlgebraElement":
        if isinstance(scalar, AlgebraElement):
            return NotImplemented
        s = self.context.coerce(scalar)
        return AlgebraElement(self.algebra, {k: v * s for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra == other.algebra and dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash((self.algebra, frozenset(self.terms.items())))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, index: BasisIndex) -> Scalar:
        return self.terms.get(index, self.context.zero)

    def central(self) -> Scalar:
        return self.coefficient(CENTRAL)

    def sorted_terms(self) -> List:
        return sorted(self.terms.items(), key=lambda kv: basis_sort_key(kv[0]))

    def homogeneous_components(self) -> Dict[int, "AlgebraElement"]:
        """Split by alpha; c lies in degree 0."""
        parts: Dict[int, Dict[BasisIndex, Scalar]] = {}
        for k, v in self.terms.items():
            degree = 0 if isinstance(k, Central) else k.alpha
            parts.setdefault(degree, {})[k] = v
        return {d: AlgebraElement(self.algebra, t) for d, t in parts.items()}

    def degree(self) -> Optional[int]:
        """The alpha-degree of a homogeneous nonzero element, else None."""
        parts = self.homogeneous_components()
        if len(parts) != 1:
            return None
        return next(iter(parts))

    # --- text and JSON --------------------------------------------------

    def to_text(self) -> str:
        parts = [_term_text(k, v) for k, v in self.sorted_terms()]
        if not parts:
            return "0"
        text = parts[0]
        for part in parts[1:]:
            if part.startswith("-"):
                text += " - " + part[1:]
            else:
                text += " + " + part
        return text

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"AlgebraElement({self.to_text()!r})"

    def to_dict(self) -> Dict[str, Any]:
        """JSON form: q, generator terms and the central coefficient."""
        return {
            "q": self.algebra.q.to_text(),
            "terms": [
                {"alpha": k.alpha, "i": k.i, "coeff": v.to_text()}
                for k, v in self.sorted_terms()
                if isinstance(k, Generator)
            ],
            "central": self.central().to_text(),
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], algebra: BlockAlgebra) -> "AlgebraElement":
        """
        Build an element from its JSON form.

        Args:
            data: {"terms": [{"alpha": .., "i": .., "coeff": ".."}], "central": ".."}
            algebra: Algebra the element belongs to

        Raises:
            AlgebraError: On malformed terms
        """
        terms: Dict[BasisIndex, Scalar] = {}
        for entry in data.get("terms", []):
            try:
                index = Generator(int(entry["alpha"]), int(entry["i"]))
                coeff = algebra.context.coerce(str(entry.get("coeff", "1")))
            except (KeyError, TypeError, ValueError) as e:
                if isinstance(e, ScalarParseError):
                    raise
                raise AlgebraError(f"malformed term {entry!r}: {e}")
            terms[index] = terms[index] + coeff if index in terms else coeff
        if data.get("central") not in (None, ""):
            terms[CENTRAL] = algebra.context.coerce(str(data["central"]))
        return cls(algebra, terms)


def _coefficient_prefix(coeff: Scalar) -> str:
    if coeff == 1:
        return ""
    if coeff == -1:
        return "-"
    if coeff.is_rational() and coeff.to_fraction() < 0:
        return "-" + _coefficient_prefix(-coeff)
    text = coeff.to_text()
    body = text[1:] if text.startswith("-") else text
    if "+" in body or " - " in body or "/" in body:
        return f"({text})*"
    return f"{text}*"


def _term_text(index: BasisIndex, coeff: Scalar) -> str:
    return _coefficient_prefix(coeff) + index.to_text()


_GENERATOR_TOKEN = re.compile(r"L\[\s*(-?\d+)\s*,\s*(\d+)\s*\]")
_CENTRAL_TOKEN = re.compile(r"(?<![A-Za-z_0-9])c(?![A-Za-z_0-9])")


def parse_element(algebra: BlockAlgebra, text: str) -> AlgebraElement:
    """
    Parse element text such as "-4*q*L[0,0] + (1/2)*c".

    Raises:
        ScalarParseError: If the text is not a linear combination of basis symbols
    """
    if algebra.context.has_variable("c"):
        raise AlgebraError("a context indeterminate named c clashes with the central element")
    symbols: Dict[str, Symbol] = {}
    index_of: Dict[Symbol, BasisIndex] = {}

    def _generator(match: "re.Match") -> str:
        alpha, i = int(match.group(1)), int(match.group(2))
        name = f"_L_{'m' if alpha < 0 else ''}{abs(alpha)}_{i}"
        if name not in symbols:
            symbols[name] = Symbol(name)
            index_of[symbols[name]] = Generator(alpha, i)
        return name

    rewritten = _GENERATOR_TOKEN.sub(_generator, text)
    if _CENTRAL_TOKEN.search(rewritten):
        symbols["_c"] = Symbol("_c")
        index_of[symbols["_c"]] = CENTRAL
        rewritten = _CENTRAL_TOKEN.sub("_c", rewritten)

    local = {name: Symbol(name) for name in algebra.context.variables}
    if algebra.context.is_extension:
        local[algebra.context.generator] = Symbol(algebra.context.generator)
    local.update(symbols)
    try:
        expr = expand(parse_expr(
            rewritten,
            local_dict=local,
            transformations=standard_transformations + (convert_xor,),
        ))
    except (SyntaxError, TypeError) as e:
        raise ScalarParseError(text, str(e))

    terms: Dict[BasisIndex, Scalar] = {}
    remainder = expr
    for sym, index in index_of.items():
        coeff = expr.coeff(sym)
        remainder = remainder - coeff * sym
        if coeff != 0:
            terms[index] = scalar_from_expr(algebra.context, coeff, text)
    if expand(remainder) != 0:
        raise ScalarParseError(text, "not a linear combination of L[alpha,i] and c")
    return AlgebraElement(algebra, terms)
