"""
Univariate polynomials over a FieldContext and quasipolynomials
sum_j p_j(z) e^{a_j z}.
"""
import logging
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.orderings import lex
from sympy.polys.rings import PolyRing

from scalar import FieldContext, Scalar
from scalar.errors import BlockAlgError

logger = logging.getLogger(__name__)


class Polynomial:
    """
    h(t) = h_0 + h_1 t + ... + h_r t^r with Scalar coefficients.

    Trailing zero coefficients are dropped, so the zero polynomial has no
    coefficients and degree -1.
    """

    __slots__ = ("context", "coeffs", "variable")

    def __init__(self, context: FieldContext, coeffs: Iterable[Any], variable: str = "t"):
        values = [context.coerce(c) for c in coeffs]
        while values and values[-1].is_zero:
            values.pop()
        object.__setattr__(self, "context", context)
        object.__setattr__(self, "coeffs", tuple(values))
        object.__setattr__(self, "variable", variable)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def one(cls, context: FieldContext, variable: str = "t") -> "Polynomial":
        return cls(context, [1], variable)

    @classmethod
    def linear(cls, context: FieldContext, root: Any, variable: str = "t") -> "Polynomial":
        """t - root."""
        return cls(context, [-context.coerce(root), 1], variable)

    @classmethod
    def from_texts(cls, context: FieldContext, texts: Sequence[str], variable: str = "t") -> "Polynomial":
        return cls(context, [context.parse(str(t)) for t in texts], variable)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Scalar:
        return self.coeffs[-1] if self.coeffs else self.context.zero

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coeff(self, k: int) -> Scalar:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.context.zero

    def monic(self) -> "Polynomial":
        if self.is_zero:
            raise ZeroDivisionError("the zero polynomial has no monic associate")
        lc = self.leading
        return Polynomial(self.context, [c / lc for c in self.coeffs], self.variable)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self.context, [self.coeff(k) + other.coeff(k) for k in range(n)], self.variable)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.context, [-c for c in self.coeffs], self.variable)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: Any) -> "Polynomial":
        if not isinstance(other, Polynomial):
            s = self.context.coerce(other)
            return Polynomial(self.context, [c * s for c in self.coeffs], self.variable)
        if self.is_zero or other.is_zero:
            return Polynomial(self.context, [], self.variable)
        out = [self.context.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(self.context, out, self.variable)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        result = Polynomial.one(self.context, self.variable)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.context == other.context and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def evaluate(self, x: Any) -> Scalar:
        value = self.context.zero
        x = self.context.coerce(x)
        for c in reversed(self.coeffs):
            value = value * x + c
        return value

    def _ring_element(self, ring: PolyRing):
        return ring.from_dict({(k,): c.frac for k, c in enumerate(self.coeffs) if not c.is_zero})

    def divides(self, other: "Polynomial") -> bool:
        """True iff self | other in K[t] (K the context field)."""
        if self.is_zero:
            return other.is_zero
        ring = PolyRing("_x", self.context.domain, lex)
        remainder = other._ring_element(ring).rem(self._ring_element(ring))
        return not remainder

    def to_list(self) -> List[str]:
        """Coefficient texts h_0..h_r."""
        return [c.to_text() for c in self.coeffs]

    def to_text(self) -> str:
        if self.is_zero:
            return "0"
        parts: List[str] = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero:
                continue
            power = "" if k == 0 else (self.variable if k == 1 else f"{self.variable}^{k}")
            parts.append(_scaled(c, power))
        text = parts[0]
        for part in parts[1:]:
            text += " - " + part[1:] if part.startswith("-") else " + " + part
        return text

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()!r})"


def _scaled(c: Scalar, power: str) -> str:
    """c * power with the sign pulled out of rational coefficients."""
    if c.is_rational() and c.to_fraction() < 0:
        return "-" + _scaled(-c, power)
    text = c.to_text()
    compound = "+" in text or " - " in text or (power and "/" in text)
    if not power:
        return f"({text})" if compound else text
    if c == 1:
        return power
    if compound:
        return f"({text})*{power}"
    return f"{text}*{power}"


class QuasiPolynomial:
    """
    Q(z) = sum_j p_j(z) e^{a_j z}.

    Args:
        context: Coefficient field
        terms: (exponent a_j, polynomial p_j in z) pairs

    Raises:
        BlockAlgError: If exponents repeat or some p_j is zero
    """

    def __init__(self, context: FieldContext, terms: Iterable[Tuple[Any, Polynomial]]):
        self.context = context
        self.terms: List[Tuple[Scalar, Polynomial]] = []
        seen: List[Scalar] = []
        for exponent, poly in terms:
            a = context.coerce(exponent)
            if a in seen:
                raise BlockAlgError(f"repeated exponent {a} in quasipolynomial")
            if poly.is_zero:
                raise BlockAlgError(f"zero polynomial attached to exponent {a}")
            seen.append(a)
            self.terms.append((a, poly))

    def egf_coefficient(self, n: int) -> Scalar:
        """Coefficient of z^n/n!: sum_j sum_{m<=n} p_{j,m} n!/(n-m)! a_j^{n-m}."""
        total = self.context.zero
        for a, poly in self.terms:
            falling = 1
            for m in range(min(n, poly.degree) + 1):
                c = poly.coeff(m)
                if not c.is_zero:
                    total = total + c * falling * a ** (n - m)
                falling *= n - m
        return total

    def coefficients(self, count: int) -> List[Scalar]:
        return [self.egf_coefficient(n) for n in range(count)]

    def annihilator(self) -> Polynomial:
        """prod_j (t - a_j)^{deg p_j + 1}, the minimal recurrence polynomial."""
        result = Polynomial.one(self.context)
        for a, poly in self.terms:
            result = result * Polynomial.linear(self.context, a) ** (poly.degree + 1)
        return result

    def to_dict(self) -> List[Dict[str, Any]]:
        return [{"exponent": a.to_text(), "poly": poly.to_list()} for a, poly in self.terms]

    @classmethod
    def from_dict(cls, data: Sequence[Mapping[str, Any]], context: FieldContext) -> "QuasiPolynomial":
        """Build from [{"exponent": "2", "poly": ["1"]}, ...]."""
        terms = []
        for entry in data:
            try:
                exponent = context.parse(str(entry["exponent"]))
                poly = Polynomial.from_texts(context, entry.get("poly", []), variable="z")
            except KeyError as e:
                raise BlockAlgError(f"quasipolynomial term {entry!r} is missing {e}")
            terms.append((exponent, poly))
        return cls(context, terms)

    def __repr__(self) -> str:
        body = " + ".join(f"({p.to_text()})*e^({a.to_text()}*z)" for a, p in self.terms)
        return f"QuasiPolynomial({body or '0'})"


def texts_of_quasipoly(data: Sequence[Mapping[str, Any]]) -> List[str]:
    """All scalar texts in a quasipolynomial file (for context inference)."""
    texts: List[str] = []
    for entry in data:
        texts.append(str(entry.get("exponent", "")))
        texts.extend(str(c) for c in entry.get("poly", []))
    return texts
