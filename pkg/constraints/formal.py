"""
Formal unknowns and expressions.

Unknown sequences such as d_mu, e_{alpha,mu} and f_mu are atoms keyed by
their index expressions. An index is an integer-linear combination of named
symbols (beta, gamma, mubar, ...) plus an integer, kept in a normal form so
that substitutions re-key atoms consistently. Coefficients are Scalars; an
index symbol that is also an indeterminate of the context is substituted in
the coefficients as well.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Tuple, Union

from scalar import FieldContext, Scalar
from scalar.errors import ContextMismatchError

logger = logging.getLogger(__name__)

IndexLike = Union[int, str, "IndexExpr"]


@dataclass(frozen=True)
class IndexExpr:
    """sum of coeff*name over terms, plus constant."""
    terms: Tuple[Tuple[str, int], ...] = ()
    constant: int = 0

    @classmethod
    def of(cls, value: IndexLike) -> "IndexExpr":
        if isinstance(value, IndexExpr):
            return value
        if isinstance(value, bool):
            raise TypeError(f"cannot use a boolean as an index: {value!r}")
        if isinstance(value, int):
            return cls((), value)
        if isinstance(value, str):
            return cls(((value, 1),), 0)
        raise TypeError(f"cannot use {value!r} as an index")

    @classmethod
    def _normal(cls, coeffs: Mapping[str, int], constant: int) -> "IndexExpr":
        return cls(tuple(sorted((n, c) for n, c in coeffs.items() if c)), constant)

    @property
    def is_constant(self) -> bool:
        return not self.terms

    @property
    def value(self) -> int:
        if self.terms:
            raise ValueError(f"index {self.to_text()} is not an integer")
        return self.constant

    def names(self) -> List[str]:
        return [n for n, _ in self.terms]

    def __add__(self, other: IndexLike) -> "IndexExpr":
        other = IndexExpr.of(other)
        coeffs = dict(self.terms)
        for name, c in other.terms:
            coeffs[name] = coeffs.get(name, 0) + c
        return IndexExpr._normal(coeffs, self.constant + other.constant)

    def __radd__(self, other: IndexLike) -> "IndexExpr":
        return self + other

    def __neg__(self) -> "IndexExpr":
        return IndexExpr(tuple((n, -c) for n, c in self.terms), -self.constant)

    def __sub__(self, other: IndexLike) -> "IndexExpr":
        return self + (-IndexExpr.of(other))

    def __rsub__(self, other: IndexLike) -> "IndexExpr":
        return IndexExpr.of(other) - self

    def __mul__(self, k: int) -> "IndexExpr":
        return IndexExpr._normal({n: c * k for n, c in self.terms}, self.constant * k)

    __rmul__ = __mul__

    def substitute(self, bindings: Mapping[str, IndexLike]) -> "IndexExpr":
        """Simultaneous substitution of index symbols."""
        result = IndexExpr((), self.constant)
        for name, c in self.terms:
            image = IndexExpr.of(bindings[name]) if name in bindings else IndexExpr.of(name)
            result = result + image * c
        return result

    def to_scalar(self, context: FieldContext) -> Scalar:
        total = context.constant(self.constant)
        for name, c in self.terms:
            total = total + context.var(name) * c
        return total

    def sort_key(self) -> Tuple[Any, ...]:
        return (self.terms, self.constant)

    def to_text(self) -> str:
        parts: List[str] = []
        for name, c in self.terms:
            if c == 1:
                parts.append(f"+{name}")
            elif c == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{c:+d}*{name}")
        if self.constant or not parts:
            parts.append(f"{self.constant:+d}")
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class Unknown:
    """
    A formal unknown such as d[(beta-gamma)-], e[1,mu] or f[-3].

    shifted marks indices written in the mubar = mu + a coordinate, i.e.
    d[x-] stands for d_{x-a}.
    """
    name: str
    indices: Tuple[IndexExpr, ...]
    shifted: bool = False

    @classmethod
    def of(cls, name: str, *indices: IndexLike, shifted: bool = False) -> "Unknown":
        return cls(name, tuple(IndexExpr.of(i) for i in indices), shifted)

    def substitute(self, bindings: Mapping[str, IndexLike]) -> "Unknown":
        return Unknown(self.name, tuple(i.substitute(bindings) for i in self.indices), self.shifted)

    def sort_key(self) -> Tuple[Any, ...]:
        return (self.name, tuple(i.sort_key() for i in self.indices), self.shifted)

    def to_text(self) -> str:
        parts = []
        for index in self.indices:
            text = index.to_text()
            if self.shifted:
                atomic = len(index.terms) + (1 if index.constant else 0) <= 1
                text = f"{text}-" if atomic else f"({text})-"
            parts.append(text)
        return f"{self.name}[{','.join(parts)}]"

    def __str__(self) -> str:
        return self.to_text()


Monomial = Tuple[Tuple[Unknown, int], ...]


def _monomial_mul(m1: Monomial, m2: Monomial) -> Monomial:
    powers: Dict[Unknown, int] = dict(m1)
    for u, e in m2:
        powers[u] = powers.get(u, 0) + e
    return tuple(sorted(powers.items(), key=lambda item: item[0].sort_key()))


class FormalExpr:
    """
    Polynomial in Unknowns with Scalar coefficients, kept expanded.

    Args:
        context: Field of the coefficients
        terms: monomial -> coefficient; the empty monomial is the constant
    """

    __slots__ = ("context", "terms")

    def __init__(self, context: FieldContext, terms: Optional[Mapping[Monomial, Any]] = None):
        cleaned: Dict[Monomial, Scalar] = {}
        for monom, coeff in (terms or {}).items():
            c = context.coerce(coeff)
            if not c.is_zero:
                cleaned[monom] = c
        self.context = context
        self.terms = cleaned

    @classmethod
    def zero(cls, context: FieldContext) -> "FormalExpr":
        return cls(context)

    @classmethod
    def constant(cls, context: FieldContext, value: Any) -> "FormalExpr":
        return cls(context, {(): value})

    @classmethod
    def unknown(cls, context: FieldContext, unknown: Unknown, coeff: Any = 1) -> "FormalExpr":
        return cls(context, {((unknown, 1),): coeff})

    def _coerce(self, other: Any) -> "FormalExpr":
        if isinstance(other, FormalExpr):
            if other.context != self.context:
                raise ContextMismatchError(f"{self.context!r} vs {other.context!r}")
            return other
        if isinstance(other, Unknown):
            return FormalExpr.unknown(self.context, other)
        return FormalExpr.constant(self.context, other)

    def __add__(self, other: Any) -> "FormalExpr":
        other = self._coerce(other)
        terms = dict(self.terms)
        for monom, c in other.terms.items():
            terms[monom] = terms[monom] + c if monom in terms else c
        return FormalExpr(self.context, terms)

    __radd__ = __add__

    def __neg__(self) -> "FormalExpr":
        return FormalExpr(self.context, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: Any) -> "FormalExpr":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> "FormalExpr":
        return self._coerce(other) - self

    def __mul__(self, other: Any) -> "FormalExpr":
        other = self._coerce(other)
        terms: Dict[Monomial, Scalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _monomial_mul(m1, m2)
                c = c1 * c2
                terms[m] = terms[m] + c if m in terms else c
        return FormalExpr(self.context, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "FormalExpr":
        if n < 0:
            raise ValueError("formal expressions only take nonnegative powers")
        result = FormalExpr.constant(self.context, 1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, FormalExpr):
            return NotImplemented
        return (self - other).is_zero

    __hash__ = None

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e for _, e in m) for m in self.terms)

    @property
    def is_linear(self) -> bool:
        return self.degree <= 1

    def unknowns(self) -> List[Unknown]:
        found = {u for m in self.terms for u, _ in m}
        return sorted(found, key=Unknown.sort_key)

    def coefficient(self, unknown: Unknown) -> Scalar:
        """Coefficient of the linear monomial unknown."""
        return self.terms.get(((unknown, 1),), self.context.zero)

    @property
    def constant_term(self) -> Scalar:
        return self.terms.get((), self.context.zero)

    def map_coefficients(self, fn: Callable[[Scalar], Scalar], context: Optional[FieldContext] = None) -> "FormalExpr":
        return FormalExpr(context or self.context, {m: fn(c) for m, c in self.terms.items()})

    def substitute(self, bindings: Mapping[str, IndexLike]) -> "FormalExpr":
        """
        Simultaneous substitution of index symbols in the unknowns and, for
        symbols that are indeterminates of the context, in the coefficients.
        """
        scalar_bindings = {
            name: IndexExpr.of(value).to_scalar(self.context)
            for name, value in bindings.items()
            if self.context.has_variable(name)
        }
        terms: Dict[Monomial, Scalar] = {}
        for monom, coeff in self.terms.items():
            new_monom = tuple(
                sorted(
                    _merge((u.substitute(bindings), e) for u, e in monom).items(),
                    key=lambda item: item[0].sort_key(),
                )
            )
            c = coeff.specialize(scalar_bindings) if scalar_bindings else coeff
            terms[new_monom] = terms[new_monom] + c if new_monom in terms else c
        return FormalExpr(self.context, terms)

    def specialize(self, bindings: Mapping[str, Any], target: Optional[FieldContext] = None) -> "FormalExpr":
        """Specialize indeterminates in the coefficients only."""
        target = target or self.context
        return self.map_coefficients(lambda c: c.specialize(bindings, target=target), target)

    def assign(self, values: Mapping[Unknown, Any]) -> "FormalExpr":
        """Replace unknowns by Scalars or FormalExprs; others are kept."""
        result = FormalExpr.zero(self.context)
        for monom, coeff in self.terms.items():
            term = FormalExpr.constant(self.context, coeff)
            for u, e in monom:
                image = self._coerce(values[u]) if u in values else FormalExpr.unknown(self.context, u)
                term = term * image ** e
            result = result + term
        return result

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts: List[str] = []
        for monom in sorted(self.terms, key=lambda m: [(u.sort_key(), e) for u, e in m]):
            coeff = self.terms[monom].to_text()
            atoms = "*".join(u.to_text() if e == 1 else f"{u.to_text()}^{e}" for u, e in monom)
            if not atoms:
                parts.append(f"({coeff})" if len(parts) else coeff)
            elif coeff == "1":
                parts.append(atoms)
            else:
                parts.append(f"({coeff})*{atoms}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"FormalExpr({self.to_text()})"


def _merge(pairs: Iterable[Tuple[Unknown, int]]) -> Dict[Unknown, int]:
    merged: Dict[Unknown, int] = {}
    for u, e in pairs:
        merged[u] = merged.get(u, 0) + e
    return merged


class FormalVector:
    """Finite combination of basis vectors v_x with FormalExpr coefficients."""

    def __init__(self, context: FieldContext, coeffs: Optional[Mapping[IndexExpr, FormalExpr]] = None):
        self.context = context
        self.coeffs: Dict[IndexExpr, FormalExpr] = {
            k: v for k, v in (coeffs or {}).items() if not v.is_zero
        }

    @classmethod
    def basis(cls, context: FieldContext, index: IndexLike) -> "FormalVector":
        return cls(context, {IndexExpr.of(index): FormalExpr.constant(context, 1)})

    def __add__(self, other: "FormalVector") -> "FormalVector":
        coeffs = dict(self.coeffs)
        for k, v in other.coeffs.items():
            coeffs[k] = coeffs[k] + v if k in coeffs else v
        return FormalVector(self.context, coeffs)

    def __neg__(self) -> "FormalVector":
        return FormalVector(self.context, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "FormalVector") -> "FormalVector":
        return self + (-other)

    def scale(self, factor: Any) -> "FormalVector":
        return FormalVector(self.context, {k: v * factor for k, v in self.coeffs.items()})

    def coefficient(self, index: IndexLike) -> FormalExpr:
        return self.coeffs.get(IndexExpr.of(index), FormalExpr.zero(self.context))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(
            f"({v.to_text()})*v[{k.to_text()}]"
            for k, v in sorted(self.coeffs.items(), key=lambda kv: kv[0].sort_key())
        )


Rule = Callable[[IndexExpr], Optional[Tuple[IndexExpr, FormalExpr]]]
Operator = Callable[[FormalVector], FormalVector]


class FormalAction:
    """
    Operators on formal graded vectors, each given by a rule
    v_x -> coeff * v_target (or None for 0), with commutators.

    Usage:
        action = FormalAction(ctx)
        action.register("G", lambda x: (x + "gamma", FormalExpr.constant(ctx, ...)))
        v = action.commutator("G", "D")(FormalVector.basis(ctx, "mubar"))
    """

    def __init__(self, context: FieldContext):
        self.context = context
        self._rules: Dict[str, Rule] = {}

    def register(self, name: str, rule: Rule) -> None:
        self._rules[name] = rule

    def list_operators(self) -> List[str]:
        return sorted(self._rules)

    def op(self, name: Union[str, Operator]) -> Operator:
        if callable(name):
            return name
        if name not in self._rules:
            raise KeyError(f"unknown operator {name!r}; registered: {self.list_operators()}")
        rule = self._rules[name]

        def apply(vector: FormalVector) -> FormalVector:
            result = FormalVector(self.context)
            for index, coeff in vector.coeffs.items():
                found = rule(index)
                if found is None:
                    continue
                target, factor = found
                result = result + FormalVector(self.context, {IndexExpr.of(target): coeff * factor})
            return result

        return apply

    def commutator(self, x: Union[str, Operator], y: Union[str, Operator]) -> Operator:
        """[x, y] = x y - y x."""
        fx, fy = self.op(x), self.op(y)

        def apply(vector: FormalVector) -> FormalVector:
            return fx(fy(vector)) - fy(fx(vector))

        return apply

    def scaled(self, x: Union[str, Operator], factor: Any) -> Operator:
        fx = self.op(x)
        return lambda vector: fx(vector).scale(factor)

    def apply(self, x: Union[str, Operator], index: IndexLike) -> FormalVector:
        return self.op(x)(FormalVector.basis(self.context, index))


def shifted_d(index: IndexLike) -> Unknown:
    """d[x-]: the unknown d_mu with mubar = x."""
    return Unknown.of("d", index, shifted=True)


def sequence(context: FieldContext, name: str, *indices: IndexLike, shifted: bool = False) -> FormalExpr:
    """The unknown name[indices] as a FormalExpr."""
    return FormalExpr.unknown(context, Unknown.of(name, *indices, shifted=shifted))


def as_scalar(context: FieldContext, value: Any) -> Scalar:
    if isinstance(value, IndexExpr):
        return value.to_scalar(context)
    if isinstance(value, (int, Fraction, Scalar, str)):
        return context.coerce(value)
    raise TypeError(f"cannot use {value!r} as a coefficient")
