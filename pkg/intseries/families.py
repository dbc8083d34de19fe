"""
Modules of the intermediate series over B(q).

A module is a family (the action of L[alpha,0], fixed by the Virasoro
module it restricts to) together with an extension (the action of
L[alpha,i] for i >= 1). The central element always acts as 0.
"""
import logging
from abc import ABC, abstractmethod
from fractions import Fraction
from types import MappingProxyType
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple, Type

from scalar import FieldContext, Scalar, infer_context
from scalar.errors import ModuleDefinitionError

logger = logging.getLogger(__name__)

# (target index, coefficient) of L[alpha,i] v_mu, or None when it acts as 0
Action = Optional[Tuple[int, Scalar]]


# --- families ---------------------------------------------------------------

class Family(ABC):
    """Action of L[alpha,0]."""

    kind: str = ""

    def excludes_zero(self) -> bool:
        """True if v_0 is not a basis vector."""
        return False

    def in_basis(self, mu: int) -> bool:
        return not (self.excludes_zero() and mu == 0)

    @abstractmethod
    def degree_zero(self, q: Scalar, alpha: int, mu: int) -> Scalar:
        """Coefficient of v_{alpha+mu} in L[alpha,0] v_mu."""

    def eigen_offset(self, context: FieldContext) -> Scalar:
        """The a in L[0,0] v_mu = q(mu+a) v_mu."""
        return context.zero

    def parameters(self) -> Dict[str, Scalar]:
        return {}

    def lift(self, context: FieldContext) -> "Family":
        return type(self)(**{k: context.coerce(v) for k, v in self.parameters().items()})

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"kind": self.kind}
        data.update({k: v.to_text() for k, v in self.parameters().items()})
        return data

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Family) and self.to_dict() == other.to_dict()

    def __repr__(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in self.parameters().items())
        return f"{self.kind}({params})"


class Aab(Family):
    """L[alpha,0] v_mu = q(a+mu+b*alpha) v_{alpha+mu}."""

    kind = "Aab"

    def __init__(self, a: Scalar, b: Scalar):
        self.a = a
        self.b = b

    def degree_zero(self, q: Scalar, alpha: int, mu: int) -> Scalar:
        return q * (self.a + self.b * alpha + mu)

    def eigen_offset(self, context: FieldContext) -> Scalar:
        return context.coerce(self.a)

    def parameters(self) -> Dict[str, Scalar]:
        return {"a": self.a, "b": self.b}


class Aa(Family):
    """L[alpha,0] v_mu = q(mu+alpha) v_{alpha+mu} (mu != 0), v_0 -> q*alpha(a+alpha) v_alpha."""

    kind = "Aa"

    def __init__(self, a: Scalar):
        self.a = a

    def degree_zero(self, q: Scalar, alpha: int, mu: int) -> Scalar:
        if mu == 0:
            return q * alpha * (self.a + alpha)
        return q * (mu + alpha)

    def parameters(self) -> Dict[str, Scalar]:
        return {"a": self.a}


class Ba(Family):
    """L[alpha,0] v_mu = q*mu v_{alpha+mu} (mu != -alpha), v_{-alpha} -> -q*alpha(a+alpha) v_0."""

    kind = "Ba"

    def __init__(self, a: Scalar):
        self.a = a

    def degree_zero(self, q: Scalar, alpha: int, mu: int) -> Scalar:
        if mu == -alpha:
            return -q * alpha * (self.a + alpha)
        return q * mu

    def parameters(self) -> Dict[str, Scalar]:
        return {"a": self.a}


class Ap01(Family):
    """A'_{0,1}: basis v_mu with mu != 0, L[alpha,0] v_mu = q(mu+alpha) v_{alpha+mu}."""

    kind = "Ap01"

    def excludes_zero(self) -> bool:
        return True

    def degree_zero(self, q: Scalar, alpha: int, mu: int) -> Scalar:
        return q * (mu + alpha)


# --- extensions -------------------------------------------------------------

class Extension(ABC):
    """Action of L[alpha,i] for i >= 1."""

    kind: str = ""

    def validate(self, q: Scalar) -> None:
        """Raise ModuleDefinitionError if the extension is not allowed for q."""

    @abstractmethod
    def action(self, q: Scalar, alpha: int, i: int, mu: int) -> Action:
        """L[alpha,i] v_mu for i >= 1."""

    def acts(self, q: Scalar, alpha: int, i: int) -> bool:
        """False when L[alpha,i] (i >= 1) is the zero operator."""
        return True

    def parameters(self) -> Dict[str, Any]:
        return {}

    def lift(self, context: FieldContext) -> "Extension":
        return type(self)(**{
            k: (v if k == "j" else context.coerce(v))
            for k, v in self.parameters().items()
        })

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"kind": self.kind}
        for k, v in self.parameters().items():
            data[k] = v.to_text() if isinstance(v, Scalar) else v
        return data

    def __repr__(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in self.parameters().items())
        return f"{self.kind}({params})"


class Trivial(Extension):
    """Every L[alpha,i] with i >= 1 acts as 0."""

    kind = "Trivial"

    def action(self, q: Scalar, alpha: int, i: int, mu: int) -> Action:
        return None

    def acts(self, q: Scalar, alpha: int, i: int) -> bool:
        return False


class Level(Extension):
    """L[0,j] acts by s; every other L[alpha,i] with i >= 1 acts as 0. No condition on q."""

    kind = "Level"

    def __init__(self, j: int, s: Scalar):
        if j < 1:
            raise ModuleDefinitionError(f"level must be positive, got {j}")
        self.j = int(j)
        self.s = s

    def action(self, q: Scalar, alpha: int, i: int, mu: int) -> Action:
        if alpha == 0 and i == self.j:
            return mu, self.s
        return None

    def acts(self, q: Scalar, alpha: int, i: int) -> bool:
        return alpha == 0 and i == self.j

    def parameters(self) -> Dict[str, Any]:
        return {"j": self.j, "s": self.s}


class S(Extension):
    """L[0,-2q] acts by s, for q in (1/2)Z_{<0}."""

    kind = "S"

    def __init__(self, s: Scalar):
        self.s = s

    @staticmethod
    def level(q: Scalar) -> int:
        """-2q as a positive integer."""
        if q.is_rational():
            doubled = -2 * q.to_fraction()
            if doubled.denominator == 1 and doubled > 0:
                return int(doubled)
        raise ModuleDefinitionError(f"the S extension needs -2q to be a positive integer, got q={q}")

    def validate(self, q: Scalar) -> None:
        self.level(q)

    def action(self, q: Scalar, alpha: int, i: int, mu: int) -> Action:
        if alpha == 0 and i == self.level(q):
            return mu, self.s
        return None

    def acts(self, q: Scalar, alpha: int, i: int) -> bool:
        return alpha == 0 and i == self.level(q)

    def parameters(self) -> Dict[str, Any]:
        return {"s": self.s}


class ST(Extension):
    """At q = -1: L[0,2] acts by s, L[alpha,1] v_mu = t v_{alpha+mu}, all else 0."""

    kind = "ST"

    def __init__(self, s: Scalar, t: Scalar):
        self.s = s
        self.t = t

    def validate(self, q: Scalar) -> None:
        if q != -1:
            raise ModuleDefinitionError(f"the ST extension needs q = -1, got q={q}")

    def action(self, q: Scalar, alpha: int, i: int, mu: int) -> Action:
        if i == 1:
            return alpha + mu, self.t
        if alpha == 0 and i == 2:
            return mu, self.s
        return None

    def acts(self, q: Scalar, alpha: int, i: int) -> bool:
        return i == 1 or (alpha == 0 and i == 2)

    def parameters(self) -> Dict[str, Any]:
        return {"s": self.s, "t": self.t}


# --- modules ----------------------------------------------------------------

class IntermediateModule:
    """
    A module of the intermediate series over B(q).

    Args:
        q: Value of q; its context carries every parameter
        family: Action of the L[alpha,0]
        extension: Action of the L[alpha,i], i >= 1

    Raises:
        ModuleDefinitionError: If the extension is not allowed for q
    """

    def __init__(self, q: Scalar, family: Family, extension: Optional[Extension] = None):
        self.q = q
        self.context = q.context
        self.family = family.lift(self.context)
        self.extension = (extension or Trivial()).lift(self.context)
        self.extension.validate(q)

    def __repr__(self) -> str:
        return f"IntermediateModule(q={self.q}, {self.family!r}, {self.extension!r})"

    def in_basis(self, mu: int) -> bool:
        return self.family.in_basis(mu)

    def coefficient(self, alpha: int, i: int, mu: int) -> Action:
        """L[alpha,i] v_mu as (target, coefficient), or None when it is 0."""
        if not self.in_basis(mu):
            raise ModuleDefinitionError(f"v_{mu} is not a basis vector of {self.family.kind}")
        if i == 0:
            target, coeff = alpha + mu, self.family.degree_zero(self.q, alpha, mu)
        else:
            found = self.extension.action(self.q, alpha, i, mu)
            if found is None:
                return None
            target, coeff = found
        if coeff.is_zero or not self.in_basis(target):
            return None
        return target, coeff

    def acts(self, alpha: int, i: int) -> bool:
        """False when L[alpha,i] is the zero operator on the module."""
        if i == 0:
            return True
        return self.extension.acts(self.q, alpha, i)

    def basis_vector(self, mu: int) -> "GradedVector":
        if not self.in_basis(mu):
            raise ModuleDefinitionError(f"v_{mu} is not a basis vector of {self.family.kind}")
        return GradedVector(self.context, {mu: self.context.one})

    def to_dict(self) -> Dict[str, Any]:
        return {
            "q": self.q.to_text(),
            "family": self.family.to_dict(),
            "extension": self.extension.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], context: Optional[FieldContext] = None) -> "IntermediateModule":
        """
        Build a module from {"q": .., "family": {"kind": ..}, "extension": {"kind": ..}}.

        Raises:
            ModuleDefinitionError: Unknown kinds or missing parameters
        """
        if context is None:
            context = infer_context(module_texts(data))
        q = context.parse(str(data.get("q", "q")))
        family = _build(FAMILIES, data.get("family") or {}, context, "family")
        extension = _build(EXTENSIONS, data.get("extension") or {"kind": "Trivial"}, context, "extension")
        return cls(q, family, extension)


class GradedVector:
    """Finite combination sum_mu c_mu v_mu."""

    __slots__ = ("context", "coeffs")

    def __init__(self, context: FieldContext, coeffs: Mapping[int, Scalar]):
        object.__setattr__(self, "context", context)
        object.__setattr__(self, "coeffs", MappingProxyType(
            {mu: c for mu, c in coeffs.items() if not c.is_zero}
        ))

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("GradedVector is immutable")

    @classmethod
    def zero(cls, context: FieldContext) -> "GradedVector":
        return cls(context, {})

    def __add__(self, other: "GradedVector") -> "GradedVector":
        coeffs = dict(self.coeffs)
        for mu, c in other.coeffs.items():
            coeffs[mu] = coeffs[mu] + c if mu in coeffs else c
        return GradedVector(self.context, coeffs)

    def __neg__(self) -> "GradedVector":
        return GradedVector(self.context, {mu: -c for mu, c in self.coeffs.items()})

    def __sub__(self, other: "GradedVector") -> "GradedVector":
        return self + (-other)

    def __mul__(self, scalar: Any) -> "GradedVector":
        s = self.context.coerce(scalar)
        return GradedVector(self.context, {mu: c * s for mu, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedVector):
            return NotImplemented
        return dict(self.coeffs) == dict(other.coeffs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, mu: int) -> Scalar:
        return self.coeffs.get(mu, self.context.zero)

    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c.to_text()})*v[{mu}]" for mu, c in sorted(self.coeffs.items()))

    def to_dict(self) -> Dict[str, str]:
        return {str(mu): c.to_text() for mu, c in sorted(self.coeffs.items())}

    def __repr__(self) -> str:
        return f"GradedVector({self.to_text()!r})"


FAMILIES: Dict[str, Tuple[Type[Family], Tuple[str, ...]]] = {
    "Aab": (Aab, ("a", "b")),
    "Aa": (Aa, ("a",)),
    "Ba": (Ba, ("a",)),
    "Ap01": (Ap01, ()),
}

EXTENSIONS: Dict[str, Tuple[Type[Extension], Tuple[str, ...]]] = {
    "Trivial": (Trivial, ()),
    "S": (S, ("s",)),
    "ST": (ST, ("s", "t")),
    "Level": (Level, ("j", "s")),
}


def _build(registry, spec: Mapping[str, Any], context: FieldContext, what: str):
    kind = spec.get("kind")
    if kind not in registry:
        raise ModuleDefinitionError(f"unknown {what} kind {kind!r}; known: {', '.join(registry)}")
    cls, names = registry[kind]
    kwargs: Dict[str, Any] = {}
    for name in names:
        if name not in spec:
            raise ModuleDefinitionError(f"{what} {kind} needs parameter {name!r}")
        kwargs[name] = int(spec[name]) if name == "j" else context.parse(str(spec[name]))
    return cls(**kwargs)


def module_texts(data: Mapping[str, Any]) -> List[str]:
    """Scalar texts occurring in a module file."""
    texts = [str(data.get("q", "q"))]
    for part in ("family", "extension"):
        for key, value in (data.get(part) or {}).items():
            if key not in ("kind", "j"):
                texts.append(str(value))
    return texts
