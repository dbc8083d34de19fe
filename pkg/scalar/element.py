"""
Exact scalars: canonical rational functions over a FieldContext.

A Scalar wraps a sympy FracElement. Over QQ sympy's cancellation already
yields a canonical pair (coprime, integer content cleared, positive leading
denominator coefficient). Over an algebraic extension the denominator is
additionally made monic, so equality of scalars is equality of pairs.
"""
import logging
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Set, Tuple, Union

from sympy import Add, Integer, Mul, Rational, Symbol, factor_list
from sympy.printing.str import sstr

from scalar.context import FieldContext
from scalar.errors import ContextMismatchError, FieldError, SingularSpecializationError

logger = logging.getLogger(__name__)

Number = Union[int, Fraction]


class Scalar:
    """
    Immutable element of a FieldContext.

    Supports +, -, *, / and integer powers with other Scalars of the same
    context and with Python ints and Fractions.
    """

    __slots__ = ("_ctx", "_frac")

    def __init__(self, context: FieldContext, frac: Any):
        if context.is_extension:
            frac = _monic_denominator(context, frac)
        object.__setattr__(self, "_ctx", context)
        object.__setattr__(self, "_frac", frac)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("Scalar is immutable")

    # --- construction helpers -------------------------------------------

    @classmethod
    def from_value(cls, context: FieldContext, value: Any) -> "Scalar":
        return context.coerce(value)

    @property
    def context(self) -> FieldContext:
        return self._ctx

    @property
    def frac(self):
        """The underlying sympy field element."""
        return self._frac

    @property
    def numerator(self):
        return self._frac.numer

    @property
    def denominator(self):
        return self._frac.denom

    # --- arithmetic -----------------------------------------------------

    def _other(self, other: Any):
        if isinstance(other, Scalar):
            if other._ctx is not self._ctx and other._ctx != self._ctx:
                raise ContextMismatchError(
                    f"cannot combine scalars of {self._ctx!r} and {other._ctx!r}"
                )
            return other._frac
        if isinstance(other, bool):
            return None
        if isinstance(other, (int, Fraction)):
            return self._ctx.field.ground_new(self._ctx.ground(other))
        return None

    def _wrap(self, frac: Any) -> "Scalar":
        return Scalar(self._ctx, frac)

    def __add__(self, other: Any) -> "Scalar":
        g = self._other(other)
        if g is None:
            return NotImplemented
        return self._wrap(self._frac + g)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "Scalar":
        g = self._other(other)
        if g is None:
            return NotImplemented
        return self._wrap(self._frac - g)

    def __rsub__(self, other: Any) -> "Scalar":
        g = self._other(other)
        if g is None:
            return NotImplemented
        return self._wrap(g - self._frac)

    def __mul__(self, other: Any) -> "Scalar":
        g = self._other(other)
        if g is None:
            return NotImplemented
        return self._wrap(self._frac * g)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "Scalar":
        g = self._other(other)
        if g is None:
            return NotImplemented
        if not g:
            raise ZeroDivisionError("division by an exact zero scalar")
        return self._wrap(self._frac / g)

    def __rtruediv__(self, other: Any) -> "Scalar":
        g = self._other(other)
        if g is None:
            return NotImplemented
        if not self._frac:
            raise ZeroDivisionError("division by an exact zero scalar")
        return self._wrap(g / self._frac)

    def __neg__(self) -> "Scalar":
        return self._wrap(-self._frac)

    def __pos__(self) -> "Scalar":
        return self

    def __pow__(self, n: int) -> "Scalar":
        if not isinstance(n, int) or isinstance(n, bool):
            return NotImplemented
        if n == 0:
            return self._wrap(self._ctx.field.one)
        if n > 0:
            return self._wrap(self._frac ** n)
        if not self._frac:
            raise ZeroDivisionError("zero scalar raised to a negative power")
        # sympy does not re-normalize the sign for negative powers
        return self._wrap(self._ctx.field.one / (self._frac ** (-n)))

    def inverse(self) -> "Scalar":
        return self ** -1

    # --- comparison -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._frac

    def __bool__(self) -> bool:
        return bool(self._frac)

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, Scalar):
            if other._ctx != self._ctx:
                return False
            return self._frac == other._frac
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._frac == self._other(other)
        return NotImplemented

    def __ne__(self, other: Any) -> bool:
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.to_fraction())
        return hash((self._ctx, self._frac.numer, self._frac.denom))

    # --- introspection --------------------------------------------------

    def is_constant(self) -> bool:
        """True when no indeterminate occurs (theta may still occur)."""
        return self._frac.numer.is_ground and self._frac.denom.is_ground

    def is_rational(self) -> bool:
        """True when the value is an ordinary rational number."""
        if not self.is_constant():
            return False
        if not self._ctx.is_extension:
            return True
        return all(_anp_degree(c) <= 0 for c in (self._ground_value(self.numerator), self._ground_value(self.denominator)))

    def to_fraction(self) -> Fraction:
        """The value as a Fraction; raises FieldError unless is_rational()."""
        if not self.is_rational():
            raise FieldError(f"{self.to_text()} is not a rational number")
        num = _ground_to_fraction(self._ground_value(self.numerator))
        den = _ground_to_fraction(self._ground_value(self.denominator))
        return num / den

    def is_integer(self) -> bool:
        return self.is_rational() and self.to_fraction().denominator == 1

    def _ground_value(self, poly):
        return poly.coeff(1) if poly else self._ctx.base.zero

    def is_polynomial(self) -> bool:
        return self._frac.denom.is_ground

    def variables(self) -> Set[str]:
        """Names of the indeterminates that actually occur."""
        used: Set[str] = set()
        for poly in (self._frac.numer, self._frac.denom):
            for monom in poly.monoms():
                for name, e in zip(self._ctx.variables, monom):
                    if e:
                        used.add(name)
        return used

    def degree(self, name: str) -> int:
        """Degree of a polynomial scalar in one indeterminate (-1 for zero)."""
        idx = self._ctx.index(name)
        if self._frac.denom.degree(idx) > 0:
            raise FieldError(f"{self.to_text()} is not polynomial in {name}")
        if not self._frac.numer:
            return -1
        return self._frac.numer.degree(idx)

    def coeff_monomial(self, exponents: Mapping[str, int]) -> "Scalar":
        """
        Coefficient of a monomial in some indeterminates.

        Args:
            exponents: e.g. {"beta": 1, "gamma": 6}

        Returns:
            Scalar in the remaining indeterminates (same context)

        Raises:
            FieldError: If the denominator involves one of the named indeterminates
        """
        positions = {self._ctx.index(name): int(e) for name, e in exponents.items()}
        for idx in positions:
            if self._frac.denom.degree(idx) > 0:
                raise FieldError(
                    f"{self.to_text()} has {self._ctx.variables[idx]} in its denominator"
                )
        ring = self._ctx.field.ring
        selected = {}
        for monom, coeff in self._frac.numer.terms():
            if all(monom[idx] == e for idx, e in positions.items()):
                reduced = tuple(0 if idx in positions else e for idx, e in enumerate(monom))
                selected[reduced] = coeff
        numer = ring.from_dict(selected) if selected else ring.zero
        return self._wrap(self._ctx.field.new(numer, self._frac.denom))

    def coefficients_in(self, name: str) -> Dict[int, "Scalar"]:
        """Map exponent -> coefficient for a scalar polynomial in one indeterminate."""
        result: Dict[int, Scalar] = {}
        for k in range(self.degree(name) + 1):
            c = self.coeff_monomial({name: k})
            if c:
                result[k] = c
        return result

    # --- substitution ---------------------------------------------------

    def specialize(
        self,
        bindings: Mapping[str, Any],
        target: Optional[FieldContext] = None,
    ) -> "Scalar":
        """
        Substitute values for indeterminates.

        Args:
            bindings: name -> Scalar, int, Fraction or scalar text
            target: Context of the result; defaults to the context of the
                Scalar values among the bindings, else this scalar's context

        Returns:
            Canonical Scalar in the target context

        Raises:
            SingularSpecializationError: If the denominator vanishes
            FieldError: If an unbound indeterminate is missing from the target
        """
        if target is None:
            target = self._ctx
            for value in bindings.values():
                if isinstance(value, Scalar):
                    target = value.context
                    break
        images: List[Scalar] = []
        for name in self._ctx.variables:
            if name in bindings:
                images.append(target.coerce(bindings[name]))
            elif target.has_variable(name):
                images.append(target.var(name))
            else:
                images.append(None)
        numer = _evaluate(self._ctx, self._frac.numer, images, target)
        denom = _evaluate(self._ctx, self._frac.denom, images, target)
        if denom.is_zero:
            raise SingularSpecializationError(self._vanishing_factor(images, target))
        return numer / denom

    def lift(self, target: FieldContext) -> "Scalar":
        """Embed into a context that has every indeterminate used here."""
        if target == self._ctx:
            return self
        return self.specialize({}, target=target)

    def _vanishing_factor(self, images: List[Optional["Scalar"]], target: FieldContext) -> str:
        denom = self.denominator
        if not self._ctx.is_extension:
            try:
                _, factors = factor_list(_poly_expr(self._ctx, denom))
                ring = self._ctx.field.ring
                for factor, _mult in factors:
                    poly = ring.from_expr(factor)
                    if _evaluate(self._ctx, poly, images, target).is_zero:
                        return _text(factor)
            except Exception as e:  # fall back to the whole denominator
                logger.debug(f"factor lookup failed: {e}")
        return _text(_poly_expr(self._ctx, denom))

    # --- text -----------------------------------------------------------

    def as_expr(self):
        """sympy expression (theta appears as a Symbol)."""
        return _poly_expr(self._ctx, self.numerator) / _poly_expr(self._ctx, self.denominator)

    def to_text(self) -> str:
        """Exact text that parse_scalar reads back to the same value."""
        num = _poly_expr(self._ctx, self.numerator)
        if self.denominator == 1:
            return _text(num)
        den = _poly_expr(self._ctx, self.denominator)
        if den.is_Integer:
            if num.is_Integer:
                return f"{num}/{den}"
            return f"({_text(num)})/{den}"
        return f"({_text(num)})/({_text(den)})"

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Scalar({self.to_text()!r})"


# --- module helpers -----------------------------------------------------

def _monic_denominator(context: FieldContext, frac: Any) -> Any:
    denom = frac.denom
    lc = denom.LC
    if lc == context.base.one:
        return frac
    numer = frac.numer.quo_ground(lc)
    denom = denom.quo_ground(lc)
    return context.field.raw_new(numer, denom)


def _anp_degree(value: Any) -> int:
    rep = value.to_list()
    while rep and not rep[0]:
        rep = rep[1:]
    return len(rep) - 1


def _ground_to_fraction(value: Any) -> Fraction:
    if hasattr(value, "to_list"):
        rep = value.to_list()
        if not rep:
            return Fraction(0)
        value = rep[-1]
    return Fraction(int(value.numerator), int(value.denominator))


def _coeff_expr(context: FieldContext, coeff: Any):
    if not context.is_extension:
        return Rational(int(coeff.numerator), int(coeff.denominator))
    gen = Symbol(context.generator)
    rep = coeff.to_list()
    n = len(rep)
    return Add(*[
        Rational(int(c.numerator), int(c.denominator)) * gen ** (n - 1 - k)
        for k, c in enumerate(rep)
    ])


def _poly_expr(context: FieldContext, poly: Any):
    gens = [Symbol(n) for n in context.variables]
    terms = []
    for monom, coeff in poly.terms():
        factors = [_coeff_expr(context, coeff)]
        factors.extend(g ** e for g, e in zip(gens, monom) if e)
        terms.append(Mul(*factors))
    return Add(*terms) if terms else Integer(0)


def _text(expr) -> str:
    return sstr(expr).replace("**", "^")


def _lift_coeff(source: FieldContext, coeff: Any, target: FieldContext) -> Scalar:
    if not source.is_extension:
        return target.constant(Fraction(int(coeff.numerator), int(coeff.denominator)))
    if not target.is_extension or target.modulus != source.modulus:
        if _anp_degree(coeff) <= 0:
            return target.constant(_ground_to_fraction(coeff))
        raise FieldError(f"cannot map {source.generator} into {target!r}")
    theta = target.theta
    rep = coeff.to_list()
    n = len(rep)
    total = target.zero
    for k, c in enumerate(rep):
        if c:
            total = total + Fraction(int(c.numerator), int(c.denominator)) * theta ** (n - 1 - k)
    return total


def _evaluate(
    source: FieldContext,
    poly: Any,
    images: List[Optional[Scalar]],
    target: FieldContext,
) -> Scalar:
    powers: Dict[Tuple[int, int], Scalar] = {}
    total = target.zero
    for monom, coeff in poly.terms():
        term = _lift_coeff(source, coeff, target)
        for idx, e in enumerate(monom):
            if not e:
                continue
            image = images[idx]
            if image is None:
                raise FieldError(
                    f"indeterminate {source.variables[idx]} is unbound and absent from {target!r}"
                )
            key = (idx, e)
            if key not in powers:
                powers[key] = image ** e
            term = term * powers[key]
        total = total + term
    return total
