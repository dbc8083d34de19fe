"""
Module-axiom checks for intermediate series modules: bracket residuals,
windowed verification, eigenvalues, reachability, restriction to the
Virasoro subalgebra, the wrong-level obstruction and scaling pullbacks.
"""
import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from scalar import FieldContext, Scalar
from scalar.errors import ModuleDefinitionError
from algebra import AlgebraElement, BlockAlgebra, Central, bracket
from intseries.families import (
    Aab,
    Extension,
    GradedVector,
    IntermediateModule,
    Level,
    S,
    ST,
    Trivial,
)

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


def act(module: IntermediateModule, alpha: int, i: int, v: GradedVector) -> GradedVector:
    """L[alpha,i] v."""
    coeffs: Dict[int, Scalar] = {}
    for mu, c in v.coeffs.items():
        found = module.coefficient(alpha, i, mu)
        if found is None:
            continue
        target, coeff = found
        term = c * coeff
        coeffs[target] = coeffs[target] + term if target in coeffs else term
    return GradedVector(module.context, coeffs)


def act_element(module: IntermediateModule, x: AlgebraElement, v: GradedVector) -> GradedVector:
    """x v for an algebra element x; c acts as 0."""
    result = GradedVector.zero(module.context)
    for index, coeff in x.terms.items():
        if isinstance(index, Central):
            continue
        result = result + act(module, index.alpha, index.i, v) * coeff
    return result


def _algebra(module: IntermediateModule) -> BlockAlgebra:
    return BlockAlgebra(module.context, module.q)


def bracket_residual(module: IntermediateModule, first: Pair, second: Pair, mu: int) -> GradedVector:
    """
    [x,y] v_mu - (x(y v_mu) - y(x v_mu)) for x = L[first], y = L[second].

    Zero for every pair and mu iff the action is a module action.
    """
    algebra = _algebra(module)
    br = bracket(algebra.L(*first), algebra.L(*second))
    return _residual(module, br, first, second, mu)


def _residual(
    module: IntermediateModule,
    br: AlgebraElement,
    first: Pair,
    second: Pair,
    mu: int,
) -> GradedVector:
    v = module.basis_vector(mu)
    lhs = act_element(module, br, v)
    xy = act(module, first[0], first[1], act(module, second[0], second[1], v))
    yx = act(module, second[0], second[1], act(module, first[0], first[1], v))
    return lhs - (xy - yx)


@dataclass
class Violation:
    """A nonzero bracket residual and where it was found."""
    first: Pair
    second: Pair
    mu: int
    residual: GradedVector

    def to_dict(self) -> Dict[str, Any]:
        return {
            "first": f"L[{self.first[0]},{self.first[1]}]",
            "second": f"L[{self.second[0]},{self.second[1]}]",
            "mu": self.mu,
            "residual": self.residual.to_dict(),
        }


def window_range(window: Any) -> List[int]:
    """Accept W (meaning [-W, W]) or an explicit (lo, hi) pair."""
    if isinstance(window, int):
        return list(range(-window, window + 1))
    lo, hi = window
    return list(range(int(lo), int(hi) + 1))


def verify_module(
    module: IntermediateModule,
    window: Any = 8,
    alpha_max: int = 4,
    i_max: int = 6,
) -> List[Violation]:
    """
    Run bracket_residual over all generator pairs with |alpha| <= alpha_max,
    i <= i_max and every basis vector in the window.

    Each unordered pair is checked once; pairs where both generators and
    their bracket act as 0 are skipped.

    Returns:
        Every nonzero residual
    """
    algebra = _algebra(module)
    generators = [
        (alpha, i)
        for i in range(i_max + 1)
        for alpha in range(-alpha_max, alpha_max + 1)
    ]
    mus = [mu for mu in window_range(window) if module.in_basis(mu)]
    violations: List[Violation] = []
    checked = 0
    for first, second in itertools.combinations(generators, 2):
        target = (first[0] + second[0], first[1] + second[1])
        if not (module.acts(*first) or module.acts(*second) or module.acts(*target)):
            continue
        br = bracket(algebra.L(*first), algebra.L(*second))
        for mu in mus:
            residual = _residual(module, br, first, second, mu)
            checked += 1
            if not residual.is_zero:
                violations.append(Violation(first, second, mu, residual))
    logger.debug(f"verify_module: {checked} residuals, {len(violations)} violations for {module!r}")
    return violations


def eigen_check(module: IntermediateModule, mu: int) -> Scalar:
    """Coefficient of v_mu in L[0,0] v_mu minus q(mu + a)."""
    image = act(module, 0, 0, module.basis_vector(mu))
    offset = module.family.eigen_offset(module.context)
    return image.coefficient(mu) - module.q * (offset + mu)


@dataclass
class ReachabilityReport:
    """Pairs (start, target) of the inner window with v_target not reached from v_start."""
    inner: List[int]
    unreachable: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def irreducible(self) -> bool:
        return not self.unreachable

    def to_dict(self) -> Dict[str, Any]:
        return {
            "inner": [self.inner[0], self.inner[-1]] if self.inner else [],
            "unreachable": [list(p) for p in self.unreachable],
            "irreducible": self.irreducible,
        }


def _probe_levels(q: Scalar) -> int:
    if q.is_rational():
        doubled = -2 * q.to_fraction()
        if doubled.denominator == 1 and doubled > 0:
            return max(1, int(doubled))
    return 1


def irreducible_window(module: IntermediateModule, window: Any = 8) -> ReachabilityReport:
    """
    Reachability probe: from each v_mu of the inner half of the window,
    follow nonzero actions of L[alpha,i] (|alpha| <= 2, i <= max(1, -2q))
    inside the window and report inner vectors that are never reached.

    A coefficient counts as invertible iff it is not identically zero.
    """
    mus = window_range(window)
    if len(mus) < 5 or mus[0] != -mus[-1]:
        raise ModuleDefinitionError(f"window must be symmetric with at least 5 indices, got {window!r}")
    half = mus[-1] // 2
    inside = {mu for mu in mus if module.in_basis(mu)}
    inner = [mu for mu in mus if abs(mu) <= half and module.in_basis(mu)]
    generators = [(alpha, i) for i in range(_probe_levels(module.q) + 1) for alpha in range(-2, 3)]

    edges: Dict[int, List[int]] = {}
    for mu in sorted(inside):
        targets = []
        for alpha, i in generators:
            found = module.coefficient(alpha, i, mu)
            if found is not None and found[0] in inside:
                targets.append(found[0])
        edges[mu] = targets

    report = ReachabilityReport(inner=inner)
    for start in inner:
        seen = {start}
        queue = deque([start])
        while queue:
            node = queue.popleft()
            for nxt in edges[node]:
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        report.unreachable.extend((start, target) for target in inner if target not in seen)
    return report


def vir_restriction(module: IntermediateModule, alpha: int, mu: int) -> Scalar:
    """Coefficient of v_{alpha+mu} in q^-1 L[alpha,0] v_mu (the Virasoro action)."""
    found = module.coefficient(alpha, 0, mu)
    if found is None:
        return module.context.zero
    return found[1] / module.q


@dataclass
class ObstructionProbe:
    """Residual of [L[1,0], L[-1,j]] on v_0 when only L[0,j] acts, by s."""
    q: Scalar
    j: int
    residual: Scalar
    expected: Scalar

    @property
    def matches(self) -> bool:
        return self.residual == self.expected

    @property
    def proportional_to_s(self) -> bool:
        s = self.residual.context.var("s")
        return "s" not in (self.residual / s).variables()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "q": self.q.to_text(),
            "j": self.j,
            "residual": self.residual.to_text(),
            "expected": self.expected.to_text(),
        }


def obstruction_probe(q: Any, j: int, context: Optional[FieldContext] = None, mu: int = 0) -> ObstructionProbe:
    """
    Give L[0,j] the action s on A_{a,b} (all other i >= 1 act as 0) and
    evaluate the residual of [L[1,0], L[-1,j]] on v_mu. It equals
    -(2q+j) s, so the action is a module action only when j = -2q.
    """
    if context is None:
        context = FieldContext(("a", "b", "q", "s"))
    q = context.coerce(q)
    module = IntermediateModule(q, Aab(context.var("a"), context.var("b")), Level(j, context.var("s")))
    residual = bracket_residual(module, (1, 0), (-1, j), mu).coefficient(mu)
    expected = -(q * 2 + j) * context.var("s")
    return ObstructionProbe(q=q, j=j, residual=residual, expected=expected)


def pullback_module(module: IntermediateModule, k: int) -> IntermediateModule:
    """
    The module over B(q/k) obtained by restricting along
    B(q/k) -> B(q), L'[alpha,i] -> L[alpha,k*i]/k.

    The family is unchanged; an action of L[0,j] by s becomes an action of
    L'[0,j/k] by s/k when k divides j and disappears otherwise.
    """
    if k < 1:
        raise ModuleDefinitionError(f"scale factor must be positive, got {k}")
    q = module.q / k
    ext = module.extension
    pulled: Extension = Trivial()
    if isinstance(ext, (S, Level)):
        j = S.level(module.q) if isinstance(ext, S) else ext.j
        if j % k == 0:
            pulled = S(ext.s / k) if isinstance(ext, S) else Level(j // k, ext.s / k)
    elif isinstance(ext, ST):
        if k == 1:
            pulled = ext
        elif k == 2:
            pulled = S(ext.s / 2)
    return IntermediateModule(q, module.family, pulled)


def pullback_mismatches(
    module: IntermediateModule,
    k: int,
    window: Any = 8,
    alpha_max: int = 4,
    i_max: int = 6,
) -> List[Tuple[int, int, int]]:
    """
    Compare k^-1 L[alpha,k*i] on the original module with L[alpha,i] on
    pullback_module(module, k); returns the (alpha, i, mu) that differ.
    """
    pulled = pullback_module(module, k)
    mismatches: List[Tuple[int, int, int]] = []
    for mu in window_range(window):
        if not module.in_basis(mu):
            continue
        v = module.basis_vector(mu)
        for i in range(i_max + 1):
            for alpha in range(-alpha_max, alpha_max + 1):
                original = act(module, alpha, k * i, v) * Fraction(1, k)
                restricted = act(pulled, alpha, i, v)
                if original != restricted:
                    mismatches.append((alpha, i, mu))
    return mismatches
