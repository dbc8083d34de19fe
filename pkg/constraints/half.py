"""
Level one actions at q = -1/2.

At q = -1/2 both L[alpha,1] = (2/alpha)[L[0,1], L[alpha,0]] and
L[alpha,2] = (2/alpha)[L[0,1], L[alpha,1]] hold in B(q). With
L[0,1] v_mu = e_mu v_mu and L[alpha,2] acting as 0 this gives the quadratic
identities (a+mu+b*alpha)(e_mu - e_{alpha+mu})^2 = 0.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from scalar import FieldContext, Scalar
from algebra import BlockAlgebra
from constraints.formal import FormalAction, FormalExpr, FormalVector, IndexExpr, sequence

logger = logging.getLogger(__name__)

Q_HALF = Fraction(-1, 2)

HALF_VARIABLES = ("a", "alpha", "b", "mu", "s", "sp")

# (alpha, mu) substitutions producing the three displayed instances
INSTANCES: List[Tuple[int, IndexExpr]] = [
    (1, IndexExpr.of("mu")),
    (-1, IndexExpr.of("mu") + 1),
    (2, IndexExpr.of("mu")),
]


def half_context() -> FieldContext:
    return FieldContext(HALF_VARIABLES)


def _e(context: FieldContext, index: Any) -> FormalExpr:
    return sequence(context, "e", index)


def level_one_generator(context: FieldContext) -> Tuple[FormalAction, Any]:
    """The action with L[0,1], L[alpha,0] and the derived L[alpha,1], L[alpha,2]."""
    q = context.constant(Q_HALF)
    a, alpha, b = context.var("a"), context.var("alpha"), context.var("b")
    shift = IndexExpr.of("alpha")

    action = FormalAction(context)
    action.register("L01", lambda x: (x, _e(context, x)))
    action.register(
        "La0",
        lambda x: (x + shift, FormalExpr.constant(context, q * (a + x.to_scalar(context) + b * alpha))),
    )
    la1 = action.scaled(action.commutator("L01", "La0"), 2 / alpha)
    la2 = action.scaled(action.commutator("L01", la1), 2 / alpha)
    return action, la2


def expected_identity(context: FieldContext) -> FormalExpr:
    """-(2/alpha^2)(a+mu+b*alpha)(e_mu - e_{alpha+mu})^2."""
    a, alpha, b, mu = (context.var(n) for n in ("a", "alpha", "b", "mu"))
    diff = _e(context, "mu") - _e(context, IndexExpr.of("mu") + "alpha")
    return diff ** 2 * (-(2 / alpha ** 2) * (a + mu + b * alpha))


def displayed_instances(context: FieldContext) -> List[FormalExpr]:
    a, b, mu = (context.var(n) for n in ("a", "b", "mu"))
    e0, e1 = _e(context, "mu"), _e(context, IndexExpr.of("mu") + 1)
    e2 = _e(context, IndexExpr.of("mu") + 2)
    return [
        (e0 - e1) ** 2 * (a + mu + b),
        (e0 - e1) ** 2 * (a + mu - b + 1),
        (e0 - e2) ** 2 * (a + mu + 2 * b),
    ]


@dataclass
class HalfIdentities:
    """The derived identity family, its instances and the checks on them."""
    derived: FormalExpr
    expected: FormalExpr
    instances: List[FormalExpr]
    displayed: List[FormalExpr]
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "derived": self.derived.to_text(),
            "instances": [inst.to_text() for inst in self.instances],
            "checks": dict(self.checks),
        }


def _on_window(expr: FormalExpr, values, window: range) -> bool:
    """True iff expr vanishes at every integer mu of the window for e = values."""
    for m in window:
        at = expr.substitute({"mu": m})
        assignment = {u: values(u.indices[0].value) for u in at.unknowns()}
        if not at.assign(assignment).is_zero:
            return False
    return True


def q_half_identities(context: Optional[FieldContext] = None, window: int = 6) -> HalfIdentities:
    """
    Derive the q = -1/2 identity family on v_mu and check its consequences:

    - the derived coefficient equals -(2/alpha^2)(a+mu+b*alpha)(e_mu-e_{alpha+mu})^2
    - (alpha, mu) -> (1,mu), (-1,mu+1), (2,mu) give the displayed instances
      times -2, -2 and -1/2
    - the first two instances differ by (2b-1)(e_mu-e_{mu+1})^2
    - a constant sequence satisfies every instance
    - for b = 1/2, a = -1/2 the step sequence (s for mu >= 1, s' for mu <= 0)
      satisfies the first two instances on the window while the third at
      mu = 0 equals -(1/4)(s'-s)^2
    """
    context = context or half_context()
    algebra = BlockAlgebra(context, Q_HALF)
    action, la2 = level_one_generator(context)
    v = FormalVector.basis(context, "mu")
    derived = la2(v).coefficient(IndexExpr.of("mu") + "alpha")
    expected = expected_identity(context)

    instances = [derived.substitute({"alpha": alpha, "mu": mu}) for alpha, mu in INSTANCES]
    displayed = displayed_instances(context)
    factors = [Fraction(-2, alpha ** 2) for alpha, _ in INSTANCES]

    checks: Dict[str, bool] = {}
    alpha = context.var("alpha")
    checks["generators"] = (
        algebra.structure_constant(0, 1, alpha, 0) == alpha / 2
        and algebra.structure_constant(0, 1, alpha, 1) == alpha / 2
    )
    checks["derived identity"] = (derived - expected).is_zero
    for k, (inst, disp, factor) in enumerate(zip(instances, displayed, factors)):
        checks[f"instance {k + 1}"] = (inst - disp * factor).is_zero

    b = context.var("b")
    e0, e1 = _e(context, "mu"), _e(context, IndexExpr.of("mu") + 1)
    difference = instances[0] * Fraction(-1, 2) - instances[1] * Fraction(-1, 2)
    checks["b != 1/2 forces constancy"] = (difference - (e0 - e1) ** 2 * (2 * b - 1)).is_zero

    s, sp = context.var("s"), context.var("sp")
    mus = range(-window, window + 1)
    checks["constant sequence"] = all(_on_window(inst, lambda n: s, mus) for inst in instances)

    step_bindings = {"a": Fraction(-1, 2), "b": Fraction(1, 2)}
    step = [inst.specialize(step_bindings) for inst in instances]

    def values(n: int) -> Scalar:
        return s if n >= 1 else sp

    checks["step sequence passes instances 1 and 2"] = all(_on_window(inst, values, mus) for inst in step[:2])
    at_zero = step[2].substitute({"mu": 0})
    value = at_zero.assign({u: values(u.indices[0].value) for u in at_zero.unknowns()})
    checks["step sequence forces s = s'"] = (value - FormalExpr.constant(context, -(sp - s) ** 2 / 4)).is_zero

    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        logger.error(f"q = -1/2 identities failed: {failed}")
    return HalfIdentities(derived, expected, instances, displayed, checks)
