"""
Level one and level two actions at q = -1.

The recurrences below come from applying brackets of B(-1) to v_mu on a
module whose degree zero part is A_a, B_a, A'_{0,1} + C v_0 or A_{a,b}.
Linear systems are solved exactly over QQ(a); the quadratic system of the
A_{a,b} case is checked against its three solution branches.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

from scalar import FieldContext, Scalar
from scalar.errors import InconsistentSystemError, ShapeError
from algebra import BlockAlgebra, bracket
from intseries import Ap01
from constraints.formal import FormalAction, FormalExpr, FormalVector, IndexExpr, Unknown, sequence
from constraints.linear import FormalSystem, LinearSolution, solve_linear

logger = logging.getLogger(__name__)

Q_MINUS_ONE = -1

SUBCASES = ("2.1", "2.2", "2.3", "main")


def minus_one_context() -> FieldContext:
    return FieldContext(("a", "b", "t", "t0", "t1"))


def _e(context: FieldContext, index: int) -> FormalExpr:
    return sequence(context, "e", index)


def _f(context: FieldContext, index: int) -> FormalExpr:
    return sequence(context, "f", index)


def _u(name: str, index: int) -> Unknown:
    return Unknown.of(name, index)


def _window_unknowns(name: str, window: int, skip: Sequence[int] = ()) -> List[Unknown]:
    return [_u(name, n) for n in range(-window, window + 1) if n not in skip]


@dataclass
class Claim:
    """One conclusion checked on an assembled system."""
    name: str
    system: FormalSystem
    holds: bool
    solution: Optional[LinearSolution] = None
    witness: str = ""

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "claim": self.name,
            "holds": self.holds,
            "equations": len(self.system),
            "unknowns": len(self.system.unknowns),
        }
        if self.solution is not None:
            data["solution"] = self.solution.to_dict()
        if self.witness:
            data["witness"] = self.witness
        return data


@dataclass
class CaseAnalysis:
    """Every claim of one subcase."""
    subcase: str
    claims: List[Claim] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "pass" if all(c.holds for c in self.claims) else "fail"

    @property
    def system(self) -> FormalSystem:
        """The displayed system of the subcase."""
        return self.claims[0].system

    def to_dict(self) -> Dict[str, Any]:
        return {
            "subcase": self.subcase,
            "verdict": self.verdict,
            "claims": [c.to_dict() for c in self.claims],
        }


def _solve_claim(
    name: str,
    system: FormalSystem,
    check: Callable[[LinearSolution], bool],
) -> Claim:
    try:
        solution = solve_linear(system)
    except InconsistentSystemError as e:
        logger.error(f"{name}: {e}")
        return Claim(name, system, False, witness=str(e))
    holds = check(solution)
    if not holds:
        logger.error(f"{name}: unexpected solution space of dimension {solution.dimension}")
    return Claim(name, system, holds, solution)


def _only_zero(solution: LinearSolution) -> bool:
    return solution.only_zero


def _constant(solution: LinearSolution) -> bool:
    return solution.is_constant_line()


# --- Subcase 2.1: degree zero part A_a ---------------------------------------

def eqa1(context: FieldContext, mu: int) -> FormalExpr:
    """mu(a+mu)(f0-f_mu) - (a+1)(f1-f_{mu+1}) - mu(a+mu+1)(f0-f_{mu+1})."""
    a = context.var("a")
    return (
        (_f(context, 0) - _f(context, mu)) * (mu * (a + mu))
        - (_f(context, 1) - _f(context, mu + 1)) * (a + 1)
        - (_f(context, 0) - _f(context, mu + 1)) * (mu * (a + mu + 1))
    )


def eqa2(context: FieldContext, mu: int) -> FormalExpr:
    """(mu-1)(f_{-1}-f_{mu-1}) - mu(f_{-1}-f_mu)."""
    return (_f(context, -1) - _f(context, mu - 1)) * (mu - 1) - (_f(context, -1) - _f(context, mu)) * mu


def _subcase_21(context: FieldContext, window: int) -> CaseAnalysis:
    labels = ["Eqa1(2)", "Eqa1(-2)", "Eqa1(-3)", "Eqa1(1)", "Eqa2(2)", "Eqa2(-2)", "Eqa2(-3)"]
    equations = [eqa1(context, m) for m in (2, -2, -3, 1)] + [eqa2(context, m) for m in (2, -2, -3)]
    displayed = FormalSystem(context, equations, labels=labels)

    e_eqs = [_e(context, -1)] + [
        _e(context, m - 1) * (m - 1) - _e(context, m - 2) * (m - 2)
        for m in range(-window + 2, window + 2)
        if m != 1
    ]
    e_system = FormalSystem(context, e_eqs, _window_unknowns("e", window))

    mus = [m for m in range(-window + 1, window + 1) if m not in (0, 1, -1)]
    constancy = FormalSystem(
        context,
        displayed.equations + [eqa2(context, m) for m in mus],
        _window_unknowns("f", window),
    )
    return CaseAnalysis("2.1", [
        _solve_claim("f0 = f(+-1) = f(+-2) = f(+-3)", displayed, _constant),
        _solve_claim(
            "e_mu = 0 for mu != 0",
            e_system,
            lambda s: s.dimension == 1 and all(v.is_zero for u, v in s.basis[0].items() if u != _u("e", 0)),
        ),
        _solve_claim("f constant on the window", constancy, _constant),
    ])


# --- Subcase 2.2: degree zero part B_a ---------------------------------------

def eqb1(context: FieldContext, mu: int) -> FormalExpr:
    """mu((mu+1)e_{-2} - mu e_{-mu-1}) - mu(a+mu)e0 + (mu-1)e_{-mu}."""
    a = context.var("a")
    return (
        (_e(context, -2) * (mu + 1) - _e(context, -mu - 1) * mu) * mu
        - _e(context, 0) * (mu * (a + mu))
        + _e(context, -mu) * (mu - 1)
    )


def eqb2(context: FieldContext, mu: int) -> FormalExpr:
    a = context.var("a")
    return (
        (_e(context, -1) * mu - _e(context, -mu) * ((mu - 1) * (a + mu - 1))) * (mu + 1)
        - (_e(context, -2) * (mu + 1) - _e(context, -mu - 1) * mu) * (a + 1)
        - (_e(context, 0) * (mu * (a + mu)) - _e(context, -mu) * (mu - 1)) * mu
    )


def eqb3(context: FieldContext, mu: int) -> FormalExpr:
    """(1-mu)(f_{1-mu}-f1) + mu(f_{-mu}-f1)."""
    return (_f(context, 1 - mu) - _f(context, 1)) * (1 - mu) + (_f(context, -mu) - _f(context, 1)) * mu


def eqb4(context: FieldContext, mu: int) -> FormalExpr:
    a = context.var("a")
    return (
        (_f(context, -mu - 1) - _f(context, -1)) * (a + 1)
        + _f(context, -mu - 1) * (mu * (a + mu + 1))
        - _f(context, -mu) * (mu * (a + mu))
        - _f(context, 0) * mu
    )


def _subcase_22(context: FieldContext, window: int) -> CaseAnalysis:
    e_labels = ["Eqb1(0)", "Eqb1(2)", "Eqb1(3)", "Eqb2(1)", "Eqb2(2)", "Eqb2(3)"]
    e_eqs = [eqb1(context, m) for m in (0, 2, 3)] + [eqb2(context, m) for m in (1, 2, 3)]
    e_system = FormalSystem(context, e_eqs, labels=e_labels)

    e_window = FormalSystem(
        context,
        e_eqs + [eqb1(context, m) for m in range(-window, window) if m != 1],
        _window_unknowns("e", window),
    )

    f_labels = ["Eqb3(2)", "Eqb3(-2)", "Eqb3(3)", "Eqb4(2)", "Eqb4(-2)", "Eqb4(1)", "Eqb4(-3)"]
    f_eqs = [eqb3(context, m) for m in (2, -2, 3)] + [eqb4(context, m) for m in (2, -2, 1, -3)]
    f_system = FormalSystem(context, f_eqs, labels=f_labels)

    mus = [m for m in range(-window + 1, window + 1) if m not in (0, 1, -1)]
    constancy = FormalSystem(
        context,
        f_eqs + [eqb3(context, m) for m in mus],
        _window_unknowns("f", window),
    )
    return CaseAnalysis("2.2", [
        _solve_claim("e0 = e(-1) = ... = e(-4) = 0", e_system, _only_zero),
        _solve_claim("e = 0 on the window", e_window, _only_zero),
        _solve_claim("f0 = f(+-1) = f(+-2) = f(+-3)", f_system, _constant),
        _solve_claim("f constant on the window", constancy, _constant),
    ])


# --- Subcase 2.3: degree zero part A'_{0,1} + C v_0 --------------------------

def eqc1(context: FieldContext, mu: int) -> FormalExpr:
    """(mu+1)e_{mu+1} - mu e_mu."""
    return _e(context, mu + 1) * (mu + 1) - _e(context, mu) * mu


def eqc2(context: FieldContext, mu: int) -> FormalExpr:
    return eqc1(context, mu) + _e(context, 1) - _e(context, 2) * 2


def subcase_23_action(context: FieldContext) -> FormalAction:
    """
    L[1,1], L[0,2], L[-1,2] and L[1,0] on A'_{0,1} + C v_0 with e_mu = e_{1,mu}
    and f_mu = f_{0,mu}; L[alpha,0] and L[-1,2] kill v_0.
    """
    q = context.constant(Q_MINUS_ONE)
    family = Ap01()

    def l11(x: IndexExpr):
        mu = x.value
        if mu == -1:
            return IndexExpr.of(0), -_e(context, 1)
        return x + 1, _e(context, mu)

    def l_minus12(x: IndexExpr):
        mu = x.value
        if mu == 0:
            return None
        return x - 1, (_f(context, mu) - _f(context, mu - 1)) * (-(mu - 1))

    def l10(x: IndexExpr):
        mu = x.value
        if mu == 0:
            return None
        return x + 1, FormalExpr.constant(context, family.degree_zero(q, 1, mu))

    action = FormalAction(context)
    action.register("L11", l11)
    action.register("L02", lambda x: (x, _f(context, x.value)))
    action.register("L-12", l_minus12)
    action.register("L10", l10)
    return action


def zero_mode_claim(context: FieldContext) -> Claim:
    """2[L11, L02] - [[L11, L-12], L10] on v_0 equals -2 e0 (f1 - f0) v_1."""
    algebra = BlockAlgebra(context, Q_MINUS_ONE)
    identity = bracket(algebra.L(1, 1), algebra.L(0, 2)) * 2 - bracket(
        bracket(algebra.L(1, 1), algebra.L(-1, 2)), algebra.L(1, 0)
    )
    action = subcase_23_action(context)
    v0 = FormalVector.basis(context, 0)
    lhs = action.scaled(action.commutator("L11", "L02"), 2)(v0)
    rhs = action.commutator(action.commutator("L11", "L-12"), "L10")(v0)
    difference = (lhs - rhs).coefficient(1)
    e0, f0, f1 = sequence(context, "e", 0), sequence(context, "f", 0), sequence(context, "f", 1)
    expected = e0 * (f1 - f0) * (-2)
    system = FormalSystem(context, [difference], labels=["2[L11,L02] - [[L11,L-12],L10] on v0"])
    holds = identity.is_zero and (difference - expected).is_zero
    return Claim("e0 (f1 - f0) = 0", system, holds, witness=difference.to_text())


def _subcase_23(context: FieldContext, window: int) -> CaseAnalysis:
    e_labels = ["Eqc1(2)", "Eqc1(-1)", "Eqc2(2)", "Eqc2(0)"]
    e_eqs = [eqc1(context, 2), eqc1(context, -1), eqc2(context, 2), eqc2(context, 0)]
    e_system = FormalSystem(context, e_eqs, [_u("e", n) for n in (-1, 1, 2, 3)], e_labels)

    e_window = FormalSystem(
        context,
        e_eqs + [eqc1(context, m) for m in range(-window, window) if m not in (0, 1)],
        _window_unknowns("e", window, skip=(0,)),
    )

    f_eqs = [_f(context, -1) - _f(context, 1), _f(context, -2) - _f(context, 2)] + [
        _f(context, m) * m - _f(context, m - 1) * (m - 1) - _f(context, -1)
        for m in range(-window + 1, window + 1)
        if m not in (0, 1, -1)
    ]
    f_window = FormalSystem(context, f_eqs, _window_unknowns("f", window, skip=(0,)))
    return CaseAnalysis("2.3", [
        _solve_claim("e(-1) = e1 = e2 = e3 = 0", e_system, _only_zero),
        _solve_claim("e_mu = 0 for mu != 0", e_window, _only_zero),
        _solve_claim("f_mu constant for mu != 0", f_window, _constant),
        zero_mode_claim(context),
    ])


# --- A_{a,b} at q = -1: the quadratic system in f_mu = f_{1,mu} --------------
#
# With origin = -a the unknown f[n] stands for f_mu at mu = n - a, so a + mu
# is the integer n and the coefficients stay exact in symbolic a.

def _abar(context: FieldContext, origin: Any) -> Scalar:
    return context.var("a") + origin


def f_level(context: FieldContext, alpha: int, mu: int, origin: Any = 0) -> FormalExpr:
    """f_{alpha,mu} = (a+mu+1+b(alpha-1)) f_mu - (a+mu+b(alpha-1)) f_{alpha+mu-1}."""
    a, b = _abar(context, origin), context.var("b")
    return _f(context, mu) * (a + mu + 1 + b * (alpha - 1)) - _f(context, alpha + mu - 1) * (a + mu + b * (alpha - 1))


def eq1(context: FieldContext, alpha: int, mu: int, origin: Any = 0) -> FormalExpr:
    a, b = _abar(context, origin), context.var("b")
    return (f_level(context, 0, mu, origin) - f_level(context, 0, alpha + mu, origin)) * (a + mu + b * alpha)


def eq2(context: FieldContext, alpha: int, mu: int, origin: Any = 0) -> FormalExpr:
    return (
        f_level(context, alpha - 1, mu, origin) * _f(context, alpha + mu - 1)
        - f_level(context, alpha - 1, mu + 1, origin) * _f(context, mu)
    )


def eq3(context: FieldContext, alpha: int, mu: int, origin: Any = 0) -> FormalExpr:
    a, b = _abar(context, origin), context.var("b")
    return (
        f_level(context, mu, alpha, origin) * (a + mu + alpha + b)
        - f_level(context, mu, alpha + 1, origin) * (a + alpha + b)
        - f_level(context, mu + 1, alpha, origin) * mu
    )


def main_system(context: FieldContext, mu: int, origin: Any = 0) -> FormalSystem:
    """
    The six equations on f_{mu+1}, f_mu, f_{mu-1}, f_{mu-2}.

    Args:
        context: Context carrying a and b
        mu: Integer index of the unknowns
        origin: Module index of f[0]; -a indexes the unknowns by mu + a
    """
    labels = [f"Eq1(1,{mu})", f"Eq1(1,{mu - 1})", f"Eq2(0,{mu})", f"Eq2(3,{mu - 1})", f"Eq3(0,{mu})", f"Eq3(-1,{mu + 1})"]
    equations = [
        eq1(context, 1, mu, origin),
        eq1(context, 1, mu - 1, origin),
        eq2(context, 0, mu, origin),
        eq2(context, 3, mu - 1, origin),
        eq3(context, 0, mu, origin),
        eq3(context, -1, mu + 1, origin),
    ]
    return FormalSystem(context, equations, labels=labels)


def _branch_holds(
    context: FieldContext,
    bindings: Dict[str, Any],
    values: Callable[[int], Scalar],
    window: int,
    origin: Any = 0,
) -> Optional[str]:
    """None when every equation vanishes on the branch, else the first failing label."""
    for mu in range(-window, window + 1):
        system = main_system(context, mu, origin)
        if bindings:
            system = system.specialize(bindings)
        for label, eq in zip(system.labels, system.equations):
            assignment = {u: values(u.indices[0].value) for u in eq.unknowns()}
            if not eq.assign(assignment).is_zero:
                return label
    return None


SPIKE_BRANCHES = (
    (0, "t0", -1, "(ii) b = 0 spike at -a-1"),
    (1, "t1", 0, "(iii) b = 1 spike at -a"),
)


def spike_branch(context: FieldContext, b: int, window: int) -> Optional[str]:
    """
    Check a spike branch with a symbolic: f_mu = t at the spike, 0 elsewhere.

    Returns:
        None when every equation vanishes in QQ(a, t0, t1), else the first failing label
    """
    for branch_b, value_name, offset, _ in SPIKE_BRANCHES:
        if branch_b == b:
            break
    else:
        raise ShapeError(f"no spike branch for b = {b}")
    value = context.var(value_name)
    return _branch_holds(
        context,
        {"b": b},
        lambda n: value if n == offset else context.zero,
        window,
        origin=-context.var("a"),
    )


def _main(context: FieldContext, window: int, spikes: Sequence[int] = range(-3, 4)) -> CaseAnalysis:
    t = context.var("t")
    claims: List[Claim] = []

    failing = _branch_holds(context, {}, lambda n: t, window)
    claims.append(Claim("(i) f constant", main_system(context, 0), failing is None, witness=failing or ""))

    for b, value_name, offset, name in SPIKE_BRANCHES:
        failing = spike_branch(context, b, window)
        claims.append(Claim(name, main_system(context, 0, -context.var("a")), failing is None, witness=failing or ""))

        value = context.var(value_name)
        failures = []
        for a in spikes:
            spike = -a + offset
            failing = _branch_holds(
                context,
                {"a": a, "b": b},
                lambda n, spike=spike: value if n == spike else context.zero,
                window,
            )
            if failing is not None:
                failures.append(f"a={a}: {failing}")
        claims.append(Claim(f"{name}, integer a", main_system(context, 0), not failures, witness="; ".join(failures)))
    return CaseAnalysis("main", claims)


def q_minus1_systems(subcase: str, context: Optional[FieldContext] = None, window: int = 6) -> CaseAnalysis:
    """
    Assemble and check the q = -1 systems of one subcase.

    Raises:
        ShapeError: For an unknown subcase name or a window below 4
    """
    context = context or minus_one_context()
    if window < 4:
        raise ShapeError(f"the q = -1 systems reach index -4, window {window} is too small")
    builders = {"2.1": _subcase_21, "2.2": _subcase_22, "2.3": _subcase_23, "main": _main}
    if subcase not in builders:
        raise ShapeError(f"unknown subcase {subcase!r}; expected one of {SUBCASES}")
    analysis = builders[subcase](context, window)
    logger.info(f"q = -1 subcase {subcase}: {analysis.verdict}")
    return analysis
