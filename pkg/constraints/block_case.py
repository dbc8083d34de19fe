"""
Extensions of A_{a,b} by a level one operator.

Given L[alpha0,1] v_mu = d_mu v_{alpha0+mu} on A_{a,b}, the bracket
identities

    [L[gamma,0], [L[beta,0], L[alpha0,1]]] = h1 L[alpha0+beta+gamma,1]
    [L[gamma+beta,0], L[alpha0,1]]         = h2 L[alpha0+beta+gamma,1]

applied to v_mu give one linear relation among four d's. Three
substitutions turn it into a 3x3 system whose determinant decides whether
d vanishes. Indices of d are written in the coordinate mubar = mu + a.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from scalar import FieldContext, Scalar, cyclotomic_context
from scalar.errors import ShapeError
from algebra import BlockAlgebra
from constraints.formal import FormalAction, FormalExpr, FormalVector, IndexExpr, Unknown, shifted_d
from constraints.linear import FormalSystem, bareiss_det, det3, eliminate, monomial_support

logger = logging.getLogger(__name__)

CASE_VARIABLES = ("a0", "b", "beta", "gamma", "mubar", "q")


def case_context() -> FieldContext:
    """QQ(a0, b, beta, gamma, mubar, q)."""
    return FieldContext(CASE_VARIABLES)


def _vars(context: FieldContext) -> Tuple[Scalar, ...]:
    return tuple(context.var(n) for n in ("a0", "b", "beta", "gamma", "mubar", "q"))


def h_coeffs(
    alpha0: Any = "a0",
    beta: Any = "beta",
    gamma: Any = "gamma",
    context: Optional[FieldContext] = None,
) -> Tuple[Scalar, Scalar]:
    """
    Bracket coefficients of the two identities above.

    Returns:
        (h1, h2) with h1 = (q(a0-beta)-beta)(q(beta+a0-gamma)-gamma) and
        h2 = q(a0-gamma-beta)-gamma-beta
    """
    context = context or case_context()
    q = context.var("q")
    a0, b_, g_ = (context.coerce(v) for v in (alpha0, beta, gamma))
    h1 = (q * (a0 - b_) - b_) * (q * (b_ + a0 - g_) - g_)
    h2 = q * (a0 - g_ - b_) - g_ - b_
    return h1, h2


def level_zero_rule(context: FieldContext, shift: IndexExpr):
    """L[shift,0] on A_{a,b}: v_x -> q(x + b*shift) v_{x+shift}, x = mubar."""
    q, b = context.var("q"), context.var("b")

    def rule(x: IndexExpr):
        coeff = q * (x.to_scalar(context) + b * shift.to_scalar(context))
        return x + shift, FormalExpr.constant(context, coeff)

    return rule


def level_one_rule(context: FieldContext, alpha0: IndexExpr, shifted: bool = True):
    """L[alpha0,1]: v_x -> d_x v_{x+alpha0} with formal d."""

    def rule(x: IndexExpr):
        return x + alpha0, FormalExpr.unknown(context, Unknown("d", (x,), shifted))

    return rule


@dataclass
class EquationDerivation:
    """Both sides of the relation derived on v_mu, and their displayed forms."""
    h1: Scalar
    h2: Scalar
    lhs: FormalExpr
    rhs: FormalExpr
    lhs_display: FormalExpr
    rhs_display: FormalExpr

    @property
    def equation(self) -> FormalExpr:
        """q*h2*LHS - h1*RHS (= 0 on any module)."""
        q = self.h1.context.var("q")
        return self.lhs * (q * self.h2) - self.rhs * self.h1

    @property
    def residual(self) -> FormalExpr:
        """Derived relation minus the relation built from the displayed sides."""
        q = self.h1.context.var("q")
        display = self.lhs_display * (q * self.h2) - self.rhs_display * self.h1
        return self.equation - display

    @property
    def holds(self) -> bool:
        return (self.lhs - self.lhs_display).is_zero and (self.rhs - self.rhs_display).is_zero

    def to_dict(self) -> Dict[str, Any]:
        return {
            "h1": self.h1.to_text(),
            "h2": self.h2.to_text(),
            "lhs": self.lhs.to_text(),
            "rhs": self.rhs.to_text(),
            "holds": self.holds,
        }


def displayed_sides(context: FieldContext) -> Tuple[FormalExpr, FormalExpr]:
    """The closed forms of LHS and RHS in d[mubar-], d[(mubar+beta)-], ..."""
    a0, b, beta, gamma, mubar, _ = _vars(context)

    def d(*parts: str) -> FormalExpr:
        return FormalExpr.unknown(context, shifted_d(sum((IndexExpr.of(p) for p in parts), IndexExpr())))

    d_mu = d("mubar")
    d_b = d("mubar", "beta")
    d_g = d("mubar", "gamma")
    d_gb = d("mubar", "gamma", "beta")
    lhs = (
        d_mu * (a0 + mubar + b * beta) - d_b * (mubar + b * beta)
    ) * (beta + a0 + mubar + b * gamma) - (
        d_g * (a0 + mubar + gamma + b * beta) - d_gb * (mubar + gamma + b * beta)
    ) * (mubar + b * gamma)
    rhs = d_mu * (a0 + mubar + b * (gamma + beta)) - d_gb * (mubar + b * (gamma + beta))
    return lhs, rhs


def derive_equ_element(context: Optional[FieldContext] = None) -> EquationDerivation:
    """
    Apply both bracket identities to v_mu with the A_{a,b} action and formal d.

    LHS is the double commutator divided by q^2, RHS the single one divided
    by q, both read off at v_{mu+alpha0+beta+gamma}.
    """
    context = context or case_context()
    q = context.var("q")
    a0, beta, gamma = IndexExpr.of("a0"), IndexExpr.of("beta"), IndexExpr.of("gamma")

    action = FormalAction(context)
    action.register("G", level_zero_rule(context, gamma))
    action.register("B", level_zero_rule(context, beta))
    action.register("GB", level_zero_rule(context, gamma + beta))
    action.register("D", level_one_rule(context, a0))

    v = FormalVector.basis(context, "mubar")
    target = IndexExpr.of("mubar") + a0 + beta + gamma
    double = action.commutator("G", action.commutator("B", "D"))(v)
    single = action.commutator("GB", "D")(v)
    lhs = double.coefficient(target) * (q ** -2)
    rhs = single.coefficient(target) * q.inverse()

    h1, h2 = h_coeffs(context=context)
    lhs_display, rhs_display = displayed_sides(context)
    derivation = EquationDerivation(h1, h2, lhs, rhs, lhs_display, rhs_display)
    logger.debug(f"derive_equ_element: holds={derivation.holds}")
    return derivation


def bracket_coefficients(context: Optional[FieldContext] = None) -> Tuple[Scalar, Scalar]:
    """h1, h2 recomputed from the structure constants of B(q)."""
    context = context or case_context()
    algebra = BlockAlgebra(context, context.var("q"))
    a0, _, beta, gamma, _, _ = _vars(context)
    h1 = algebra.structure_constant(beta, 0, a0, 1) * algebra.structure_constant(gamma, 0, beta + a0, 1)
    h2 = algebra.structure_constant(gamma + beta, 0, a0, 1)
    return h1, h2


# (gamma, beta, mubar) -> images giving the three rows of the 3x3 system
ROW_SUBSTITUTIONS: List[Dict[str, Any]] = [
    {"gamma": IndexExpr.of("gamma"), "beta": IndexExpr.of("gamma"), "mubar": IndexExpr.of("beta") - "gamma"},
    {"gamma": IndexExpr.of("gamma"), "beta": -IndexExpr.of("gamma"), "mubar": IndexExpr.of("beta")},
    {"gamma": -IndexExpr.of("gamma"), "beta": -IndexExpr.of("gamma"), "mubar": IndexExpr.of("beta") + "gamma"},
]


def derived_rows(derivation: Optional[EquationDerivation] = None) -> List[FormalExpr]:
    """The derived relation under each of the three substitutions."""
    derivation = derivation or derive_equ_element()
    return [derivation.equation.substitute(bindings) for bindings in ROW_SUBSTITUTIONS]


def f_coeff(idx: int, x1: Any, x2: Any, alpha0: Any, b: Any, q: Any) -> Scalar:
    """
    The coefficient polynomials f1..f5 of the 3x3 system.

    Raises:
        ShapeError: Unless 1 <= idx <= 5
    """
    context = next(v.context for v in (x1, x2, alpha0, b, q) if isinstance(v, Scalar))
    x1, x2, a0, b, q = (context.coerce(v) for v in (x1, x2, alpha0, b, q))
    if idx == 1:
        return q * (q * a0 + 2 * (1 + q) * x1) * (b * x1 - x2) * ((b - 1) * x1 - x2)
    if idx == 2:
        return (q * a0 - (1 + q) * x1) * (q * a0 - x1) * ((2 * b - 1) * x1 + x2)
    if idx == 3:
        return 2 * q * (q * a0 - 2 * (1 + q) * x1) * (a0 + b * x1 + x2) * ((1 - b) * x1 - x2)
    if idx == 4:
        return q ** 2 * a0 * (b * x1 - x2) * (a0 + (b - 1) * x1 + x2)
    if idx == 5:
        return a0 * ((1 + 3 * q + 2 * q ** 2 * (1 + b - b ** 2)) * x1 ** 2 + 2 * q ** 2 * (a0 + x2) * x2)
    raise ShapeError(f"coefficient index must be 1..5, got {idx}")


def g_coeff(idx: int, x1: Any, x2: Any, alpha0: Any, q: Any) -> Scalar:
    """f_coeff at b = 1."""
    return f_coeff(idx, x1, x2, alpha0, 1, q)


def case_unknowns(case: int) -> List[Unknown]:
    beta, gamma = IndexExpr.of("beta"), IndexExpr.of("gamma")
    shifted = case == 1
    return [Unknown("d", (index,), shifted) for index in (beta - gamma, beta, beta + gamma)]


def assemble_case_system(case: int = 1, context: Optional[FieldContext] = None, alpha0: Any = "a0") -> FormalSystem:
    """
    The 3x3 system in d at beta-gamma, beta, beta+gamma.

    Case 1 is A_{a,b} with shifted indices; case 2 uses the same
    coefficients at b = 1 and plain indices.

    Raises:
        ShapeError: Unless case is 1 or 2
    """
    if case not in (1, 2):
        raise ShapeError(f"case must be 1 or 2, got {case}")
    context = context or case_context()
    a0 = context.coerce(alpha0)
    b = context.var("b") if case == 1 else context.one
    q = context.var("q")
    beta, gamma = context.var("beta"), context.var("gamma")
    beta_p = beta + a0

    def f(idx: int, x1: Scalar, x2: Scalar) -> Scalar:
        return f_coeff(idx, x1, x2, a0, b, q)

    rows = [
        (f(1, -gamma, beta_p) - f(2, gamma, beta_p), f(3, gamma, beta), f(1, -gamma, beta) + f(2, gamma, beta)),
        (f(4, gamma, beta), f(5, gamma, beta), f(4, -gamma, beta)),
        (f(1, gamma, beta) + f(2, -gamma, beta), f(3, -gamma, beta), f(1, gamma, beta_p) - f(2, -gamma, beta_p)),
    ]
    unknowns = case_unknowns(case)
    equations = []
    for row in rows:
        eq = FormalExpr.zero(context)
        for coeff, u in zip(row, unknowns):
            eq = eq + FormalExpr.unknown(context, u, coeff)
        equations.append(eq)
    return FormalSystem(context, equations, unknowns, labels=[f"case{case}.row{k + 1}" for k in range(3)])


def case_determinant(case: int = 1, context: Optional[FieldContext] = None) -> Scalar:
    return det3(assemble_case_system(case, context))


def displayed_coefficients(context: Optional[FieldContext] = None) -> Dict[str, Scalar]:
    """The closed forms of the determinant coefficients, keyed P(i,j)/Q(i,j)."""
    context = context or case_context()
    a0, b, q = context.var("a0"), context.var("b"), context.var("q")
    return {
        "P(0,8)": 8 * b * (1 - b) * (2 * b - 1) * q * (1 + q) ** 3 * (1 + 2 * q) * a0,
        "P(1,6)": 2 * (1 + q) ** 2 * (1 + 2 * q) * (1 + q - 2 * q ** 2 + 12 * b * q ** 2 - 12 * b ** 2 * q ** 2) * a0 ** 2,
        "P(1,6)|b=1/2": 2 * (1 + q) ** 2 * (1 + 2 * q) * (1 + q + q ** 2) * a0 ** 2,
        "Q(1,6)": 2 * (1 - q) * (1 + q) ** 2 * (1 + 2 * q) ** 2 * a0 ** 2,
        "Q(0,6)": (1 - q) * (1 + q) ** 2 * (1 + 2 * q) ** 2 * a0 ** 3,
    }


@dataclass
class DeterminantReport:
    """Support of a case determinant in (beta, gamma) and its coefficients."""
    case: int
    determinant: Scalar
    support: Dict[Tuple[int, int], Scalar]

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.support), default=-1)

    def coefficient(self, i: int, j: int) -> Scalar:
        return self.support.get((i, j), self.determinant.context.zero)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "case": self.case,
            "total_degree": self.total_degree,
            "support": {f"beta^{i}*gamma^{j}": c.to_text() for (i, j), c in sorted(self.support.items())},
        }


def determinant_report(case: int = 1, context: Optional[FieldContext] = None) -> DeterminantReport:
    det = case_determinant(case, context)
    report = DeterminantReport(case, det, monomial_support(det))
    logger.info(f"case {case} determinant: degree {report.total_degree}, support {sorted(report.support)}")
    return report


@dataclass
class OmegaResult:
    """F with F*d[beta-] = 0 after the elimination at q = theta, b = 1/2."""
    alpha0: int
    polynomial: Scalar
    h4: Scalar
    determinant: Scalar

    @property
    def degree(self) -> int:
        return self.polynomial.degree("beta")

    @property
    def matches_determinant(self) -> bool:
        return self.polynomial == self.determinant or self.polynomial == -self.determinant

    def to_dict(self) -> Dict[str, Any]:
        return {
            "alpha0": self.alpha0,
            "degree": self.degree,
            "H(4)": self.h4.to_text(),
            "nonzero": not self.h4.is_zero,
            "matches_determinant": self.matches_determinant,
        }


def omega_pipeline(alpha0: int, system: Optional[FormalSystem] = None) -> OmegaResult:
    """
    At q = theta (theta^2+theta+1 = 0) and b = 1/2: eliminate
    d[(beta+gamma)-] from rows 1 and 2, instantiate the result at
    (beta, gamma) = (beta, 1), (beta-1, 1), (beta, 2), then eliminate
    d[(beta-2)-] and d[(beta-1)-].

    Raises:
        ShapeError: If alpha0 is 0
    """
    if alpha0 == 0:
        raise ShapeError("alpha0 must be nonzero")
    system = system or assemble_case_system(1)
    target = cyclotomic_context("beta", "gamma")
    rows = FormalSystem(system.context, system.equations[:2], labels=system.labels[:2])
    rows = rows.specialize({"q": target.theta, "b": Fraction(1, 2), "a0": alpha0}, target)

    beta, gamma = IndexExpr.of("beta"), IndexExpr.of("gamma")
    reduced = eliminate(rows, [shifted_d(beta + gamma)])
    relation = FormalSystem(target, reduced.equations, [shifted_d(beta - gamma), shifted_d(beta)], ["A"])

    instances = [
        relation.substitute({"gamma": 1}),
        relation.substitute({"beta": beta - 1, "gamma": 1}),
        relation.substitute({"gamma": 2}),
    ]
    unknowns = [shifted_d(beta - 2), shifted_d(beta - 1), shifted_d(beta)]
    instantiated = FormalSystem(
        target,
        [s.equations[0] for s in instances],
        unknowns,
        ["B(beta,1)", "B(beta-1,1)", "B(beta,2)"],
    )
    final = eliminate(instantiated, unknowns[:2])
    polynomial = final.equations[0].coefficient(unknowns[2])
    determinant = bareiss_det(instantiated.coefficient_matrix(unknowns))
    h4 = polynomial.coeff_monomial({"beta": 4})
    result = OmegaResult(alpha0, polynomial, h4, determinant)
    logger.debug(f"omega pipeline alpha0={alpha0}: degree {result.degree}, H(4)={h4.to_text()}")
    return result


@dataclass
class QOneFallback:
    """The eigen-identity [L[0,0],L[a0,1]] = a0 L[a0,1] on v_mu at q = 1."""
    structure_constant: Scalar
    residual: FormalExpr
    q_determinant: Scalar

    @property
    def consistent(self) -> bool:
        return self.structure_constant == self.structure_constant.context.var("a0") and self.residual.is_zero

    def to_dict(self) -> Dict[str, Any]:
        return {
            "structure_constant": self.structure_constant.to_text(),
            "residual": self.residual.to_text(),
            "case2_determinant": self.q_determinant.to_text(),
        }


def q_one_fallback(context: Optional[FieldContext] = None) -> QOneFallback:
    """
    At q = 1 the case 2 determinant vanishes. The eigen-identity, applied to
    v_mu through the formal action, is satisfied by every d: the residual
    a0*(L[a0,1] v) - [L[0,0], L[a0,1]] v is identically zero.
    """
    context = context or case_context()
    one = context.one
    algebra = BlockAlgebra(context, one)
    a0 = context.var("a0")
    sc = algebra.structure_constant(0, 0, a0, 1)

    action = FormalAction(context)
    action.register("L00", lambda x: (x, FormalExpr.constant(context, x.to_scalar(context))))
    action.register("D", level_one_rule(context, IndexExpr.of("a0"), shifted=False))
    v = FormalVector.basis(context, "mubar")
    lhs = action.commutator("L00", "D")(v)
    rhs = action.op("D")(v).scale(sc)
    residual = (rhs - lhs).coefficient(IndexExpr.of("mubar") + "a0")
    det = case_determinant(2, context).specialize({"q": 1})
    return QOneFallback(sc, residual, det)
