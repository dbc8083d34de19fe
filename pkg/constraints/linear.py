"""
Formal systems and exact linear algebra over a FieldContext.

Determinants use fraction-free Bareiss elimination; linear solving goes
through sympy's DomainMatrix over the context's rational function field.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from scalar import FieldContext, Scalar
from scalar.errors import EliminationError, InconsistentSystemError, ShapeError
from constraints.formal import FormalExpr, IndexLike, Unknown

logger = logging.getLogger(__name__)


class FormalSystem:
    """
    Equations (each asserted = 0) over one context.

    Args:
        context: Coefficient field
        equations: FormalExprs
        unknowns: Explicit unknown inventory; defaults to every unknown that
            occurs. Unknowns listed here but absent from all equations are free.
        labels: Optional names of the equations, e.g. "Eqa1(0)"
    """

    def __init__(
        self,
        context: FieldContext,
        equations: Sequence[FormalExpr],
        unknowns: Optional[Sequence[Unknown]] = None,
        labels: Optional[Sequence[str]] = None,
    ):
        self.context = context
        self.equations: List[FormalExpr] = list(equations)
        for eq in self.equations:
            if eq.context != context:
                raise ShapeError(f"equation over {eq.context!r} in a system over {context!r}")
        self._unknowns = list(unknowns) if unknowns is not None else None
        if self._unknowns is not None:
            listed = set(self._unknowns)
            stray = [u for eq in self.equations for u in eq.unknowns() if u not in listed]
            if stray:
                raise ShapeError(f"unknowns outside the inventory: {sorted({u.to_text() for u in stray})}")
        self.labels = list(labels) if labels is not None else [f"eq{k}" for k in range(len(self.equations))]

    @property
    def unknowns(self) -> List[Unknown]:
        if self._unknowns is not None:
            return list(self._unknowns)
        found = {u for eq in self.equations for u in eq.unknowns()}
        return sorted(found, key=Unknown.sort_key)

    @property
    def is_linear(self) -> bool:
        return all(eq.is_linear for eq in self.equations)

    @property
    def is_homogeneous(self) -> bool:
        return all(eq.constant_term.is_zero for eq in self.equations)

    def __len__(self) -> int:
        return len(self.equations)

    def substitute(self, bindings: Mapping[str, IndexLike]) -> "FormalSystem":
        unknowns = [u.substitute(bindings) for u in self._unknowns] if self._unknowns is not None else None
        return FormalSystem(self.context, [eq.substitute(bindings) for eq in self.equations], unknowns, self.labels)

    def specialize(self, bindings: Mapping[str, Any], target: Optional[FieldContext] = None) -> "FormalSystem":
        target = target or self.context
        return FormalSystem(target, [eq.specialize(bindings, target) for eq in self.equations], self._unknowns, self.labels)

    def residuals(self, values: Mapping[Unknown, Any]) -> List[FormalExpr]:
        """Every equation with the given unknowns assigned."""
        return [eq.assign(values) for eq in self.equations]

    def coefficient_matrix(self, unknowns: Optional[Sequence[Unknown]] = None) -> List[List[Scalar]]:
        """
        Raises:
            ShapeError: If an equation is not linear
        """
        if not self.is_linear:
            raise ShapeError("coefficient matrix of a nonlinear system")
        unknowns = list(unknowns) if unknowns is not None else self.unknowns
        return [[eq.coefficient(u) for u in unknowns] for eq in self.equations]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "unknowns": [u.to_text() for u in self.unknowns],
            "equations": [
                {"label": label, "expr": eq.to_text()}
                for label, eq in zip(self.labels, self.equations)
            ],
        }


def bareiss_det(matrix: Sequence[Sequence[Scalar]]) -> Scalar:
    """Determinant by fraction-free Bareiss elimination."""
    n = len(matrix)
    if n == 0:
        raise ShapeError("determinant of an empty matrix")
    if any(len(row) != n for row in matrix):
        raise ShapeError(f"determinant needs a square matrix, got {n}x{[len(r) for r in matrix]}")
    m = [list(row) for row in matrix]
    sign = 1
    previous = None
    for k in range(n - 1):
        if m[k][k].is_zero:
            for i in range(k + 1, n):
                if not m[i][k].is_zero:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return m[k][k].context.zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                elt = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = elt / previous if previous is not None else elt
        previous = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def det3(system: FormalSystem) -> Scalar:
    """
    Determinant of the coefficients of a homogeneous 3x3 linear system.

    Raises:
        ShapeError: Unless the system has 3 linear equations in 3 unknowns
    """
    if len(system) != 3 or len(system.unknowns) != 3:
        raise ShapeError(
            f"det3 needs 3 equations in 3 unknowns, got {len(system)} in {len(system.unknowns)}"
        )
    if not system.is_homogeneous:
        raise ShapeError("det3 needs a homogeneous system")
    return bareiss_det(system.coefficient_matrix())


def coeff_extract(p: Scalar, i: int, j: int, names: Tuple[str, str] = ("beta", "gamma")) -> Scalar:
    """Coefficient of names[0]^i names[1]^j in a polynomial scalar."""
    return p.coeff_monomial({names[0]: i, names[1]: j})


def monomial_support(p: Scalar, names: Tuple[str, str] = ("beta", "gamma")) -> Dict[Tuple[int, int], Scalar]:
    """(i, j) -> coefficient of names[0]^i names[1]^j, nonzero entries only."""
    support: Dict[Tuple[int, int], Scalar] = {}
    for i in range(max(p.degree(names[0]), 0) + 1):
        for j in range(max(p.degree(names[1]), 0) + 1):
            c = coeff_extract(p, i, j, names)
            if not c.is_zero:
                support[(i, j)] = c
    return support


def eliminate(system: FormalSystem, victims: Sequence[Unknown]) -> FormalSystem:
    """
    Eliminate the victims one at a time.

    For each victim the first equation with a nonzero coefficient is the
    pivot; every other equation E becomes (p*E - c_E*P)/p_prev, p_prev being
    the previous pivot, and the pivot equation is dropped. The divisions
    are exact, so when n-1 unknowns are eliminated from n equations the
    last coefficient is the determinant up to sign.

    Raises:
        EliminationError: If no equation involves a victim
    """
    if not system.is_linear:
        raise ShapeError("elimination needs a linear system")
    equations = list(system.equations)
    labels = list(system.labels)
    previous: Optional[Scalar] = None
    for victim in victims:
        pivot_at = next((k for k, eq in enumerate(equations) if not eq.coefficient(victim).is_zero), None)
        if pivot_at is None:
            raise EliminationError(f"pivot for {victim.to_text()} vanishes identically")
        pivot_eq = equations.pop(pivot_at)
        pivot_label = labels.pop(pivot_at)
        p = pivot_eq.coefficient(victim)
        logger.debug(f"eliminate {victim.to_text()} with pivot {pivot_label}")
        reduced = []
        for eq in equations:
            combined = eq * p - pivot_eq * eq.coefficient(victim)
            if previous is not None:
                combined = combined * previous.inverse()
            reduced.append(combined)
        equations = reduced
        labels = [f"{label}/{victim.to_text()}" for label in labels]
        previous = p
    remaining = [u for u in system.unknowns if u not in set(victims)]
    return FormalSystem(system.context, equations, remaining, labels)


@dataclass
class LinearSolution:
    """Solution set particular + span(basis) of a linear system."""
    unknowns: List[Unknown]
    particular: Dict[Unknown, Scalar]
    basis: List[Dict[Unknown, Scalar]] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def only_zero(self) -> bool:
        return not self.basis and all(v.is_zero for v in self.particular.values())

    def is_constant_line(self, unknowns: Optional[Sequence[Unknown]] = None) -> bool:
        """True iff the solutions are exactly the vectors with all listed entries equal."""
        unknowns = list(unknowns) if unknowns is not None else self.unknowns
        if self.dimension != 1 or any(not v.is_zero for v in self.particular.values()):
            return False
        vector = self.basis[0]
        first = vector[unknowns[0]]
        return not first.is_zero and all(vector[u] == first for u in unknowns)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "unknowns": [u.to_text() for u in self.unknowns],
            "dimension": self.dimension,
            "basis": [
                {u.to_text(): v.to_text() for u, v in vector.items() if not v.is_zero}
                for vector in self.basis
            ],
        }


def solve_linear(system: FormalSystem) -> LinearSolution:
    """
    Exact solution space over the context's field.

    Raises:
        ShapeError: If the system is not linear
        InconsistentSystemError: If there is no solution
    """
    context = system.context
    unknowns = system.unknowns
    n = len(unknowns)
    rows = [
        [c.frac for c in row] + [(-eq.constant_term).frac]
        for row, eq in zip(system.coefficient_matrix(unknowns), system.equations)
    ]
    if not rows:
        identity = [{u: (context.one if u == w else context.zero) for w in unknowns} for u in unknowns]
        return LinearSolution(unknowns, {u: context.zero for u in unknowns}, identity)
    matrix = DomainMatrix(rows, (len(rows), n + 1), context.domain)
    reduced, pivots = matrix.rref()
    if n in pivots:
        raise InconsistentSystemError(f"system {system.labels} has no solution")
    entries = [[Scalar(context, e) for e in row] for row in reduced.to_list()]

    particular = {u: context.zero for u in unknowns}
    for r, c in enumerate(pivots):
        particular[unknowns[c]] = entries[r][n]

    basis: List[Dict[Unknown, Scalar]] = []
    for free in (c for c in range(n) if c not in pivots):
        vector = {u: context.zero for u in unknowns}
        vector[unknowns[free]] = context.one
        for r, c in enumerate(pivots):
            vector[unknowns[c]] = -entries[r][free]
        basis.append(vector)
    logger.debug(f"solve_linear: {len(rows)} equations, {n} unknowns, dimension {len(basis)}")
    return LinearSolution(unknowns, particular, basis)


def solve_nullspace(system: FormalSystem) -> List[Dict[Unknown, Scalar]]:
    """Basis of the solutions of a homogeneous linear system."""
    if not system.is_homogeneous:
        raise ShapeError("solve_nullspace needs a homogeneous system")
    return solve_linear(system).basis
