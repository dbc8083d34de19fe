"""
Iterated brackets behind the realization argument: the ad-chain with its
closed-form coefficient, the decomposition of large alpha, and the bracket
identity that closes the induction on the t-degree.
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, Tuple

from scalar import Scalar
from scalar.errors import AlgebraError
from algebra.basis import Generator
from algebra.bracket import bracket
from algebra.element import AlgebraElement, BlockAlgebra

logger = logging.getLogger(__name__)


@dataclass
class AdChainResult:
    """Result of ad_chain: the iterated bracket and the closed-form coefficient."""
    element: AlgebraElement
    coefficient: Scalar
    alpha: int

    @property
    def agrees(self) -> bool:
        expected = self.element.algebra.L(self.alpha, 0) * self.coefficient
        return self.element == expected

    def to_dict(self) -> Dict[str, Any]:
        return {
            "element": self.element.to_text(),
            "coefficient": self.coefficient.to_text(),
            "alpha": self.alpha,
            "agrees": self.agrees,
        }


def ad_chain(algebra: BlockAlgebra, mu0: int, k1: int, k2: int) -> AdChainResult:
    """
    ad_{z2}^{k2-1} ad_{z1}^{k1} (z2) with z1 = L[1-mu0,0], z2 = L[-mu0,0].

    Args:
        algebra: B(q), usually with symbolic q
        mu0: Negative integer
        k1, k2: Positive integers

    Returns:
        AdChainResult with the bracket result, the closed-form coefficient
        q^{k1+k2-1} prod_i(-(i-1)mu0+i-2) prod_j(k1-(k1+j-1)mu0) and the
        target degree k1(1-mu0) - k2*mu0
    """
    if mu0 > -1:
        raise AlgebraError(f"mu0 must be negative, got {mu0}")
    if k1 < 1 or k2 < 1:
        raise AlgebraError(f"k1 and k2 must be positive, got ({k1}, {k2})")
    z1 = algebra.L(1 - mu0, 0)
    z2 = algebra.L(-mu0, 0)

    current = z2
    for _ in range(k1):
        current = bracket(z1, current)
    for _ in range(k2 - 1):
        current = bracket(z2, current)

    coeff = algebra.q ** (k1 + k2 - 1)
    for i in range(1, k1 + 1):
        coeff = coeff * (-(i - 1) * mu0 + i - 2)
    for j in range(1, k2):
        coeff = coeff * (k1 - (k1 + j - 1) * mu0)

    alpha = k1 * (1 - mu0) - k2 * mu0
    return AdChainResult(element=current, coefficient=coeff, alpha=alpha)


def decompose_alpha(mu0: int, alpha: int) -> Tuple[int, int]:
    """
    Write alpha = k1(1-mu0) - k2*mu0 with k1, k2 >= 1.

    Raises:
        AlgebraError: If mu0 >= 0 or alpha < (1-mu0)^2
    """
    if mu0 > -1:
        raise AlgebraError(f"mu0 must be negative, got {mu0}")
    bound = (1 - mu0) ** 2
    if alpha < bound:
        raise AlgebraError(f"alpha={alpha} is below the bound (1-mu0)^2={bound}")
    k0 = alpha // (1 - mu0)
    k1 = alpha + (k0 + 1) * mu0
    k2 = (k0 + 1) * (1 - mu0) - alpha
    if k1 < 1 or k2 < 1 or k1 * (1 - mu0) - k2 * mu0 != alpha:
        raise AlgebraError(f"decomposition failed for mu0={mu0}, alpha={alpha}: ({k1}, {k2})")
    return k1, k2


def induction_r(algebra: BlockAlgebra, mu0: int, alpha: int, s: int) -> Scalar:
    """r = mu0(2q+s-1) + alpha(q+1)."""
    return algebra.q * (2 * mu0 + alpha) + (mu0 * (s - 1) + alpha)


def induction_step_identity(algebra: BlockAlgebra, mu0: int, alpha: int, s: int) -> Scalar:
    """
    Residual of L[alpha,s-1] + r^-1 [L[alpha+mu0,s-2], L[-mu0,1]].

    At s = 3, q = -1 the generic r vanishes identically and the identity
    L[alpha,2] + alpha^-1 [L[alpha+mu0,0], L[-mu0,2]] is used instead.
    The t-degree index of the first factor is s-2 (with s the induction
    variable).

    Returns:
        The coefficient left on L[alpha,s-1]; zero when the identity holds

    Raises:
        AlgebraError: If s < 2 or the denominator vanishes
    """
    if s < 2:
        raise AlgebraError(f"s must be at least 2, got {s}")
    if s == 3 and algebra.q == -1:
        r = algebra.context.constant(alpha)
        if r.is_zero:
            raise AlgebraError("denominator vanishes: alpha = 0 at s=3, q=-1")
        product = bracket(algebra.L(alpha + mu0, 0), algebra.L(-mu0, 2))
    else:
        r = induction_r(algebra, mu0, alpha, s)
        if r.is_zero:
            raise AlgebraError(f"denominator vanishes: r = 0 for mu0={mu0}, alpha={alpha}, s={s}")
        product = bracket(algebra.L(alpha + mu0, s - 2), algebra.L(-mu0, 1))
    residual = algebra.L(alpha, s - 1) + product * r.inverse()
    stray = [k for k in residual.terms if k != Generator(alpha, s - 1)]
    if stray:
        raise AlgebraError(f"unexpected terms in the induction step: {residual}")
    return residual.coefficient(Generator(alpha, s - 1))
