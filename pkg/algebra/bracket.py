"""
Bracket, Virasoro subalgebra and scaling embeddings of B(q).
"""
import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional

from scalar import Scalar
from scalar.errors import AlgebraError
from algebra.basis import CENTRAL, BasisIndex, Central, Generator
from algebra.element import AlgebraElement, BlockAlgebra

logger = logging.getLogger(__name__)


def bracket(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """
    Lie bracket [x, y], the bilinear extension of the basis bracket.

    Raises:
        ContextMismatchError: If x and y belong to different algebras
    """
    x._check(y)
    algebra = x.algebra
    terms: Dict[BasisIndex, Scalar] = {}
    for gx, cx in x.terms.items():
        if isinstance(gx, Central):
            continue
        for gy, cy in y.terms.items():
            if isinstance(gy, Central):
                continue
            coeff = cx * cy
            for index, value in algebra.bracket_basis(gx, gy).items():
                term = coeff * value
                terms[index] = terms[index] + term if index in terms else term
    return AlgebraElement(algebra, terms)


def jacobi_residual(x: AlgebraElement, y: AlgebraElement, z: AlgebraElement) -> AlgebraElement:
    """[x,[y,z]] + [y,[z,x]] + [z,[x,y]]; zero for a Lie algebra."""
    return bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))


def vir_embed(algebra: BlockAlgebra, alpha: int) -> AlgebraElement:
    """
    The Virasoro generator L_alpha = q^-1 L[alpha,0].

    Raises:
        AlgebraError: If q is zero in the algebra's context
    """
    if algebra.q.is_zero:
        raise AlgebraError("the Virasoro embedding needs q != 0")
    return algebra.L(alpha, 0) * algebra.q.inverse()


def vir_central(algebra: BlockAlgebra) -> AlgebraElement:
    """The Virasoro central element q^-2 c."""
    if algebra.q.is_zero:
        raise AlgebraError("the Virasoro embedding needs q != 0")
    return algebra.c() * algebra.q ** -2


def scale_embed(x: AlgebraElement, k: int) -> AlgebraElement:
    """
    Image of x under B(q) -> B(kq), L[alpha,i] -> L[alpha,k*i]/k, c -> c/k^2.

    Args:
        x: Element of B(q)
        k: Positive integer

    Returns:
        Element of B(k*q) over the same context
    """
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise AlgebraError(f"scale factor must be a positive integer, got {k!r}")
    source = x.algebra
    target = BlockAlgebra(source.context, source.q * k)
    terms: Dict[BasisIndex, Scalar] = {}
    for index, coeff in x.terms.items():
        if isinstance(index, Central):
            terms[CENTRAL] = coeff * Fraction(1, k * k)
        else:
            terms[Generator(index.alpha, k * index.i)] = coeff * Fraction(1, k)
    return AlgebraElement(target, terms)


def perfectness_criterion(q: Any) -> bool:
    """
    True iff B(q) equals its derived algebra, i.e. q is not in (1/2)Z_{<0}.

    A symbolic q is treated as generic.
    """
    if isinstance(q, Scalar):
        if not q.is_rational():
            return True
        q = q.to_fraction()
    doubled = 2 * Fraction(q)
    return not (doubled.denominator == 1 and doubled < 0)


def derived_span_gaps(algebra: BlockAlgebra, i_max: int, alpha_max: int = 2) -> List[Generator]:
    """
    Basis vectors L[gamma,j] (|gamma| <= alpha_max, j <= i_max) that no single
    basis bracket [L[alpha,i], L[gamma-alpha,j-i]] with |alpha| <= alpha_max+1
    produces with a nonzero coefficient.

    For q in (1/2)Z_{<0} the list is [L[0,-2q]] once i_max >= -2q; otherwise
    it is empty.
    """
    gaps: List[Generator] = []
    span = alpha_max + 1
    for gamma in range(-alpha_max, alpha_max + 1):
        for j in range(i_max + 1):
            hit = any(
                not algebra.structure_constant(alpha, i, gamma - alpha, j - i).is_zero
                for alpha in range(-span, span + 1)
                for i in range(j + 1)
            )
            if not hit:
                gaps.append(Generator(gamma, j))
    if gaps:
        logger.debug(f"derived algebra misses {[g.to_text() for g in gaps]} at q={algebra.q}")
    return gaps
