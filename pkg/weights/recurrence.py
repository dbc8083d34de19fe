"""
Berlekamp-Massey over an exact field.
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Sequence

from scalar import FieldContext, Scalar
from weights.polynomial import Polynomial

logger = logging.getLogger(__name__)


@dataclass
class RecurrenceResult:
    """
    Minimal recurrence found by berlekamp_massey.

    Attributes:
        polynomial: Monic h with sum_k h_k d_{n+k} = 0 for all valid n
        order: Linear complexity L = deg h
        length: Number of sequence terms used
    """
    polynomial: Polynomial
    order: int
    length: int

    @property
    def sufficient(self) -> bool:
        """The recurrence is certified only on at least 2L+2 terms."""
        return self.length >= 2 * self.order + 2

    def to_dict(self) -> Dict[str, Any]:
        return {
            "polynomial": self.polynomial.to_text(),
            "order": self.order,
            "length": self.length,
            "sufficient": self.sufficient,
        }


def berlekamp_massey(seq: Sequence[Scalar], context: FieldContext = None) -> RecurrenceResult:
    """
    Shortest linear recurrence of an exact sequence.

    Args:
        seq: d_0..d_{n-1}
        context: Field context (taken from the first term when omitted)

    Returns:
        RecurrenceResult; check .sufficient before trusting the recurrence
    """
    if context is None:
        if not seq:
            raise ValueError("an empty sequence needs an explicit context")
        context = seq[0].context
    s = [context.coerce(v) for v in seq]
    zero, one = context.zero, context.one

    conn: List[Scalar] = [one]   # C(x) = 1 + c_1 x + ... + c_L x^L
    prev: List[Scalar] = [one]
    order = 0
    shift = 1
    prev_disc = one

    for n in range(len(s)):
        disc = s[n]
        for i in range(1, order + 1):
            if i < len(conn):
                disc = disc + conn[i] * s[n - i]
        if disc.is_zero:
            shift += 1
            continue
        factor = disc / prev_disc
        updated = conn + [zero] * max(0, len(prev) + shift - len(conn))
        for i, b in enumerate(prev):
            updated[i + shift] = updated[i + shift] - factor * b
        if 2 * order <= n:
            prev, prev_disc = conn, disc
            order = n + 1 - order
            shift = 1
        else:
            shift += 1
        conn = updated

    padded = conn + [zero] * max(0, order + 1 - len(conn))
    h = Polynomial(context, [padded[order - k] for k in range(order + 1)])
    logger.debug(f"berlekamp_massey: order {order} on {len(s)} terms, h = {h}")
    return RecurrenceResult(polynomial=h, order=order, length=len(s))
