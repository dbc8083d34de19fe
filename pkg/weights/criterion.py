"""
Quasifiniteness of highest weight modules.

The generating series of a weight is represented by its exponential
generating coefficients d_n = (2q+n) Lambda_n. A weight is quasifinite iff
d satisfies a constant-coefficient linear recurrence, detected here by
Berlekamp-Massey with an explicit certification margin.
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Optional

from scalar import Scalar
from scalar.errors import QuasifinitenessError, RealizationError, TruncationError
from algebra import AlgebraElement, BlockAlgebra, Generator
from weights.polynomial import Polynomial, QuasiPolynomial
from weights.recurrence import RecurrenceResult, berlekamp_massey
from weights.weight import Weight

logger = logging.getLogger(__name__)


class Verdict:
    """Verdicts of is_quasifinite."""
    QUASIFINITE = "QUASIFINITE"
    NOT_DETECTED = "NOT_DETECTED"
    INSUFFICIENT = "INSUFFICIENT"


@dataclass
class QuasifinitenessResult:
    verdict: str
    polynomial: Optional[Polynomial]
    recurrence: RecurrenceResult

    @property
    def is_quasifinite(self) -> bool:
        return self.verdict == Verdict.QUASIFINITE

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict,
            "h": self.polynomial.to_text() if self.polynomial is not None else None,
            "candidate": self.recurrence.polynomial.to_text(),
            "order": self.recurrence.order,
            "terms": self.recurrence.length,
        }


def delta_coeffs(w: Weight) -> List[Scalar]:
    """d_n = (2q+n) Lambda_n for n = 0..N."""
    return [(w.q * 2 + n) * label for n, label in enumerate(w.labels)]


def is_quasifinite(w: Weight) -> QuasifinitenessResult:
    """
    Decide quasifiniteness within the truncation.

    Returns:
        QUASIFINITE with the minimal h when the recurrence holds on at least
        2L+2 terms, NOT_DETECTED when the linear complexity exceeds N/2,
        INSUFFICIENT otherwise
    """
    d = delta_coeffs(w)
    rec = berlekamp_massey(d, w.context)
    if rec.order > w.truncation // 2:
        verdict = Verdict.NOT_DETECTED
    elif not rec.sufficient:
        verdict = Verdict.INSUFFICIENT
        logger.warning(f"recurrence of order {rec.order} is not certified by {rec.length} terms")
    else:
        verdict = Verdict.QUASIFINITE
    logger.debug(f"is_quasifinite: {verdict} (order {rec.order}, N={w.truncation})")
    polynomial = rec.polynomial if verdict == Verdict.QUASIFINITE else None
    return QuasifinitenessResult(verdict=verdict, polynomial=polynomial, recurrence=rec)


def char_poly(w: Weight) -> Polynomial:
    """
    The stored part h of the characteristic polynomial f(t) = t^q h(t).

    Raises:
        QuasifinitenessError: Unless the verdict is QUASIFINITE
    """
    result = is_quasifinite(w)
    if not result.is_quasifinite:
        raise QuasifinitenessError(result.verdict, f"no certified characteristic polynomial ({result.verdict})")
    return result.polynomial


def constraint_row(h: Polynomial, i: int, w: Weight) -> Scalar:
    """
    sum_k h_k (2q+i+k) Lambda_{i+k}.

    Raises:
        TruncationError: If i + deg h exceeds N
    """
    if i < 0 or i + max(h.degree, 0) > w.truncation:
        raise TruncationError(f"row {i} with deg h = {h.degree} needs labels beyond N={w.truncation}")
    total = w.context.zero
    for k, hk in enumerate(h.coeffs):
        if not hk.is_zero:
            total = total + w.context.coerce(hk) * (w.q * 2 + i + k) * w.labels[i + k]
    return total


def bqa0_element(h_f: Polynomial, j: int, q: Scalar) -> Dict[int, Scalar]:
    """
    The generator (f g)' t^{1-q} of B(q,a)_0 for f = t^q h_f, g = t^{q+j},
    as a functional on labels: label index j+k -> (2q+j+k)(h_f)_k.
    """
    functional: Dict[int, Scalar] = {}
    for k, hk in enumerate(h_f.coeffs):
        if hk.is_zero:
            continue
        value = q.context.coerce(hk) * (q * 2 + j + k)
        if not value.is_zero:
            functional[j + k] = value
    return functional


def apply_functional(functional: Mapping[int, Scalar], w: Weight) -> Scalar:
    """sum_n functional[n] * Lambda_n."""
    total = w.context.zero
    for n, coeff in sorted(functional.items()):
        total = total + coeff * w.label(n)
    return total


def singular_check(w: Weight, h_f: Polynomial) -> bool:
    """
    True iff every constraint row of h_f vanishes within the truncation,
    i.e. x^-1 t^q h_f(t) applied to the highest weight vector is singular.
    """
    return all(row.is_zero for row in singular_rows(w, h_f))


def singular_rows(w: Weight, h_f: Polynomial) -> List[Scalar]:
    rows: List[Scalar] = []
    for i in range(w.truncation - max(h_f.degree, 0) + 1):
        rows.append(constraint_row(h_f, i, w))
    return rows


def depth_one_vector(h_f: Polynomial, algebra: BlockAlgebra) -> AlgebraElement:
    """x^-1 t^q h_f(t) = sum_k (h_f)_k L[-1,k]."""
    return algebra.element({
        Generator(-1, k): algebra.context.coerce(hk)
        for k, hk in enumerate(h_f.coeffs)
        if not hk.is_zero
    })


def singular_witness(w: Weight, h_f: Polynomial) -> Dict[str, Any]:
    """The depth -1 element and the first nonzero constraint row, if any."""
    rows = singular_rows(w, h_f)
    failing = next((i for i, r in enumerate(rows) if not r.is_zero), None)
    vector = depth_one_vector(h_f, BlockAlgebra(w.context, w.q))
    return {
        "vector": vector.to_text(),
        "rows": len(rows),
        "failing_row": failing,
        "value": rows[failing].to_text() if failing is not None else "0",
    }


def labels_from_quasipoly(
    quasi: QuasiPolynomial,
    q: Scalar,
    truncation: int,
    free: Optional[Mapping[int, Any]] = None,
    central: Any = 0,
) -> Weight:
    """
    Labels whose generating series is the given quasipolynomial.

    Lambda_n = [z^n/n!]Q / (2q+n) away from poles; at a pole index
    (2q+n = 0) the label is the supplied free value and the coefficient
    of Q there must vanish.

    Raises:
        RealizationError: Missing free value, or nonzero coefficient at a pole
    """
    free = dict(free or {})
    context = q.context
    labels: List[Scalar] = []
    used: Dict[int, Scalar] = {}
    for n in range(truncation + 1):
        coeff = context.coerce(quasi.egf_coefficient(n))
        pole = q * 2 + n
        if pole.is_zero:
            if n not in free:
                raise RealizationError(f"free value required at n={n}")
            if not coeff.is_zero:
                raise RealizationError(
                    f"coefficient {coeff} at pole index n={n} must vanish for q={q}"
                )
            used[n] = context.coerce(free[n])
            labels.append(used[n])
        else:
            labels.append(coeff / pole)
    return Weight(q=q, labels=labels, central=context.coerce(central), free=used)
