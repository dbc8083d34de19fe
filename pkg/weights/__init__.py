"""
Weights Module

Highest weight data and the quasifiniteness criterion: label sequences, the
generating series coefficients, recurrence detection, characteristic
polynomials and depth one singular vectors.
"""

from weights.polynomial import Polynomial, QuasiPolynomial, texts_of_quasipoly
from weights.weight import Weight, weight_texts
from weights.recurrence import RecurrenceResult, berlekamp_massey
from weights.criterion import (
    Verdict,
    QuasifinitenessResult,
    delta_coeffs,
    is_quasifinite,
    char_poly,
    constraint_row,
    bqa0_element,
    apply_functional,
    singular_check,
    singular_rows,
    singular_witness,
    depth_one_vector,
    labels_from_quasipoly,
)

__all__ = [
    # Polynomials
    "Polynomial",
    "QuasiPolynomial",
    "texts_of_quasipoly",
    # Weights
    "Weight",
    "weight_texts",
    # Recurrences
    "RecurrenceResult",
    "berlekamp_massey",
    # Criterion
    "Verdict",
    "QuasifinitenessResult",
    "delta_coeffs",
    "is_quasifinite",
    "char_poly",
    "constraint_row",
    "bqa0_element",
    "apply_functional",
    "singular_check",
    "singular_rows",
    "singular_witness",
    "depth_one_vector",
    "labels_from_quasipoly",
]
