"""
Algebra Module

The Block type Lie algebra B(q): basis, bracket, Virasoro subalgebra,
scaling embeddings, iterated brackets and the W_infinity comparison.
"""
from algebra.basis import CENTRAL, BasisIndex, Central, Generator, basis_sort_key
from algebra.element import AlgebraElement, BlockAlgebra, parse_element
from algebra.bracket import (
    bracket,
    derived_span_gaps,
    jacobi_residual,
    perfectness_criterion,
    scale_embed,
    vir_central,
    vir_embed,
)
from algebra.lemmas import (
    AdChainResult,
    ad_chain,
    decompose_alpha,
    induction_r,
    induction_step_identity,
)
from algebra.winf import (
    DiffOpElement,
    assoc_graded_check,
    generalized_binomial,
    winf_bracket,
    winf_central,
)

__all__ = [
    # Basis
    "Generator",
    "Central",
    "CENTRAL",
    "BasisIndex",
    "basis_sort_key",
    # Elements
    "BlockAlgebra",
    "AlgebraElement",
    "parse_element",
    # Bracket and embeddings
    "bracket",
    "jacobi_residual",
    "vir_embed",
    "vir_central",
    "scale_embed",
    "perfectness_criterion",
    "derived_span_gaps",
    # Iterated brackets
    "AdChainResult",
    "ad_chain",
    "decompose_alpha",
    "induction_r",
    "induction_step_identity",
    # W-infinity
    "DiffOpElement",
    "winf_bracket",
    "winf_central",
    "generalized_binomial",
    "assoc_graded_check",
]
