import itertools
from fractions import Fraction

import pytest

from scalar import AlgebraError, ContextMismatchError, FieldContext, rational_context
from algebra import (
    BlockAlgebra,
    AlgebraElement,
    DiffOpElement,
    Generator,
    ad_chain,
    assoc_graded_check,
    bracket,
    decompose_alpha,
    derived_span_gaps,
    generalized_binomial,
    induction_step_identity,
    jacobi_residual,
    parse_element,
    perfectness_criterion,
    scale_embed,
    vir_central,
    vir_embed,
    winf_bracket,
    winf_central,
)


def _grid(algebra, alpha_max=2, i_max=2):
    return [algebra.L(a, i) for a in range(-alpha_max, alpha_max + 1) for i in range(i_max + 1)]


def test_bracket_with_central_term(symbolic):
    result = bracket(symbolic.L(2, 0), symbolic.L(-2, 0))
    assert result == parse_element(symbolic, "-4*q*L[0,0] + (1/2)*c")
    assert result.central() == Fraction(1, 2)


def test_structure_constant(symbolic):
    # [L[1,2], L[3,1]] = (3(2+q) - (1+q)) L[4,3]
    result = bracket(symbolic.L(1, 2), symbolic.L(3, 1))
    assert result.coefficient(Generator(4, 3)) == symbolic.context.parse("2*q+5")
    assert result.central() == 0


def test_central_term_needs_both_degrees_zero(symbolic):
    assert bracket(symbolic.L(3, 1), symbolic.L(-3, 0)).central() == 0
    assert bracket(symbolic.L(3, 0), symbolic.L(-3, 0)).central() == 2


def test_c_is_central(symbolic):
    for x in _grid(symbolic):
        assert bracket(symbolic.c(), x).is_zero


def test_antisymmetry(symbolic):
    for x, y in itertools.combinations(_grid(symbolic), 2):
        assert (bracket(x, y) + bracket(y, x)).is_zero


def test_jacobi_identity(symbolic):
    for x, y, z in itertools.combinations(_grid(symbolic, 1, 2), 3):
        assert jacobi_residual(x, y, z).is_zero


def test_jacobi_on_combinations(symbolic):
    x = parse_element(symbolic, "L[1,0] + q*L[-1,2]")
    y = parse_element(symbolic, "2*L[0,1] - c")
    z = parse_element(symbolic, "L[-1,0] + (1/3)*L[2,1]")
    assert jacobi_residual(x, y, z).is_zero


def test_bracket_is_bilinear(symbolic):
    x = parse_element(symbolic, "L[1,0] + 3*L[2,1]")
    y = symbolic.L(-1, 1)
    expected = bracket(symbolic.L(1, 0), y) + bracket(symbolic.L(2, 1), y) * 3
    assert bracket(x, y) == expected


def test_virasoro_relations(symbolic):
    for alpha, beta in itertools.product(range(-3, 4), repeat=2):
        lhs = bracket(vir_embed(symbolic, alpha), vir_embed(symbolic, beta))
        rhs = vir_embed(symbolic, alpha + beta) * (beta - alpha)
        if alpha + beta == 0:
            rhs = rhs + vir_central(symbolic) * Fraction(alpha ** 3 - alpha, 12)
        assert lhs == rhs


def test_virasoro_needs_nonzero_q():
    with pytest.raises(AlgebraError):
        vir_embed(BlockAlgebra.at(0), 1)


@pytest.mark.parametrize("k", [2, 3])
def test_scale_embed_is_a_homomorphism(symbolic, k):
    for x, y in itertools.combinations(_grid(symbolic), 2):
        assert scale_embed(bracket(x, y), k) == bracket(scale_embed(x, k), scale_embed(y, k))


def test_scale_embed_at_negative_q():
    algebra = BlockAlgebra.at(Fraction(-1, 4))
    image = scale_embed(algebra.L(1, 1), 2)
    assert image.algebra.q == Fraction(-1, 2)
    assert image.coefficient(Generator(1, 2)) == Fraction(1, 2)


def test_scale_embed_rejects_bad_factor(symbolic):
    with pytest.raises(AlgebraError):
        scale_embed(symbolic.L(0, 0), 0)


def test_elements_from_different_algebras_do_not_mix(symbolic):
    other = BlockAlgebra.at(Fraction(1, 2), context=symbolic.context)
    with pytest.raises(ContextMismatchError):
        symbolic.L(0, 0) + other.L(0, 0)


def test_parse_element_round_trips_text(symbolic):
    x = parse_element(symbolic, "-4*q*L[0,0] + (1/2)*c + L[-3,2]")
    assert parse_element(symbolic, x.to_text()) == x


def test_element_json_form(symbolic):
    x = parse_element(symbolic, "q*L[2,1] - c")
    data = x.to_dict()
    assert data["central"] == "-1"
    assert data["terms"] == [{"alpha": 2, "i": 1, "coeff": "q"}]
    assert AlgebraElement.from_dict(data, symbolic) == x


def test_parse_element_rejects_context_named_c():
    context = FieldContext(("c", "q"))
    algebra = BlockAlgebra(context, context.var("q"))
    with pytest.raises(AlgebraError):
        parse_element(algebra, "L[0,0]")


@pytest.mark.parametrize("mu0,k1,k2", [(-1, 1, 1), (-1, 2, 3), (-2, 3, 2), (-3, 1, 4)])
def test_ad_chain_matches_closed_form(symbolic, mu0, k1, k2):
    result = ad_chain(symbolic, mu0, k1, k2)
    assert result.agrees
    assert result.alpha == k1 * (1 - mu0) - k2 * mu0


def test_ad_chain_rejects_nonnegative_mu0(symbolic):
    with pytest.raises(AlgebraError):
        ad_chain(symbolic, 0, 1, 1)


@pytest.mark.parametrize("mu0", [-1, -2, -3])
def test_decompose_alpha(mu0):
    bound = (1 - mu0) ** 2
    for alpha in range(bound, bound + 20):
        k1, k2 = decompose_alpha(mu0, alpha)
        assert k1 >= 1 and k2 >= 1
        assert k1 * (1 - mu0) - k2 * mu0 == alpha


def test_decompose_alpha_below_bound():
    with pytest.raises(AlgebraError):
        decompose_alpha(-1, 3)


def test_induction_step_identity(symbolic):
    for mu0, alpha, s in [(-1, 4, 2), (-2, 9, 3), (-1, 5, 4), (-3, 17, 5)]:
        assert induction_step_identity(symbolic, mu0, alpha, s).is_zero


def test_induction_step_at_q_minus_one():
    algebra = BlockAlgebra.at(-1)
    assert induction_step_identity(algebra, -1, 5, 3).is_zero
    assert induction_step_identity(algebra, -2, 5, 3).is_zero


@pytest.mark.parametrize("q,expected", [
    (Fraction(-1, 2), False),
    (-1, False),
    (Fraction(-3, 2), False),
    (Fraction(-1, 3), True),
    (0, True),
    (1, True),
])
def test_perfectness_criterion(q, expected):
    assert perfectness_criterion(q) is expected


def test_derived_span_gaps_at_minus_half():
    assert derived_span_gaps(BlockAlgebra.at(Fraction(-1, 2)), i_max=3) == [Generator(0, 1)]
    assert derived_span_gaps(BlockAlgebra.at(-1), i_max=1) == []
    assert derived_span_gaps(BlockAlgebra.at(1), i_max=3) == []


def test_generalized_binomial():
    assert generalized_binomial(5, 2) == 10
    assert generalized_binomial(-1, 3) == -1
    assert generalized_binomial(2, 3) == 0


def test_winf_top_degree_matches_block_one():
    for alpha, beta in itertools.product(range(-2, 3), repeat=2):
        for i, j in itertools.product(range(1, 4), repeat=2):
            assert assoc_graded_check(alpha, beta, i, j).is_zero


def test_winf_bracket_of_degree_one_operators():
    context = rational_context()
    x = DiffOpElement.monomial(1, 1, context)
    y = DiffOpElement.monomial(-1, 1, context)
    result = winf_bracket(x, y)
    assert result == DiffOpElement(context, {(0, 1): -2})
    assert result.central.is_zero


def test_winf_bracket_central_term():
    context = rational_context()
    x = DiffOpElement.monomial(2, 1, context)
    y = DiffOpElement.monomial(-2, 1, context)
    result = winf_bracket(x, y)
    assert result.coefficient(0, 1) == -4
    assert result.central == -1
    assert winf_bracket(y, x) == -result


def test_winf_central():
    assert winf_central(3, 1, -3, 1) == -4
    assert winf_central(-2, 1, 2, 1) == 1
    assert winf_central(2, 1, -1, 1) == 0
    assert winf_central(1, 1, -1, 1) == 0
