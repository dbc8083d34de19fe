import json
from fractions import Fraction
from math import factorial

import pytest

from scalar import (
    FieldContext,
    QuasifinitenessError,
    RealizationError,
    TruncationError,
    rational_context,
)
from algebra import BlockAlgebra, Generator
from weights import (
    Polynomial,
    QuasiPolynomial,
    Verdict,
    Weight,
    apply_functional,
    berlekamp_massey,
    bqa0_element,
    char_poly,
    constraint_row,
    delta_coeffs,
    depth_one_vector,
    is_quasifinite,
    labels_from_quasipoly,
    singular_check,
    singular_witness,
)


@pytest.fixture
def ctx():
    return rational_context()


@pytest.fixture
def exp2_weight(config_dir):
    with open(config_dir / "weight_exp2.json") as f:
        return Weight.from_dict(json.load(f))


def _weight_from_deltas(ctx, q, deltas):
    q = ctx.coerce(q)
    labels = [ctx.coerce(d) / (q * 2 + n) for n, d in enumerate(deltas)]
    return Weight(q=q, labels=labels, central=ctx.zero)


def test_berlekamp_massey_on_geometric_sequence(ctx):
    result = berlekamp_massey([ctx.constant(3 ** n) for n in range(8)])
    assert result.order == 1
    assert result.polynomial == Polynomial.linear(ctx, 3)
    assert result.sufficient


def test_berlekamp_massey_on_fibonacci(ctx):
    fib = [1, 1]
    while len(fib) < 10:
        fib.append(fib[-1] + fib[-2])
    result = berlekamp_massey([ctx.constant(v) for v in fib])
    assert result.order == 2
    assert result.polynomial == Polynomial(ctx, [-1, -1, 1])


def test_trivial_weight_is_quasifinite(ctx):
    result = is_quasifinite(Weight.trivial(ctx.one, 10))
    assert result.verdict == Verdict.QUASIFINITE
    assert result.polynomial == Polynomial.one(ctx)


def test_exponential_labels(exp2_weight):
    assert delta_coeffs(exp2_weight) == [2 ** n for n in range(13)]
    h = char_poly(exp2_weight)
    assert h == Polynomial.linear(exp2_weight.context, 2)
    assert singular_check(exp2_weight, h)


def test_wrong_polynomial_is_not_singular(exp2_weight):
    h = Polynomial.linear(exp2_weight.context, 3)
    assert not singular_check(exp2_weight, h)
    witness = singular_witness(exp2_weight, h)
    assert witness["failing_row"] == 0
    assert witness["value"] == "-1"


def test_constraint_row_and_functional_agree(exp2_weight):
    h = Polynomial(exp2_weight.context, [1, -5, 2])
    for i in range(5):
        row = constraint_row(h, i, exp2_weight)
        assert apply_functional(bqa0_element(h, i, exp2_weight.q), exp2_weight) == row


def test_constraint_row_beyond_truncation(exp2_weight):
    h = Polynomial.linear(exp2_weight.context, 2)
    with pytest.raises(TruncationError):
        constraint_row(h, 12, exp2_weight)


def test_depth_one_vector(ctx):
    algebra = BlockAlgebra(ctx, 1)
    vector = depth_one_vector(Polynomial.linear(ctx, 2), algebra)
    assert vector.coefficient(Generator(-1, 1)) == 1
    assert vector.coefficient(Generator(-1, 0)) == -2


def test_factorial_labels_are_not_detected(ctx):
    w = _weight_from_deltas(ctx, 1, [factorial(n) for n in range(11)])
    result = is_quasifinite(w)
    assert result.verdict == Verdict.NOT_DETECTED
    assert result.polynomial is None
    with pytest.raises(QuasifinitenessError) as info:
        char_poly(w)
    assert info.value.verdict == Verdict.NOT_DETECTED


def test_short_truncation_is_insufficient(ctx):
    w = _weight_from_deltas(ctx, 1, [n + 1 for n in range(5)])
    assert is_quasifinite(w).verdict == Verdict.INSUFFICIENT


def test_labels_from_quasipolynomial_match_the_sample(ctx, exp2_weight):
    quasi = QuasiPolynomial(ctx, [(2, Polynomial(ctx, [1], "z"))])
    w = labels_from_quasipoly(quasi, ctx.one, 12)
    assert w.labels == exp2_weight.labels


def test_symbolic_quasipolynomial_recovers_its_annihilator():
    ctx = FieldContext(("a", "b", "q"))
    quasi = QuasiPolynomial(ctx, [
        (ctx.var("a"), Polynomial(ctx, [1, 1], "z")),
        (1, Polynomial(ctx, [ctx.var("b")], "z")),
    ])
    expected = quasi.annihilator()
    assert expected.degree == 3
    w = labels_from_quasipoly(quasi, ctx.var("q"), 2 * expected.degree + 2)
    result = is_quasifinite(w)
    assert result.verdict == Verdict.QUASIFINITE
    assert result.polynomial == expected


def test_egf_coefficients(ctx):
    # (1 + z) e^{3z}: n-th coefficient 3^n + n 3^(n-1)
    quasi = QuasiPolynomial(ctx, [(3, Polynomial(ctx, [1, 1], "z"))])
    assert quasi.coefficients(4) == [1, 4, 15, 54]


def test_pole_needs_a_free_value(ctx):
    q = ctx.constant(Fraction(-1, 2))
    constant = QuasiPolynomial(ctx, [(0, Polynomial(ctx, [1], "z"))])
    with pytest.raises(RealizationError):
        labels_from_quasipoly(constant, q, 6)
    w = labels_from_quasipoly(constant, q, 6, free={1: 5})
    assert w.labels[1] == 5
    assert w.free == {1: 5}


def test_pole_with_nonzero_coefficient_is_rejected(ctx):
    q = ctx.constant(Fraction(-1, 2))
    quasi = QuasiPolynomial(ctx, [(2, Polynomial(ctx, [1], "z"))])
    with pytest.raises(RealizationError):
        labels_from_quasipoly(quasi, q, 6, free={1: 0})


def test_weight_json_form():
    w = Weight.from_dict({"q": "q", "central": "c0", "labels": ["1", "a/q", "0"], "free": {"2": "s"}})
    assert w.context.variables == ("a", "c0", "q", "s")
    assert w.labels[2] == w.context.var("s")
    data = w.to_dict()
    assert data["free"] == {"2": "s"}
    assert Weight.from_dict(data, w.context).labels == w.labels


def test_weight_free_index_outside_labels():
    with pytest.raises(TruncationError):
        Weight.from_dict({"q": "1", "labels": ["0", "0"], "free": {"5": "s"}})


def test_label_beyond_truncation(ctx):
    with pytest.raises(TruncationError):
        Weight.trivial(ctx.one, 4).label(5)


def test_quasipolynomial_rejects_repeated_exponents(ctx):
    from scalar import BlockAlgError
    with pytest.raises(BlockAlgError):
        QuasiPolynomial(ctx, [(1, Polynomial(ctx, [1], "z")), (1, Polynomial(ctx, [2], "z"))])


def test_polynomial_egf_coefficients(ctx):
    # z e^{0z} = z and z e^{z}
    assert QuasiPolynomial(ctx, [(0, Polynomial(ctx, [0, 1], "z"))]).coefficients(4) == [0, 1, 0, 0]
    assert QuasiPolynomial(ctx, [(1, Polynomial(ctx, [0, 1], "z"))]).coefficients(4) == [0, 1, 2, 3]


def test_polynomial_egf_labels(ctx):
    quasi = QuasiPolynomial(ctx, [(0, Polynomial(ctx, [1, 1], "z"))])
    w = labels_from_quasipoly(quasi, ctx.one, 8)
    assert w.labels[:3] == [Fraction(1, 2), Fraction(1, 3), 0]
    result = is_quasifinite(w)
    assert result.verdict == Verdict.QUASIFINITE
    assert result.polynomial == quasi.annihilator()
