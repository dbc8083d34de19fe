from fractions import Fraction

import pytest

from scalar import (
    ContextMismatchError,
    FieldContext,
    FieldError,
    ScalarParseError,
    SingularSpecializationError,
    cyclotomic_context,
    infer_context,
    names_in,
)


def test_parse_normalizes_rational_functions(ctx_q):
    assert ctx_q.parse("(q^2-1)/(q-1)") == ctx_q.parse("q+1")
    assert ctx_q.parse("q**2") == ctx_q.parse("q^2")


def test_text_reads_back_to_the_same_value():
    ctx = FieldContext(("a0", "b", "q"))
    value = ctx.parse("8*b*(1-b)*(2*b-1)*q*(1+q)^3*(1+2*q)*a0/(q-3)")
    assert ctx.parse(value.to_text()) == value


def test_arithmetic_with_ints_and_fractions(ctx_q):
    q = ctx_q.var("q")
    assert (q + 1) - q == 1
    assert (q * 2) / 4 == q * Fraction(1, 2)
    assert (q ** -1) * q == 1
    assert ctx_q.constant(Fraction(3, 4)).to_fraction() == Fraction(3, 4)


def test_decimal_literals_are_rejected_with_a_column(ctx_q):
    with pytest.raises(ScalarParseError) as info:
        ctx_q.parse("q + 0.5")
    assert info.value.column == 6


def test_unknown_names_are_rejected(ctx_q):
    with pytest.raises(ScalarParseError):
        ctx_q.parse("q + z")


def test_empty_text_is_rejected(ctx_q):
    with pytest.raises(ScalarParseError):
        ctx_q.parse("   ")


def test_specialize_substitutes_values(ctx_q):
    value = ctx_q.parse("(q+1)/(q-2)")
    assert value.specialize({"q": 3}) == 4
    assert value.specialize({"q": "1/2"}) == -1


def test_specialize_reports_vanishing_denominator(ctx_q):
    with pytest.raises(SingularSpecializationError) as info:
        ctx_q.parse("1/(q-1)").specialize({"q": 1})
    assert "q - 1" in info.value.factor


def test_theta_is_a_primitive_cube_root_of_unity(ctx_theta):
    theta = ctx_theta.theta
    assert theta ** 2 + theta + 1 == 0
    assert theta ** 3 == 1
    assert not theta.is_rational()


def test_rational_context_has_no_theta(ctx_q):
    with pytest.raises(FieldError):
        ctx_q.theta


def test_reducible_modulus_is_rejected():
    with pytest.raises(FieldError):
        FieldContext((), modulus="theta^2-1")


def test_mixing_contexts_raises(ctx_q):
    other = FieldContext(("a",))
    with pytest.raises(ContextMismatchError):
        ctx_q.var("q") + other.var("a")


def test_lift_into_a_larger_context(ctx_q):
    larger = ctx_q.extend("a")
    lifted = ctx_q.parse("q^2+1").lift(larger)
    assert lifted == larger.parse("q^2+1")


def test_coefficient_extraction():
    ctx = FieldContext(("beta", "gamma", "b"))
    value = ctx.parse("3*b*beta*gamma^6 + gamma^8 - 2*gamma^6")
    assert value.coeff_monomial({"beta": 1, "gamma": 6}) == ctx.parse("3*b")
    assert value.coeff_monomial({"beta": 0, "gamma": 6}) == -2
    assert value.degree("gamma") == 8


def test_infer_context_collects_names_sorted():
    ctx = infer_context(["a*q", "b", "1/2"])
    assert ctx.variables == ("a", "b", "q")
    assert not ctx.is_extension


def test_infer_context_adjoins_theta_when_used():
    ctx = infer_context(["theta + q"])
    assert ctx.is_extension
    assert ctx.variables == ("q",)


def test_names_in_keeps_first_appearance_order():
    assert names_in(["s*t + a", "t"]) == ["s", "t", "a"]


def test_cyclotomic_context_equality():
    assert cyclotomic_context("beta") == cyclotomic_context("beta")
    assert cyclotomic_context("beta") != FieldContext(("beta",))


def test_zero_to_the_zero_is_one(ctx_q):
    assert ctx_q.zero ** 0 == 1
    assert ctx_q.var("q") ** 0 == 1
    with pytest.raises(ZeroDivisionError):
        ctx_q.zero ** -1
