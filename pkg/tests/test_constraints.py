from fractions import Fraction

import pytest

from scalar import EliminationError, FieldContext, InconsistentSystemError, ShapeError, rational_context
from constraints import (
    SUBCASES,
    FormalExpr,
    FormalSystem,
    IndexExpr,
    Unknown,
    assemble_case_system,
    bareiss_det,
    bracket_coefficients,
    case_context,
    case_unknowns,
    coeff_extract,
    derive_equ_element,
    determinant_report,
    displayed_coefficients,
    eliminate,
    eqa1,
    eqa2,
    f_coeff,
    f_level,
    g_coeff,
    h_coeffs,
    main_system,
    minus_one_context,
    monomial_support,
    omega_pipeline,
    q_half_identities,
    q_minus1_systems,
    q_one_fallback,
    sequence,
    shifted_d,
    solve_linear,
    solve_nullspace,
    spike_branch,
)


def _linear(context, coeffs):
    expr = FormalExpr.zero(context)
    for name, c in coeffs.items():
        if name == "":
            expr = expr + c
        else:
            expr = expr + sequence(context, name) * c
    return expr


# --- formal expressions -------------------------------------------------------

def test_index_expressions():
    beta, gamma = IndexExpr.of("beta"), IndexExpr.of("gamma")
    assert (beta + gamma - beta).to_text() == "gamma"
    assert (beta - gamma + 2).substitute({"gamma": 1}).to_text() == "beta+1"
    assert (beta * 2 - 3).to_text() == "2*beta-3"
    assert IndexExpr.of(-4).value == -4


def test_shifted_unknown_text():
    beta, gamma = IndexExpr.of("beta"), IndexExpr.of("gamma")
    assert shifted_d(beta).to_text() == "d[beta-]"
    assert shifted_d(beta - gamma).to_text() == "d[(beta-gamma)-]"
    assert Unknown.of("f", -3).to_text() == "f[-3]"


def test_formal_substitution_reaches_coefficients():
    context = FieldContext(("beta", "q"))
    expr = sequence(context, "d", "beta") * context.parse("q*beta")
    result = expr.substitute({"beta": 2})
    assert result.unknowns() == [Unknown.of("d", 2)]
    assert result.coefficient(Unknown.of("d", 2)) == context.parse("2*q")


def test_assign_values():
    context = rational_context()
    expr = sequence(context, "x") * 3 + sequence(context, "y") * sequence(context, "x") - 1
    value = expr.assign({Unknown.of("x"): 2, Unknown.of("y"): 5})
    assert value.constant_term == 15
    assert value.unknowns() == []


# --- systems and linear algebra ---------------------------------------------

def test_bareiss_det():
    context = rational_context()
    m = [[context.constant(v) for v in row] for row in ([1, 2, 3], [0, 1, 4], [5, 6, 0])]
    assert bareiss_det(m) == 1
    swap = [[context.constant(v) for v in row] for row in ([0, 1], [1, 0])]
    assert bareiss_det(swap) == -1


def test_bareiss_det_symbolic():
    context = FieldContext(("a", "b", "c", "d"))
    a, b, c, d = (context.var(n) for n in "abcd")
    assert bareiss_det([[a, b], [c, d]]) == a * d - b * c


def test_bareiss_needs_a_square_matrix():
    context = rational_context()
    with pytest.raises(ShapeError):
        bareiss_det([[context.one, context.one]])


def test_eliminate_leaves_the_determinant():
    context = FieldContext(("a", "b", "c", "d"))
    a, b, c, d = (context.var(n) for n in "abcd")
    system = FormalSystem(context, [
        sequence(context, "u") * a + sequence(context, "v") * b,
        sequence(context, "u") * c + sequence(context, "v") * d,
    ])
    reduced = eliminate(system, [Unknown.of("u")])
    assert len(reduced) == 1
    assert reduced.equations[0].coefficient(Unknown.of("v")) == a * d - b * c


def test_eliminate_missing_pivot():
    context = rational_context()
    system = FormalSystem(context, [sequence(context, "u")], [Unknown.of("u"), Unknown.of("v")])
    with pytest.raises(EliminationError):
        eliminate(system, [Unknown.of("v")])


def test_solve_linear_unique_solution():
    context = rational_context()
    system = FormalSystem(context, [
        _linear(context, {"x": 1, "y": 1, "": -2}),
        _linear(context, {"x": 1, "y": -1}),
    ])
    solution = solve_linear(system)
    assert solution.dimension == 0
    assert solution.particular[Unknown.of("x")] == 1
    assert solution.particular[Unknown.of("y")] == 1


def test_solve_nullspace_constant_line():
    context = rational_context()
    system = FormalSystem(context, [
        _linear(context, {"x": 1, "y": -1}),
        _linear(context, {"y": 2, "z": -2}),
    ])
    basis = solve_nullspace(system)
    assert len(basis) == 1
    assert solve_linear(system).is_constant_line()


def test_solve_linear_inconsistent():
    context = rational_context()
    system = FormalSystem(context, [
        _linear(context, {"x": 1, "": -1}),
        _linear(context, {"x": 1, "": -2}),
    ])
    with pytest.raises(InconsistentSystemError):
        solve_linear(system)


def test_free_unknowns_in_the_inventory():
    context = rational_context()
    system = FormalSystem(context, [_linear(context, {"x": 1})], [Unknown.of("x"), Unknown.of("y")])
    solution = solve_linear(system)
    assert solution.dimension == 1
    assert solution.basis[0][Unknown.of("y")] == 1


def test_inventory_must_cover_the_equations():
    context = rational_context()
    with pytest.raises(ShapeError):
        FormalSystem(context, [_linear(context, {"x": 1, "y": 1})], [Unknown.of("x")])


def test_monomial_support():
    context = FieldContext(("b", "beta", "gamma"))
    p = context.parse("b*beta*gamma^6 + 2*gamma^8 - gamma^6")
    assert set(monomial_support(p)) == {(1, 6), (0, 8), (0, 6)}
    assert coeff_extract(p, 1, 6) == context.var("b")
    assert coeff_extract(p, 2, 0) == 0


# --- the level one extension system -------------------------------------------

def test_h_coeffs_match_structure_constants():
    assert h_coeffs() == bracket_coefficients()


def test_h_coeffs_at_integers():
    context = case_context()
    h1, h2 = h_coeffs(2, 1, 3, context=context)
    q = context.var("q")
    assert h1 == (q - 1) * (0 * q - 3)
    assert h2 == q * (-2) - 4


def test_derivation_matches_displayed_sides():
    derivation = derive_equ_element()
    assert derivation.holds
    assert derivation.residual.is_zero
    assert derivation.to_dict()["holds"] is True


def test_f_coeff_index_range():
    context = case_context()
    with pytest.raises(ShapeError):
        f_coeff(6, context.var("gamma"), context.var("beta"), context.var("a0"), context.var("b"), context.var("q"))


def test_g_coeff_is_f_coeff_at_b_one():
    context = case_context()
    x1, x2, a0, q = (context.var(n) for n in ("gamma", "beta", "a0", "q"))
    for idx in range(1, 6):
        assert g_coeff(idx, x1, x2, a0, q) == f_coeff(idx, x1, x2, a0, 1, q)


def test_case_system_shape():
    system = assemble_case_system(1)
    assert len(system) == 3
    assert system.unknowns == case_unknowns(1)
    assert system.is_linear and system.is_homogeneous
    with pytest.raises(ShapeError):
        assemble_case_system(3)


def test_case_one_determinant():
    report = determinant_report(1)
    displayed = displayed_coefficients()
    assert set(report.support) == {(0, 8), (1, 6), (0, 6)}
    assert report.total_degree == 8
    assert report.coefficient(0, 8) == displayed["P(0,8)"]
    assert report.coefficient(1, 6) == displayed["P(1,6)"]
    assert report.coefficient(1, 6).specialize({"b": Fraction(1, 2)}) == displayed["P(1,6)|b=1/2"]


def test_case_two_determinant():
    report = determinant_report(2)
    displayed = displayed_coefficients()
    assert set(report.support) <= {(1, 6), (0, 6)}
    assert report.coefficient(0, 6) == displayed["Q(0,6)"]


def test_q_one_gives_no_constraint():
    fallback = q_one_fallback()
    assert fallback.consistent
    assert fallback.q_determinant.is_zero


def test_omega_pipeline_rejects_zero():
    with pytest.raises(ShapeError):
        omega_pipeline(0)


@pytest.mark.slow
@pytest.mark.parametrize("alpha0", [1, -1, 2])
def test_omega_pipeline(alpha0):
    result = omega_pipeline(alpha0)
    assert not result.h4.is_zero
    assert result.matches_determinant


# --- q = -1/2 and q = -1 ------------------------------------------------------

@pytest.mark.slow
def test_half_identities():
    identities = q_half_identities()
    assert identities.holds
    assert identities.checks


def test_constant_f_solves_the_q_minus_one_equations():
    context = minus_one_context()
    t = context.var("t")
    exprs = [eqa1(context, 2), eqa1(context, -3), eqa2(context, -3)] + main_system(context, 1).equations
    for expr in exprs:
        assert expr.assign({u: t for u in expr.unknowns()}).is_zero


def test_f_level_with_constant_f():
    context = minus_one_context()
    t = context.var("t")
    expr = f_level(context, 3, 2)
    assert expr.assign({u: t for u in expr.unknowns()}) == FormalExpr.constant(context, t)


def test_q_minus1_rejects_bad_input():
    with pytest.raises(ShapeError):
        q_minus1_systems("2.4")
    with pytest.raises(ShapeError):
        q_minus1_systems("main", window=3)


@pytest.mark.slow
@pytest.mark.parametrize("subcase", SUBCASES)
def test_q_minus1_subcases(subcase):
    analysis = q_minus1_systems(subcase)
    assert analysis.claims
    assert analysis.verdict == "pass", analysis.to_dict()


def test_shifted_origin_removes_a_from_the_coefficients():
    context = minus_one_context()
    system = main_system(context, 1, origin=-context.var("a"))
    for eq in system.equations:
        assert all(c.degree("a") <= 0 for c in eq.terms.values())


@pytest.mark.parametrize("b", [0, 1])
def test_spike_branches_hold_for_symbolic_a(b):
    assert spike_branch(minus_one_context(), b, window=4) is None


def test_spike_branch_needs_b_zero_or_one():
    with pytest.raises(ShapeError):
        spike_branch(minus_one_context(), 2, window=4)


def test_main_subcase_checks_symbolic_and_integer_a():
    analysis = q_minus1_systems("main", window=4)
    names = [c.name for c in analysis.claims]
    assert "(ii) b = 0 spike at -a-1" in names
    assert "(iii) b = 1 spike at -a, integer a" in names
    assert analysis.verdict == "pass", analysis.to_dict()
