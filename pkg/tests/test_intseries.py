import json
from fractions import Fraction

import pytest

from scalar import FieldContext, ModuleDefinitionError
from intseries import (
    Aab,
    Ap01,
    Aa,
    Ba,
    IntermediateModule,
    Level,
    S,
    ST,
    Trivial,
    act,
    bracket_residual,
    eigen_check,
    irreducible_window,
    obstruction_probe,
    pullback_mismatches,
    pullback_module,
    verify_module,
    vir_restriction,
    window_range,
)

BOUNDS = {"window": 4, "alpha_max": 2, "i_max": 3}


@pytest.fixture
def ctx():
    return FieldContext(("a", "b", "q", "s", "t"))


def _module(ctx, q, family, extension=None):
    return IntermediateModule(ctx.coerce(q), family, extension)


def test_window_range():
    assert window_range(2) == [-2, -1, 0, 1, 2]
    assert window_range((1, 3)) == [1, 2, 3]


def test_aab_is_a_module_for_symbolic_q(ctx):
    module = _module(ctx, ctx.var("q"), Aab(ctx.var("a"), ctx.var("b")))
    assert verify_module(module, **BOUNDS) == []
    assert eigen_check(module, 3).is_zero


@pytest.mark.parametrize("family", ["Aa", "Ba"])
def test_degenerate_families_are_modules(ctx, family):
    cls = {"Aa": Aa, "Ba": Ba}[family]
    module = _module(ctx, ctx.var("q"), cls(ctx.var("a")))
    assert verify_module(module, **BOUNDS) == []


@pytest.mark.parametrize("q", [Fraction(-1, 2), Fraction(-3, 2), -2])
def test_s_extension_is_a_module(ctx, q):
    module = _module(ctx, q, Aab(ctx.var("a"), ctx.var("b")), S(ctx.var("s")))
    assert verify_module(module, **BOUNDS) == []


def test_ap01_with_s_at_minus_half(ctx):
    module = _module(ctx, Fraction(-1, 2), Ap01(), S(ctx.var("s")))
    assert not module.in_basis(0)
    assert verify_module(module, **BOUNDS) == []
    assert act(module, 0, 1, module.basis_vector(2)).coefficient(2) == ctx.var("s")


def test_st_extension_at_minus_one(ctx):
    module = _module(ctx, -1, Aab(ctx.var("a"), ctx.var("b")), ST(ctx.var("s"), ctx.var("t")))
    assert verify_module(module, **BOUNDS) == []


def test_wrong_level_fails_the_axioms(ctx):
    module = _module(ctx, 1, Aab(ctx.var("a"), ctx.var("b")), Level(1, ctx.var("s")))
    violations = verify_module(module, **BOUNDS)
    assert violations
    assert "residual" in violations[0].to_dict()


def test_bracket_residual_on_a_module(ctx):
    module = _module(ctx, ctx.var("q"), Aab(ctx.var("a"), ctx.var("b")))
    assert bracket_residual(module, (2, 0), (-1, 0), 1).is_zero


@pytest.mark.parametrize("q,j", [(1, 1), (1, 2), (2, 1), (Fraction(-1, 3), 1)])
def test_obstruction_probe(q, j):
    probe = obstruction_probe(q, j)
    assert probe.matches
    assert probe.proportional_to_s
    assert not probe.residual.is_zero


def test_obstruction_vanishes_at_the_right_level():
    probe = obstruction_probe(Fraction(-1, 2), 1)
    assert probe.residual.is_zero


def test_extensions_validate_q(ctx):
    with pytest.raises(ModuleDefinitionError):
        _module(ctx, 1, Aab(ctx.var("a"), ctx.var("b")), S(ctx.var("s")))
    with pytest.raises(ModuleDefinitionError):
        _module(ctx, Fraction(-1, 2), Aab(ctx.var("a"), ctx.var("b")), ST(ctx.var("s"), ctx.var("t")))


def test_ap01_rejects_v0(ctx):
    module = _module(ctx, Fraction(-1, 2), Ap01(), S(ctx.var("s")))
    with pytest.raises(ModuleDefinitionError):
        module.basis_vector(0)


def test_irreducible_generic_module(ctx):
    module = _module(ctx, ctx.var("q"), Aab(ctx.var("a"), ctx.var("b")))
    assert irreducible_window(module, 6).irreducible


def test_a00_is_reducible(ctx):
    module = _module(ctx, ctx.var("q"), Aab(ctx.zero, ctx.zero))
    report = irreducible_window(module, 6)
    assert not report.irreducible
    assert all(start == 0 for start, _ in report.unreachable)


def test_irreducible_window_needs_a_symmetric_window(ctx):
    module = _module(ctx, ctx.var("q"), Aab(ctx.var("a"), ctx.var("b")))
    with pytest.raises(ModuleDefinitionError):
        irreducible_window(module, (0, 6))


def test_vir_restriction(ctx):
    module = _module(ctx, ctx.var("q"), Aab(ctx.var("a"), ctx.var("b")))
    assert vir_restriction(module, 2, 3) == ctx.parse("a+3+2*b")


def test_pullback_of_st_module(ctx):
    module = _module(ctx, -1, Ap01(), ST(ctx.var("s"), ctx.var("t")))
    pulled = pullback_module(module, 2)
    assert pulled.q == Fraction(-1, 2)
    assert isinstance(pulled.extension, S)
    assert pullback_mismatches(module, 2, window=3, alpha_max=2, i_max=2) == []


def test_pullback_drops_unreachable_levels(ctx):
    module = _module(ctx, Fraction(-3, 2), Aab(ctx.var("a"), ctx.var("b")), S(ctx.var("s")))
    pulled = pullback_module(module, 2)
    assert isinstance(pulled.extension, Trivial)
    assert pullback_mismatches(module, 2, window=3, alpha_max=2, i_max=2) == []


def test_module_from_sample_file(config_dir):
    with open(config_dir / "module_aab_minus_one.json") as f:
        module = IntermediateModule.from_dict(json.load(f))
    assert module.q == -1
    assert module.context.variables == ("a", "b", "s", "t")
    assert verify_module(module, **BOUNDS) == []
    assert IntermediateModule.from_dict(module.to_dict(), module.context).to_dict() == module.to_dict()


@pytest.mark.parametrize("data", [
    {"q": "q", "family": {"kind": "Nope"}},
    {"q": "q", "family": {"kind": "Aab", "a": "a"}},
    {"q": "1", "family": {"kind": "Aa", "a": "a"}, "extension": {"kind": "ST", "s": "s", "t": "t"}},
])
def test_invalid_module_definitions(data):
    with pytest.raises(ModuleDefinitionError):
        IntermediateModule.from_dict(data)
