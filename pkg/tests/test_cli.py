import json

import pytest

import main


def _run(capsys, *argv):
    code = main.run(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_bracket_text_inputs(capsys):
    code, out = _run(capsys, "bracket", "--q", "q", "--lhs", "L[2,0]", "--rhs", "L[-2,0]")
    assert code == 0
    assert "L[0,0]" in out
    assert "(1/2)*c" in out
    assert "bracket: 1/1 checks passed - PASSED" in out


def test_bracket_json_file(capsys, config_dir):
    code, out = _run(capsys, "bracket", "--lhs", str(config_dir / "element_l20.json"), "--rhs", "L[1,0]")
    assert code == 0
    assert "L[3,0]" in out


def test_bracket_rejects_decimals(capsys):
    code, _ = _run(capsys, "bracket", "--lhs", "0.5*L[1,0]", "--rhs", "L[0,0]")
    assert code == 2


def test_jacobi(capsys):
    code, out = _run(capsys, "jacobi", "--x", "L[1,0] + c", "--y", "q*L[-1,1]", "--z", "L[2,2]")
    assert code == 0
    assert out.splitlines()[0] == "0"


def test_embed_check_at_negative_q(capsys):
    code, out = _run(capsys, "embed-check", "--q=-1/2", "--k", "2", "--alpha-max", "2", "--i-max", "2")
    assert code == 0
    assert "embed.scale.2" in out


def test_ad_chain(capsys):
    code, _ = _run(capsys, "ad-chain", "--mu0=-1", "--k1", "2", "--k2", "2")
    assert code == 0


def test_winf_check(capsys):
    code, out = _run(capsys, "winf-check", "--alpha-max", "2", "--i-max", "2")
    assert code == 0
    assert "0 mismatches" in out


def test_qf_check_quasifinite(capsys, config_dir):
    code, out = _run(capsys, "qf-check", "--weight", str(config_dir / "weight_exp2.json"))
    assert code == 0
    assert "QUASIFINITE, h = t - 2" in out


def test_qf_check_unexpected_verdict(capsys, config_dir):
    code, _ = _run(capsys, "qf-check", "--weight", str(config_dir / "weight_trivial.json"), "--expect", "NOT_DETECTED")
    assert code == 1


def test_charpoly(capsys, config_dir):
    code, out = _run(capsys, "charpoly", "--weight", str(config_dir / "weight_exp2.json"))
    assert code == 0
    assert "t^q * (t - 2)" in out


def test_charpoly_not_detected(capsys, tmp_path):
    path = tmp_path / "weight.json"
    labels = ["1/2", "1/3", "1/2", "6/5", "4", "120/7", "90", "560", "4032", "362880/11", "302400"]
    path.write_text(json.dumps({"q": "1", "central": "0", "labels": labels}))
    code, out = _run(capsys, "charpoly", "--weight", str(path))
    assert code == 1
    assert "NOT_DETECTED" in out


def test_singular_check(capsys, config_dir):
    weight = str(config_dir / "weight_exp2.json")
    code, _ = _run(capsys, "singular-check", "--weight", weight)
    assert code == 0
    code, out = _run(capsys, "singular-check", "--weight", weight, "--h=-3,1", "--expect-not-singular")
    assert code == 0
    assert "not singular" in out


def test_labels_from_qp_round_trip(capsys, config_dir, tmp_path):
    output = tmp_path / "weight.json"
    code, out = _run(capsys, "labels-from-qp", "--qp", str(config_dir / "quasipoly_exp2.json"), "--output", str(output))
    assert code == 0
    assert json.loads(output.read_text())["labels"][2] == "1"
    code, out = _run(capsys, "qf-check", "--weight", str(output))
    assert code == 0


def test_labels_from_symbolic_qp(capsys, config_dir):
    code, out = _run(capsys, "labels-from-qp", "--qp", str(config_dir / "quasipoly_symbolic.json"), "--truncation", "8")
    assert code == 0
    data = json.loads(out.splitlines()[0])
    assert len(data["labels"]) == 9


def test_module_verify(capsys, config_dir):
    code, out = _run(
        capsys, "module-verify", "--module", str(config_dir / "module_ap01_half.json"),
        "--window", "3", "--alpha-max", "2", "--i-max", "2",
    )
    assert code == 0
    assert "0 violations" in out


def test_module_verify_invalid_definition(capsys, tmp_path):
    path = tmp_path / "module.json"
    path.write_text(json.dumps({"q": "1", "family": {"kind": "Aab", "a": "a", "b": "b"}, "extension": {"kind": "ST", "s": "s", "t": "t"}}))
    code, _ = _run(capsys, "module-verify", "--module", str(path))
    assert code == 2


def test_irreducible_check(capsys, config_dir):
    code, out = _run(capsys, "irreducible-check", "--module", str(config_dir / "module_aab_minus_one.json"), "--window", "6")
    assert code == 0
    assert "irreducible on the window" in out


def test_solve_case_q1(capsys):
    code, out = _run(capsys, "solve-case", "--subcase", "q1")
    assert code == 0
    assert "q1.fallback" in out


def test_missing_file(capsys):
    code, _ = _run(capsys, "qf-check", "--weight", "does/not/exist.json")
    assert code == 2


def test_unknown_suite_is_a_usage_error():
    with pytest.raises(SystemExit) as info:
        main.run(["verify-paper", "--suite", "nope"])
    assert info.value.code == 2


def test_json_report(capsys, tmp_path):
    path = tmp_path / "out" / "bracket.json"
    code, _ = _run(capsys, "bracket", "--lhs", "L[1,0]", "--rhs", "L[0,0]", "--json", str(path), "--timing")
    assert code == 0
    data = json.loads(path.read_text())
    assert data["suite"] == "bracket"
    assert data["passed"] is True
    assert "elapsed" in data["checks"][0]


def test_summary_verbosity(capsys):
    code, out = _run(capsys, "bracket", "--lhs", "L[1,0]", "--rhs", "L[0,0]", "--verbosity", "summary")
    assert code == 0
    assert "[PASS]" not in out
