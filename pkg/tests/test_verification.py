import json

import pytest

from scalar import ShapeError
from verification import (
    FAIL,
    PASS,
    CheckResult,
    Report,
    SuiteRegistry,
    run_all,
    run_check,
    single,
)


def test_run_check_records_pass_and_fail():
    report = Report("demo")
    run_check(report, "demo.ok", "always true", lambda: (True, "0", None))
    run_check(report, "demo.bad", "always false", lambda: (False, "x", {"where": 1}))
    assert [c.verdict for c in report.checks] == [PASS, FAIL]
    assert not report.passed
    assert [c.check_id for c in report.failures] == ["demo.bad"]


def test_library_errors_become_failed_checks():
    def broken():
        raise ShapeError("bad shape")

    report = Report("demo")
    result = run_check(report, "demo.error", "raises", broken)
    assert not result.passed
    assert "ShapeError" in result.witness


def test_other_errors_propagate():
    def broken():
        raise KeyError("missing")

    with pytest.raises(KeyError):
        run_check(Report("demo"), "demo.error", "raises", broken)


def test_json_is_deterministic():
    report = single("demo", "demo.one", "anchor", True, "a", "a")
    report.checks[0].elapsed = 0.25
    first = report.to_json()
    assert first == report.to_json()
    data = json.loads(first)
    assert data["passed"] is True
    assert data["total"] == 1
    assert "elapsed" not in data["checks"][0]
    assert json.loads(report.to_json(include_timing=True))["checks"][0]["elapsed"] == 0.25


def test_text_report_levels():
    report = Report("demo")
    report.add(CheckResult("demo.ok", "fine", PASS, assembled="0", expected="zero"))
    report.add(CheckResult("demo.bad", "broken", FAIL, witness={"mu": 2}, assembled="1", expected="zero"))

    summary = report.to_text("summary")
    assert summary == "demo: 1/2 checks passed - FAILED"

    checks = report.to_text("checks")
    assert "[PASS] demo.ok - fine" in checks
    assert "[FAIL] demo.bad - broken" in checks
    assert 'witness:   {"mu": 2}' in checks
    assert "assembled: 0" not in checks

    witness = report.to_text("witness")
    assert "assembled: 0" in witness


def test_unknown_verbosity():
    with pytest.raises(ValueError):
        Report("demo").to_text("loud")


def test_extend_keeps_order():
    first = single("a", "a.1", "x", True)
    second = single("b", "b.1", "y", False)
    combined = Report("all")
    combined.extend(first)
    combined.extend(second)
    assert [c.check_id for c in combined.checks] == ["a.1", "b.1"]
    assert not combined.passed


def test_registry():
    names = SuiteRegistry.list_suites()
    assert names[-1] == "all"
    assert {"algebra", "weights", "intseries", "constraints"} <= set(names)
    assert SuiteRegistry.create("all") is run_all
    with pytest.raises(ValueError):
        SuiteRegistry.create("nope")


def test_register_suite():
    def tiny(**options):
        return single("tiny", "tiny.ok", "registered", True)

    SuiteRegistry.register_suite("tiny", tiny)
    try:
        assert "tiny" in SuiteRegistry.list_suites()
        assert SuiteRegistry.create("tiny")().passed
    finally:
        SuiteRegistry._suites.pop("tiny", None)


@pytest.mark.slow
@pytest.mark.parametrize("name", ["algebra", "weights", "intseries", "constraints"])
def test_suites_pass(name, small_options):
    report = SuiteRegistry.create(name)(**small_options)
    assert report.checks
    assert report.passed, report.to_text("checks")
