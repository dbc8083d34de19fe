"""
Verification Reports

Per-check results and the report a suite or CLI verb produces, with a
deterministic JSON form and a human-readable text form.
"""
import json
import logging
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Tuple, Union

from scalar.errors import BlockAlgError

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"

VERBOSITIES = ("summary", "checks", "witness")

Witness = Union[str, Dict[str, Any], List[Any], None]


@dataclass
class CheckResult:
    """
    Outcome of one check.

    Attributes:
        check_id: Stable identifier, e.g. "algebra.jacobi"
        anchor: Short label of the formula being checked
        verdict: "pass" or "fail"
        witness: Evidence for the verdict (residual, counterexample, ...)
        elapsed: Wall-clock seconds
        assembled: Computed expression, as text
        expected: Expected expression, as text ("zero" for identities)
    """
    check_id: str
    anchor: str
    verdict: str
    witness: Witness = None
    elapsed: float = 0.0
    assembled: str = ""
    expected: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "id": self.check_id,
            "anchor": self.anchor,
            "verdict": self.verdict,
            "witness": self.witness,
            "assembled": self.assembled,
            "expected": self.expected,
        }
        if include_timing:
            data["elapsed"] = round(self.elapsed, 3)
        return data


def verdict_of(ok: bool) -> str:
    return PASS if ok else FAIL


@dataclass
class Report:
    """All checks of one suite or command, in the order they ran."""
    suite: str
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def add(self, result: CheckResult) -> CheckResult:
        self.checks.append(result)
        if result.passed:
            logger.debug(f"{result.check_id}: pass")
        else:
            logger.error(f"{result.check_id}: FAIL ({result.anchor})")
        return result

    def extend(self, other: "Report") -> None:
        for result in other.checks:
            self.checks.append(result)

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "total": len(self.checks),
            "failed": len(self.failures),
            "checks": [c.to_dict(include_timing) for c in self.checks],
        }

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), sort_keys=True, indent=2)

    def to_text(self, verbosity: str = "checks", include_timing: bool = False) -> str:
        """
        Human-readable report.

        Args:
            verbosity: "summary" (totals only), "checks" (one line per
                check) or "witness" (plus assembled/expected/witness)
            include_timing: Append elapsed seconds to each check line
        """
        if verbosity not in VERBOSITIES:
            raise ValueError(f"unknown verbosity {verbosity!r}; expected one of {VERBOSITIES}")
        lines: List[str] = []
        if verbosity != "summary":
            for c in self.checks:
                line = f"[{c.verdict.upper():4}] {c.check_id} - {c.anchor}"
                if include_timing:
                    line += f" ({c.elapsed:.2f}s)"
                lines.append(line)
                if verbosity == "witness" or (not c.passed and verbosity == "checks"):
                    if c.assembled:
                        lines.append(f"         assembled: {c.assembled}")
                    if c.expected:
                        lines.append(f"         expected:  {c.expected}")
                    if c.witness not in (None, "", {}, []):
                        lines.append(f"         witness:   {_witness_text(c.witness)}")
        status = "PASSED" if self.passed else "FAILED"
        lines.append(f"{self.suite}: {len(self.checks) - len(self.failures)}/{len(self.checks)} checks passed - {status}")
        return "\n".join(lines)


def _witness_text(witness: Witness) -> str:
    if isinstance(witness, str):
        return witness
    return json.dumps(witness, sort_keys=True)


def run_check(
    report: Report,
    check_id: str,
    anchor: str,
    fn: Callable[[], Tuple[bool, str, Witness]],
    expected: str = "zero",
) -> CheckResult:
    """
    Run fn() -> (ok, assembled, witness) and record it in the report.

    Library errors raised by fn are recorded as a failed check with the
    error text as the witness.
    """
    start = time.perf_counter()
    try:
        ok, assembled, witness = fn()
    except (BlockAlgError, ZeroDivisionError) as e:
        ok, assembled, witness = False, "", f"{type(e).__name__}: {e}"
    elapsed = time.perf_counter() - start
    return report.add(CheckResult(
        check_id=check_id,
        anchor=anchor,
        verdict=verdict_of(ok),
        witness=witness,
        elapsed=elapsed,
        assembled=assembled,
        expected=expected,
    ))


def single(suite: str, check_id: str, anchor: str, ok: bool, assembled: str = "", expected: str = "", witness: Witness = None) -> Report:
    """A report holding one check, used by the single-operation CLI verbs."""
    report = Report(suite)
    report.add(CheckResult(check_id, anchor, verdict_of(ok), witness, 0.0, assembled, expected))
    return report
