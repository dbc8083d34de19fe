"""
Verification Module

Check results, reports and the registry of verification suites run by
the verify-paper command.
"""

from verification.report import (
    PASS,
    FAIL,
    VERBOSITIES,
    CheckResult,
    Report,
    verdict_of,
    run_check,
    single,
)
from verification.suites import (
    SuiteRegistry,
    algebra_suite,
    weights_suite,
    intseries_suite,
    constraints_suite,
    run_all,
    run_suite,
    random_quasipolynomial,
    non_recurrent_weights,
)

__all__ = [
    # Reports
    "PASS",
    "FAIL",
    "VERBOSITIES",
    "CheckResult",
    "Report",
    "verdict_of",
    "run_check",
    "single",
    # Suites
    "SuiteRegistry",
    "algebra_suite",
    "weights_suite",
    "intseries_suite",
    "constraints_suite",
    "run_all",
    "run_suite",
    "random_quasipolynomial",
    "non_recurrent_weights",
]
