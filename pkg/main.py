#!/usr/bin/env python3
"""
Command line front end for the Block algebra toolkit.

Each verb runs one operation (or a verification suite), prints its result
and a pass/fail report, and optionally writes the report as JSON.

Usage:
    python main.py <verb> [--flags]

Exit codes: 0 when every check passes, 1 when a check fails, 2 on an input
error (unparsable scalar or element, missing file, malformed JSON, invalid
module definition).
"""
import argparse
import itertools
import json
import logging
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from config import Config
from scalar import BlockAlgError, QuasifinitenessError, infer_context
from algebra import (
    AlgebraElement,
    BlockAlgebra,
    ad_chain,
    assoc_graded_check,
    bracket,
    jacobi_residual,
    parse_element,
    scale_embed,
    vir_central,
    vir_embed,
)
from weights import (
    Polynomial,
    QuasiPolynomial,
    Verdict,
    Weight,
    char_poly,
    is_quasifinite,
    labels_from_quasipoly,
    singular_check,
    singular_witness,
    texts_of_quasipoly,
)
from intseries import IntermediateModule, irreducible_window, verify_module
from constraints import (
    SUBCASES,
    determinant_report,
    displayed_coefficients,
    omega_pipeline,
    q_half_identities,
    q_minus1_systems,
    q_one_fallback,
)
from verification import VERBOSITIES, CheckResult, Report, SuiteRegistry, single, verdict_of

logger = logging.getLogger(__name__)

Outcome = Tuple[Report, str]

_GENERATOR = re.compile(r"L\[[^\]]*\]")
_CENTRAL = re.compile(r"(?<![A-Za-z_0-9])c(?![A-Za-z_0-9])")


# --- input helpers ------------------------------------------------------------

def _load_json(path: str) -> Any:
    with open(path, "r") as f:
        return json.load(f)


def _inline(value: str) -> str:
    """Element arguments may name a JSON file instead of inline text."""
    if value.endswith(".json"):
        return Path(value).read_text()
    return value


def _element_texts(value: str) -> List[str]:
    """Scalar texts inside an element given as JSON or as text."""
    value = _inline(value)
    if value.lstrip().startswith("{"):
        data = json.loads(value)
        texts = [str(t.get("coeff", "1")) for t in data.get("terms", [])]
        texts.append(str(data.get("central") or "0"))
        return texts
    return [_CENTRAL.sub(" ", _GENERATOR.sub(" ", value))]


def _algebra_for(q_text: str, elements: Sequence[str]) -> BlockAlgebra:
    texts = [q_text]
    for value in elements:
        texts.extend(_element_texts(value))
    context = infer_context(texts)
    return BlockAlgebra(context, context.parse(q_text))


def _element(algebra: BlockAlgebra, value: str) -> AlgebraElement:
    value = _inline(value)
    if value.lstrip().startswith("{"):
        return AlgebraElement.from_dict(json.loads(value), algebra)
    return parse_element(algebra, value)


def _weight(path: str) -> Weight:
    return Weight.from_dict(_load_json(path))


def _module(path: str) -> IntermediateModule:
    return IntermediateModule.from_dict(_load_json(path))


def _grid(algebra: BlockAlgebra, alpha_max: int, i_max: int) -> List[AlgebraElement]:
    return [algebra.L(alpha, i) for alpha in range(-alpha_max, alpha_max + 1) for i in range(i_max + 1)]


# --- algebra verbs ------------------------------------------------------------

def cmd_bracket(args: argparse.Namespace) -> Outcome:
    algebra = _algebra_for(args.q, [args.lhs, args.rhs])
    result = bracket(_element(algebra, args.lhs), _element(algebra, args.rhs))
    report = single("bracket", "bracket", "[x, y]", True, result.to_text(), witness=result.to_dict())
    return report, result.to_text()


def cmd_jacobi(args: argparse.Namespace) -> Outcome:
    algebra = _algebra_for(args.q, [args.x, args.y, args.z])
    x, y, z = (_element(algebra, v) for v in (args.x, args.y, args.z))
    residual = jacobi_residual(x, y, z)
    report = single("jacobi", "jacobi", "[x,[y,z]] + [y,[z,x]] + [z,[x,y]]", residual.is_zero, residual.to_text(), "0")
    return report, residual.to_text()


def cmd_embed_check(args: argparse.Namespace) -> Outcome:
    context = infer_context([args.q])
    algebra = BlockAlgebra(context, context.parse(args.q))
    report = Report("embed-check")

    bad_vir = []
    if not algebra.q.is_zero:
        for alpha in range(-args.alpha_max, args.alpha_max + 1):
            for beta in range(-args.alpha_max, args.alpha_max + 1):
                rhs = vir_embed(algebra, alpha + beta) * (beta - alpha)
                if alpha + beta == 0:
                    rhs = rhs + vir_central(algebra) * Fraction(alpha ** 3 - alpha, 12)
                if bracket(vir_embed(algebra, alpha), vir_embed(algebra, beta)) != rhs:
                    bad_vir.append([alpha, beta])
        report.add(_check("embed.virasoro", "Virasoro relations of q^-1 L[alpha,0]", not bad_vir, bad_vir[:3]))

    bad_scale = []
    for x, y in itertools.combinations(_grid(algebra, args.alpha_max, args.i_max), 2):
        if scale_embed(bracket(x, y), args.k) != bracket(scale_embed(x, args.k), scale_embed(y, args.k)):
            bad_scale.append([x.to_text(), y.to_text()])
    report.add(_check(f"embed.scale.{args.k}", f"B(q) -> B({args.k}q) homomorphism", not bad_scale, bad_scale[:3]))
    return report, f"q = {algebra.q.to_text()}, k = {args.k}"


def cmd_ad_chain(args: argparse.Namespace) -> Outcome:
    context = infer_context([args.q])
    algebra = BlockAlgebra(context, context.parse(args.q))
    result = ad_chain(algebra, args.mu0, args.k1, args.k2)
    report = single(
        "ad-chain", "ad_chain", f"ad chain mu0={args.mu0}, k1={args.k1}, k2={args.k2}",
        result.agrees, result.element.to_text(), f"({result.coefficient.to_text()})*L[{result.alpha},0]",
        result.to_dict(),
    )
    return report, result.element.to_text()


def cmd_winf_check(args: argparse.Namespace) -> Outcome:
    bad = [
        [alpha, beta, i, j]
        for alpha in range(-args.alpha_max, args.alpha_max + 1)
        for beta in range(-args.alpha_max, args.alpha_max + 1)
        for i in range(1, args.i_max + 1)
        for j in range(1, args.i_max + 1)
        if not assoc_graded_check(alpha, beta, i, j).is_zero
    ]
    report = single("winf-check", "winf", "top degree of W_infinity bracket equals B(1)", not bad, f"{len(bad)} mismatches", "0", bad[:3])
    return report, f"{len(bad)} mismatches"


# --- weight verbs -------------------------------------------------------------

def cmd_qf_check(args: argparse.Namespace) -> Outcome:
    result = is_quasifinite(_weight(args.weight))
    text = result.verdict
    if result.polynomial is not None:
        text += f", h = {result.polynomial.to_text()}"
    report = single("qf-check", "qf_check", "quasifiniteness", result.verdict == args.expect, text, args.expect, result.to_dict())
    return report, text


def cmd_charpoly(args: argparse.Namespace) -> Outcome:
    w = _weight(args.weight)
    try:
        h = char_poly(w)
    except QuasifinitenessError as e:
        return single("charpoly", "charpoly", "characteristic polynomial", False, "", "", str(e)), str(e)
    text = f"t^q * ({h.to_text()})"
    return single("charpoly", "charpoly", "characteristic polynomial", True, text, "", {"h": h.to_list()}), text


def cmd_singular_check(args: argparse.Namespace) -> Outcome:
    w = _weight(args.weight)
    if args.h:
        h = Polynomial.from_texts(w.context, [t.strip() for t in args.h.split(",")])
    else:
        h = char_poly(w)
    ok = singular_check(w, h)
    witness = singular_witness(w, h)
    text = f"{'singular' if ok else 'not singular'}: {witness['vector']}"
    return single("singular-check", "singular_check", "depth one singular vector", ok == args.expect_singular, text, "", witness), text


def cmd_labels_from_qp(args: argparse.Namespace) -> Outcome:
    data = _load_json(args.qp)
    terms = data.get("terms", []) if isinstance(data, dict) else data
    free = {int(k): str(v) for k, v in (data.get("free") or {}).items()} if isinstance(data, dict) else {}
    q_text = args.q or (data.get("q") if isinstance(data, dict) else None) or "q"
    context = infer_context(texts_of_quasipoly(terms) + [q_text] + list(free.values()))
    quasi = QuasiPolynomial.from_dict(terms, context)
    truncation = args.truncation if args.truncation is not None else Config.TRUNCATION
    w = labels_from_quasipoly(quasi, context.parse(q_text), truncation, free)
    payload = w.to_dict()
    text = json.dumps(payload, sort_keys=True)
    if args.output:
        path = Path(args.output)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(payload, sort_keys=True, indent=2))
        logger.info(f"Weight written to: {path}")
    return single("labels-from-qp", "labels", "labels realizing the quasipolynomial", True, text, "", payload), text


# --- module verbs -------------------------------------------------------------

def cmd_module_verify(args: argparse.Namespace) -> Outcome:
    module = _module(args.module)
    violations = verify_module(module, args.window, args.alpha_max, args.i_max)
    text = f"{module!r}: {len(violations)} violations"
    witness = [v.to_dict() for v in violations[:5]]
    return single("module-verify", "module_verify", "module axioms on the window", not violations, text, "0", witness), text


def cmd_irreducible_check(args: argparse.Namespace) -> Outcome:
    module = _module(args.module)
    result = irreducible_window(module, args.window)
    text = f"{module!r}: {'irreducible' if result.irreducible else 'reducible'} on the window"
    return single("irreducible-check", "irreducible", "reachability on the inner window", result.irreducible, text, "", result.to_dict()), text


# --- constraint verbs ---------------------------------------------------------

def cmd_det_report(args: argparse.Namespace) -> Outcome:
    report = Report("det-report")
    if args.omega:
        lines = []
        for alpha0 in args.omega:
            result = omega_pipeline(alpha0)
            ok = not result.h4.is_zero and result.matches_determinant
            report.add(_check(f"omega.{alpha0}", f"H(4) at alpha0={alpha0}", ok, result.to_dict(), result.h4.to_text()))
            lines.append(f"alpha0={alpha0}: H(4) = {result.h4.to_text()}")
        return report, "\n".join(lines)

    r = determinant_report(args.case)
    displayed = displayed_coefficients()
    if args.case == 1:
        expected = {(0, 8): "P(0,8)", (1, 6): "P(1,6)"}
        ok_support = set(r.support) == {(0, 8), (1, 6), (0, 6)}
    else:
        expected = {(1, 6): "Q(1,6)", (0, 6): "Q(0,6)"}
        ok_support = set(r.support) <= {(1, 6), (0, 6)}
    report.add(_check(f"case{args.case}.support", "determinant support", ok_support and r.total_degree <= 8, r.to_dict()))
    for (i, j), key in expected.items():
        value = r.coefficient(i, j)
        report.add(_check(f"case{args.case}.{key}", key, value == displayed[key], None, value.to_text(), displayed[key].to_text()))
    if args.case == 1:
        half = r.coefficient(1, 6).specialize({"b": Fraction(1, 2)})
        key = "P(1,6)|b=1/2"
        report.add(_check("case1.P(1,6)|b=1/2", key, half == displayed[key], None, half.to_text(), displayed[key].to_text()))
    lines = [f"beta^{i}*gamma^{j}: {c.to_text()}" for (i, j), c in sorted(r.support.items())]
    return report, "\n".join(lines)


def cmd_solve_case(args: argparse.Namespace) -> Outcome:
    report = Report("solve-case")
    if args.subcase == "half":
        identities = q_half_identities(window=args.window)
        for name, ok in identities.checks.items():
            report.add(_check(f"half.{name}", name, ok, None))
        return report, identities.derived.to_text()
    if args.subcase == "q1":
        fallback = q_one_fallback()
        ok = fallback.consistent and fallback.q_determinant.is_zero
        report.add(_check("q1.fallback", "eigen-identity at q = 1", ok, fallback.to_dict()))
        return report, json.dumps(fallback.to_dict(), sort_keys=True)
    analysis = q_minus1_systems(args.subcase, window=args.window)
    for claim in analysis.claims:
        report.add(_check(f"{args.subcase}.{claim.name}", claim.name, claim.holds, claim.to_dict()))
    system = analysis.system
    return report, "\n".join(f"{label}: {eq.to_text()} = 0" for label, eq in zip(system.labels, system.equations))


def cmd_verify_paper(args: argparse.Namespace) -> Outcome:
    options = Config.suite_options()
    report = SuiteRegistry.create(args.suite)(**options)
    return report, ""


def _check(check_id: str, anchor: str, ok: bool, witness: Any, assembled: str = "", expected: str = "") -> CheckResult:
    return CheckResult(check_id, anchor, verdict_of(ok), witness, 0.0, assembled, expected)


COMMANDS: Dict[str, Callable[[argparse.Namespace], Outcome]] = {
    "bracket": cmd_bracket,
    "jacobi": cmd_jacobi,
    "embed-check": cmd_embed_check,
    "ad-chain": cmd_ad_chain,
    "winf-check": cmd_winf_check,
    "qf-check": cmd_qf_check,
    "charpoly": cmd_charpoly,
    "singular-check": cmd_singular_check,
    "labels-from-qp": cmd_labels_from_qp,
    "module-verify": cmd_module_verify,
    "irreducible-check": cmd_irreducible_check,
    "det-report": cmd_det_report,
    "solve-case": cmd_solve_case,
    "verify-paper": cmd_verify_paper,
}


# --- parser -------------------------------------------------------------------

def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", help="Write the report as JSON (bare names go to the report directory)")
    parser.add_argument("--verbosity", choices=VERBOSITIES, help="Report detail (default from BLOCKALG_REPORT_VERBOSITY)")
    parser.add_argument("--timing", action="store_true", help="Include elapsed seconds in the report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blockalg",
        description="Exact computations in the Block type Lie algebra B(q) and its modules",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Bracket of two elements (JSON or text)
  python main.py bracket --q q --lhs 'L[2,0]' --rhs 'L[-2,0]'

  # Quasifiniteness of a weight file
  python main.py qf-check --weight config/weight_trivial.json

  # Verify a module of the intermediate series
  python main.py module-verify --module config/module_ap01_half.json --window 6

  # Determinant of the case 1 system
  python main.py det-report --case 1

  # Full verification with a JSON report
  python main.py verify-paper --suite all --json all.json
        """,
    )
    sub = parser.add_subparsers(dest="verb", metavar="verb")
    sub.required = True

    p = sub.add_parser("bracket", help="Bracket of two elements")
    p.add_argument("--q", default="q", help="Value of q (default: symbolic q)")
    p.add_argument("--lhs", required=True, help="Element as JSON or text, e.g. 'L[1,0] + c'")
    p.add_argument("--rhs", required=True, help="Element as JSON or text")

    p = sub.add_parser("jacobi", help="Jacobi residual of three elements")
    p.add_argument("--q", default="q")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--z", required=True)

    p = sub.add_parser("embed-check", help="Virasoro and scaling embeddings")
    p.add_argument("--q", default="q")
    p.add_argument("--k", type=int, default=2, help="Scale factor")
    p.add_argument("--alpha-max", type=int, default=3)
    p.add_argument("--i-max", type=int, default=3)

    p = sub.add_parser("ad-chain", help="Iterated ad against its closed form")
    p.add_argument("--q", default="q")
    p.add_argument("--mu0", type=int, required=True)
    p.add_argument("--k1", type=int, required=True)
    p.add_argument("--k2", type=int, required=True)

    p = sub.add_parser("winf-check", help="B(1) as the associated graded of W_infinity")
    p.add_argument("--alpha-max", type=int, default=3)
    p.add_argument("--i-max", type=int, default=4)

    p = sub.add_parser("qf-check", help="Quasifiniteness of a highest weight")
    p.add_argument("--weight", required=True, help="Weight JSON file")
    p.add_argument("--expect", default=Verdict.QUASIFINITE,
                   choices=[Verdict.QUASIFINITE, Verdict.NOT_DETECTED, Verdict.INSUFFICIENT])

    p = sub.add_parser("charpoly", help="Characteristic polynomial of a quasifinite weight")
    p.add_argument("--weight", required=True)

    p = sub.add_parser("singular-check", help="Depth one singular vector test")
    p.add_argument("--weight", required=True)
    p.add_argument("--h", help="Comma separated coefficients h_0,...,h_r (default: the characteristic polynomial)")
    p.add_argument("--expect-not-singular", dest="expect_singular", action="store_false")

    p = sub.add_parser("labels-from-qp", help="Labels realizing a quasipolynomial")
    p.add_argument("--qp", required=True, help="Quasipolynomial JSON file")
    p.add_argument("--q", help="Value of q (overrides the file)")
    p.add_argument("--truncation", type=int)
    p.add_argument("--output", help="Write the weight JSON here")

    for verb, help_text in (("module-verify", "Module axioms on a window"), ("irreducible-check", "Reachability probe")):
        p = sub.add_parser(verb, help=help_text)
        p.add_argument("--module", required=True, help="Module JSON file")
        p.add_argument("--window", type=int, default=Config.WINDOW)
        if verb == "module-verify":
            p.add_argument("--alpha-max", type=int, default=Config.ALPHA_MAX)
            p.add_argument("--i-max", type=int, default=Config.I_MAX)

    p = sub.add_parser("det-report", help="Case determinants and the elimination at q = theta")
    p.add_argument("--case", type=int, choices=[1, 2], default=1)
    p.add_argument("--omega", type=int, nargs="+", metavar="ALPHA0", help="Run the q = theta elimination for these alpha0")

    p = sub.add_parser("solve-case", help="q = -1/2, q = -1 and q = 1 case analyses")
    p.add_argument("--subcase", required=True, choices=list(SUBCASES) + ["half", "q1"])
    p.add_argument("--window", type=int, default=6)

    p = sub.add_parser("verify-paper", help="Run a verification suite")
    p.add_argument("--suite", default="all", choices=SuiteRegistry.list_suites())

    for choice in sub.choices.values():
        _common(choice)
    return parser


# --- entry point ----------------------------------------------------------------

def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, run the verb, print the result and report; return the exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    logger.debug(f"Settings: {Config.describe()}")
    verbosity = args.verbosity or Config.REPORT_VERBOSITY
    if verbosity not in VERBOSITIES:
        logger.warning(f"Unknown report verbosity {verbosity!r}; using 'checks'")
        verbosity = "checks"

    try:
        report, output = COMMANDS[args.verb](args)
    except (BlockAlgError, ZeroDivisionError, ValueError, OSError) as e:
        logger.error(f"{args.verb} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return 2

    if output:
        print(output)
    print(report.to_text(verbosity, include_timing=args.timing))
    if args.json:
        path = Config.report_path(args.json)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(report.to_json(include_timing=args.timing))
        logger.info(f"Report written to: {path}")
    return 0 if report.passed else 1


def main():
    """Main entry point."""
    logging.basicConfig(
        level=Config.LOG_LEVEL,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )
    sys.exit(run())


if __name__ == "__main__":
    main()
