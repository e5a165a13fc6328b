"""Command-line interface.

Exit codes: 0 success, 1 failed check or unmet search objective, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .disentangle import (
    lemma2_construction,
    theorem4_construction,
    theorem5_construction,
    verify_plan,
)
from .errors import GmeError, InputError
from .fixtures import run_fixtures
from .robustness import certify
from .schmidt import DEFAULT_TOL, rank_profile
from .search import Objective, SearchConfig, adversarial_search
from .serialization import parse_state, plan_to_json

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

_METHODS = {
    "lemma2": lambda state, tol, strategy: lemma2_construction(state, tol),
    "thm4": lambda state, tol, strategy: theorem4_construction(state, tol, strategy),
    "thm5": lambda state, tol, strategy: theorem5_construction(state, tol),
}


def _read_state(source: str | None):
    if source in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc.strerror}") from exc
    return parse_state(text)


def _emit(payload, table_lines, as_table: bool) -> None:
    if as_table:
        print("\n".join(table_lines))
    else:
        print(json.dumps(payload, indent=2))


def cmd_analyze(args) -> int:
    state = _read_state(args.state)
    profile = rank_profile(state, args.tol, second_order=True)
    report = profile.to_json()
    lines = [f"{'cut':<12} rank"]
    lines += [f"{label:<12} {rank}" for label, rank in report["ranks"].items()]
    lines += [f"r1_min {profile.r1_min}", f"r1_max {profile.r1_max}", f"r2_min {profile.r2_min}"]
    _emit(report, lines, args.table)
    return EXIT_OK


def cmd_certify(args) -> int:
    state = _read_state(args.state)
    report = certify(state, args.tol).to_json()
    lines = [f"{k:<15} {v}" for k, v in report.items()]
    _emit(report, lines, args.table)
    return EXIT_OK


def cmd_construct(args) -> int:
    state = _read_state(args.state)
    plan = _METHODS[args.method](state, args.tol, args.strategy)
    check = verify_plan(state, plan, args.tol)
    report = plan_to_json(plan, verified=check.kind.value)
    lines = [f"lead {plan.lead:.6g}"]
    for i, (c, p) in enumerate(plan.terms, 1):
        lines.append(f"term {i}: coeff {c:.6g}, |<base|p>| = {abs(check.base_overlaps[i - 1]):.2e}")
    lines.append(f"verified {check.kind.value}")
    _emit(report, lines, args.table)
    return EXIT_OK


def cmd_search(args) -> int:
    state = _read_state(args.state)
    cfg = SearchConfig(
        k=args.k,
        objective=Objective(args.objective),
        restarts=args.restarts,
        max_iters=args.max_iters,
        seed=args.seed,
        success_threshold=args.threshold,
    )
    report = adversarial_search(state, cfg)
    payload = report.to_json()
    lines = [f"{k:<16} {v}" for k, v in payload.items() if k != "best_plan"]
    _emit(payload, lines, args.table)
    return EXIT_OK if report.succeeded else EXIT_FAIL


def cmd_verify_paper(args) -> int:
    results = run_fixtures()
    if args.json:
        payload = [
            {
                "fixture": r.fixture,
                "check": r.name,
                "expected": str(r.expected),
                "actual": str(r.actual),
                "passed": r.passed,
            }
            for r in results
        ]
        print(json.dumps(payload, indent=2))
    else:
        for r in results:
            mark = "PASS" if r.passed else "FAIL"
            print(f"{mark}  {r.fixture:<9} {r.name:<55} expected {r.expected}  got {r.actual}")
        fixtures = {r.fixture for r in results}
        failed = {r.fixture for r in results if not r.passed}
        print(f"{len(fixtures) - len(failed)}/{len(fixtures)} fixtures pass")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gmerobust",
        description="Schmidt-rank analysis of multipartite pure states under superposition.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="relative rank tolerance")
    mode = common.add_mutually_exclusive_group()
    mode.add_argument("--json", action="store_true", help="JSON output (default)")
    mode.add_argument("--table", action="store_true", help="plain-text table output")

    def with_state(name, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("state", nargs="?", help="state JSON file; '-' or omitted reads stdin")
        return p

    with_state("analyze", "Schmidt ranks over all bipartitions").set_defaults(func=cmd_analyze)
    with_state("certify", "classification and robustness budgets").set_defaults(func=cmd_certify)

    p = with_state("construct", "build a disentangling superposition plan")
    p.add_argument("--method", choices=sorted(_METHODS), required=True)
    p.add_argument(
        "--strategy",
        choices=["orthogonal", "sequential"],
        default="orthogonal",
        help="thm4 only: mutually orthogonal plan or pairwise merging",
    )
    p.set_defaults(func=cmd_construct)

    p = with_state("search", "adversarial search for entanglement-breaking superpositions")
    p.add_argument("--objective", choices=[o.value for o in Objective], default="break-gme")
    p.add_argument("-k", type=int, default=1, help="number of product states")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--max-iters", type=int, default=2000)
    p.add_argument("--threshold", type=float, default=1e-8)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify-paper", parents=[common], help="replay the worked examples")
    p.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GmeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
