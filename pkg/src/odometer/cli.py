"""Command-line front end.

Exit codes: 0 pass/Equal/true, 1 fail/NotEqual/false, 2 Unknown,
64 usage error, 65 evaluation error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .elements import ConjugationError, conjugate_to_tau
from .exprlang import EvalError, ParseError, evaluate, parse, unparse
from .nadic import NAdicError
from .relations import SUITES, SuiteError, run_suite
from .treeaut import (
    DEFAULT_BUDGET,
    TreeAutError,
    Verdict,
    apply_vertex,
    equal_bisim,
    first_difference,
    format_vertex,
    parse_vertex,
    portrait,
    state_graph,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 64
EXIT_EVAL = 65

DEFAULT_DEPTH = 8


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _shared(defaults: bool) -> argparse.ArgumentParser:
    """Options accepted both before and after the subcommand."""
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p = _Parser(add_help=False)
    p.add_argument("--n", type=int, default=d(None), help="tree degree (required)")
    p.add_argument("--depth", type=int, default=d(DEFAULT_DEPTH), help="levels to compare")
    p.add_argument("--budget", type=int, default=d(DEFAULT_BUDGET),
                   help="state-pair budget for bisimulation and state graphs")
    p.add_argument("--format", choices=("text", "json"), default=d("text"))
    p.add_argument("--seed", type=int, default=d(0))
    p.add_argument("--names", action="store_true", default=d(False),
                   help="draw named states by name in portraits")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="odometer", parents=[_shared(True)],
                     description="Exact computation with automorphisms of the n-ary tree.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = [_shared(False)]

    p = sub.add_parser("eval", parents=common, help="print the portrait of an element")
    p.add_argument("expr")

    p = sub.add_parser("apply", parents=common, help="image of a vertex")
    p.add_argument("expr")
    p.add_argument("vertex")

    p = sub.add_parser("equal", parents=common, help="compare two elements")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--bisim", action="store_true", help="decide exactly by bisimulation")

    p = sub.add_parser("commutes", parents=common, help="test commutation to depth")
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("conjugate-to-tau", parents=common,
                       help="build a conjugator to the adding machine")
    p.add_argument("expr")
    p.add_argument("--levels", type=int, default=6)
    p.add_argument("--portrait-depth", type=int, default=2)
    p.add_argument("--strict", action="store_true",
                   help="fail when the commutation screening fails")

    p = sub.add_parser("verify", parents=common, help="run a relation suite")
    p.add_argument("suite")
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")

    p = sub.add_parser("dot", parents=common, help="state graph in DOT format")
    p.add_argument("expr")
    return parser


def _emit(args, text: str, data: dict) -> None:
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def _verdict_data(v: Verdict, n: int, method: str) -> dict:
    return {
        "verdict": v.status,
        "witness": format_vertex(v.witness, n) if v.witness is not None else None,
        "method": method,
    }


def _cmd_eval(args) -> int:
    a = evaluate(args.expr, args.n)
    pic = portrait(a, args.depth, names=args.names)
    _emit(args, pic, {"expr": unparse(parse(args.expr)), "activity": str(a.perm),
                      "depth": args.depth, "portrait": pic})
    return EXIT_OK


def _cmd_apply(args) -> int:
    a = evaluate(args.expr, args.n)
    word = parse_vertex(args.vertex, args.n)
    image = format_vertex(apply_vertex(a, word), args.n)
    _emit(args, image, {"vertex": format_vertex(word, args.n), "image": image})
    return EXIT_OK


def _cmd_equal(args) -> int:
    a, b = evaluate(args.left, args.n), evaluate(args.right, args.n)
    if args.bisim:
        v = equal_bisim(a, b, args.budget)
        method = "bisimulation"
    else:
        w = first_difference(a, b, args.depth)
        v = Verdict("Equal") if w is None else Verdict("NotEqual", w)
        method = f"depth {args.depth}"
    _emit(args, f"{v.describe(args.n)} [{method}]", _verdict_data(v, args.n, method))
    return {"Equal": EXIT_OK, "NotEqual": EXIT_FAIL}.get(v.status, EXIT_UNKNOWN)


def _cmd_commutes(args) -> int:
    a, b = evaluate(args.left, args.n), evaluate(args.right, args.n)
    w = first_difference(a * b, b * a, args.depth)
    text = "true" if w is None else f"false witness={format_vertex(w, args.n)}"
    _emit(args, f"{text} [depth {args.depth}]",
          {"commutes": w is None, "depth": args.depth,
           "witness": None if w is None else format_vertex(w, args.n)})
    return EXIT_OK if w is None else EXIT_FAIL


def _cmd_conjugate(args) -> int:
    if args.levels < 0 or args.portrait_depth < 0:
        raise UsageError("--levels and --portrait-depth must be non-negative")
    beta = evaluate(args.expr, args.n)
    report = conjugate_to_tau(beta, args.levels)
    ok = report.certified and (report.screening_passed or not args.strict)
    pic = portrait(report.conjugator, args.portrait_depth, names=args.names)
    lines = [f"conjugator {pic}", *report.lines()]
    if report.witness is not None:
        lines.append(f"witness {format_vertex(report.witness, args.n)}")
    lines.append("RESULT " + ("PASS" if ok else "FAIL"))
    _emit(args, "\n".join(lines), {
        "conjugator": pic,
        "portrait_depth": args.portrait_depth,
        "levels": report.levels,
        "certified": report.certified,
        "power": report.power,
        "activity_exponent": report.activity_exponent,
        "adjustment": report.adjustment,
        "screening_passed": report.screening_passed,
        "screening_failure": report.screening_failure,
        "alignments": [[lv, str(p)] for lv, p in report.alignments],
        "witness": None if report.witness is None else format_vertex(report.witness, args.n),
        "result": "PASS" if ok else "FAIL",
    })
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_verify(args) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(sorted(SUITES))}")
    params = {}
    for item in args.param:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise UsageError(f"--param expects KEY=VALUE, got {item!r}")
        if key not in SUITES[args.suite][1]:
            raise UsageError(f"suite {args.suite!r} has no parameter {key!r}")
        params[key] = value
    report = run_suite(args.suite, args.n, params, seed=args.seed, depth=args.depth)
    if args.format == "json":
        print(report.to_json())
    else:
        print(report.text(), end="")
    return EXIT_OK if report.passed else EXIT_FAIL


def _cmd_dot(args) -> int:
    a = evaluate(args.expr, args.n)
    g = state_graph(a, args.budget)
    if isinstance(g, Verdict):
        _emit(args, "UNKNOWN", {"status": "Unknown", "states_seen": g.pairs_explored})
        return EXIT_UNKNOWN
    dot = g.to_dot()
    _emit(args, dot.rstrip("\n"), {"status": "ok", "states": len(g), "dot": dot})
    return EXIT_OK


COMMANDS = {
    "eval": _cmd_eval,
    "apply": _cmd_apply,
    "equal": _cmd_equal,
    "commutes": _cmd_commutes,
    "conjugate-to-tau": _cmd_conjugate,
    "verify": _cmd_verify,
    "dot": _cmd_dot,
}


def run(argv: Sequence[str] | None = None) -> int:
    """Run the command line and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.n is None:
            raise UsageError("the --n degree option is required")
        if args.n < 2:
            raise UsageError("--n must be at least 2")
        if args.depth < 0:
            raise UsageError("--depth must be non-negative")
        if args.budget < 1:
            raise UsageError("--budget must be positive")
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(parser.format_usage(), end="", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_EVAL
    except (EvalError, ConjugationError, SuiteError, NAdicError, TreeAutError) as exc:
        print(f"evaluation error: {exc}", file=sys.stderr)
        return EXIT_EVAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
