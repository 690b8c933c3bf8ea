"""Command-line front end.

    lpc compile FILE --target {l0,l1,l2} [--optimize] [--no-preprocess]
    lpc run FILE QUERY --pipeline {interp,l0,l1,l2} [--fused]
            [--strict-match] [--depth N] [--max-solutions K] [--trace]
            [--optimize] [--no-preprocess]
    lpc check-modes FILE [--strict]
    lpc diff --seed N --count K --profile {horn,hh,moded} [--depth D]
            [--max-solutions K] [--json OUT]

compile prints one s-expression per compiled clause, in file order.
run prints one line per solution (`X = t; Y = u`, or `yes` for a ground
query) and a final summary line; exit status 0 with solutions, 1 with
none, 2 on errors. All output is byte-deterministic for fixed inputs
and flags; --trace logs engine events to stderr.
"""

import argparse
import sys

from . import harness, interp, l0, l1, l2
from .engine import StrictMatchViolation
from .parser import ParseError, parse_program, parse_query
from .preprocess import preprocess_program, preprocess_query
from .runtime import SearchConfig
from .syntax import (UnpreprocessedConnective, MalformedClause, dump_sexpr,
                     pretty_term)


def _load(path):
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def cmd_compile(args):
    program = parse_program(_load(args.file))
    if not args.no_preprocess:
        program = preprocess_program(program)
    if args.target == "l0":
        compiled = l0.compile_program_l0(program)
    elif args.target == "l1":
        compiled = l1.compile_program_l1(program)
        if args.optimize:
            compiled = l1.optimize_program_l1(compiled)
    else:
        if args.optimize:
            raise UnpreprocessedConnective(
                "--optimize is only supported for --target l1")
        compiled = l2.compile_program_l2(program)
    for c in compiled:
        print(dump_sexpr(c))
    return 0


def _trace_printer(kind, lhs, rhs, result):
    def enc(x):
        if isinstance(x, tuple):
            return "(seq%s)" % "".join(" " + dump_sexpr(t) for t in x)
        return dump_sexpr(x)

    sys.stderr.write("EVENT %s %s %s %s\n" % (kind, enc(lhs), enc(rhs),
                                              result))


def cmd_run(args):
    program = parse_program(_load(args.file))
    goal, qvars = parse_query(args.query, program)
    if not args.no_preprocess:
        program = preprocess_program(program)
        goal = preprocess_query(goal)
    cfg = SearchConfig(max_depth=args.depth, max_solutions=args.max_solutions,
                       fused=args.fused, strict_match=args.strict_match,
                       trace=_trace_printer if args.trace else None)
    if args.fused and args.pipeline not in ("l1", "l2"):
        raise UnpreprocessedConnective("--fused requires --pipeline l1 or l2")
    if args.pipeline == "interp":
        result = interp.solve_uniform(program, goal, cfg, qvars)
    elif args.pipeline == "l0":
        result = l0.solve_l0(l0.compile_program_l0(program),
                             l0.compile_goal_l0(goal), cfg, qvars)
    elif args.pipeline == "l1":
        compiled = l1.compile_program_l1(program)
        if args.optimize:
            compiled = l1.optimize_program_l1(compiled)
        result = l1.solve_l1(compiled, l1.compile_goal_l1(goal), cfg, qvars)
    else:
        if args.optimize:
            raise UnpreprocessedConnective(
                "--optimize is only supported for --pipeline l1")
        result = l2.solve_l2(l2.compile_program_l2(program),
                             l2.compile_goal_l2(goal), cfg, qvars)
    for sol in result.solutions:
        if qvars:
            print("; ".join("%s = %s" % (n, pretty_term(sol.bindings[n]))
                            for n in qvars))
        else:
            print("yes")
    c = result.counters
    print("solutions=%d incomplete=%s unify=%d match=%d assign=%d"
          % (len(result.solutions),
             "true" if result.incomplete else "false",
             c.unify_events, c.match_events, c.assign_events))
    return 0 if result.solutions else 1


def cmd_check_modes(args):
    program = parse_program(_load(args.file))
    report = l2.check_well_moded(program, strict=args.strict)
    if report.note:
        print("ok: %s" % report.note)
        return 0
    if report.well_moded:
        print("ok: well-moded")
        return 0
    for ix, msg in report.violations:
        print("clause %d: %s" % (ix, msg))
    return 1


def cmd_diff(args):
    report = harness.run_diff(args.seed, args.count, args.profile,
                              depth=args.depth,
                              max_solutions=args.max_solutions)
    if args.json:
        harness.report_to_json(report, args.json)
    print("profile=%s programs=%d queries=%d gated=%d mismatches=%d %s"
          % (report["profile"], report["programs"], report["queries"],
             report["gated_queries"], report["mismatches"],
             "PASS" if report["passed"] else "FAIL"))
    for item in report["items"]:
        if item["verdict"] == "fail":
            for q in item["queries"]:
                if q["mismatch"]:
                    print("  seed=%d item=%d %s"
                          % (item["seed"], item["index"], q["mismatch"]))
    return 0 if report["passed"] else 1


def build_arg_parser():
    ap = argparse.ArgumentParser(
        prog="lpc",
        description="Compiler and proof-search runtime for a hereditary "
                    "Harrop logic programming language.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compile", help="compile a program to a target")
    c.add_argument("file")
    c.add_argument("--target", choices=("l0", "l1", "l2"), default="l1")
    c.add_argument("--optimize", action="store_true")
    c.add_argument("--no-preprocess", action="store_true")
    c.set_defaults(fn=cmd_compile)

    r = sub.add_parser("run", help="run a query")
    r.add_argument("file")
    r.add_argument("query")
    r.add_argument("--pipeline", choices=("interp", "l0", "l1", "l2"),
                   default="l1")
    r.add_argument("--fused", action="store_true")
    r.add_argument("--strict-match", action="store_true")
    r.add_argument("--depth", type=int, default=30)
    r.add_argument("--max-solutions", type=int, default=1)
    r.add_argument("--trace", action="store_true")
    r.add_argument("--optimize", action="store_true")
    r.add_argument("--no-preprocess", action="store_true")
    r.set_defaults(fn=cmd_run)

    m = sub.add_parser("check-modes", help="well-modedness analysis")
    m.add_argument("file")
    m.add_argument("--strict", action="store_true")
    m.set_defaults(fn=cmd_check_modes)

    d = sub.add_parser("diff", help="differential run over a corpus")
    d.add_argument("--seed", type=int, default=1)
    d.add_argument("--count", type=int, default=40)
    d.add_argument("--profile", choices=("horn", "hh", "moded"),
                   default="horn")
    d.add_argument("--depth", type=int, default=30)
    d.add_argument("--max-solutions", type=int, default=16)
    d.add_argument("--json")
    d.set_defaults(fn=cmd_diff)
    return ap


def main(argv=None):
    args = build_arg_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as e:
        sys.stderr.write("error: %s\n" % e)
        return 2
    except (UnpreprocessedConnective, MalformedClause,
            StrictMatchViolation, OSError) as e:
        sys.stderr.write("error: %s\n" % e)
        return 2


if __name__ == "__main__":
    sys.exit(main())
