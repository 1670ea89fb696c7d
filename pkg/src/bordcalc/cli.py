"""Batch command line front end.

Subcommands: check, eval, invariants, rewrite, verify, presentation,
linear.  Exit codes: 0 all requested checks passed; 2 usage or syntax
errors; 3 term validation errors; 4 failed verification, failed checks or
an inconclusive rewrite search.  Output ordering is deterministic.
"""

from __future__ import annotations

import argparse
import sys

from . import frobenius as fr
from . import linear as ln
from . import presentations as pr
from . import surface as sf
from . import termcore as tc

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INVALID = 3
EXIT_FAILED = 4


def _load_presentation(name):
    if name == "unoriented":
        return pr.bord2_unoriented()
    if name == "oriented":
        return pr.bord2_oriented()
    raise SystemExit("unknown presentation %r" % name)


def _load_algebra(spec):
    if spec in fr.BUILTIN_ALGEBRAS:
        return fr.BUILTIN_ALGEBRAS[spec]()
    with open(spec, "r", encoding="utf-8") as fh:
        return fr.parse_algebra_file(fh.read(), name=spec)


def _read_term(path, presentation):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return tc.parse_two_cell(text, presentation.data)


def cmd_check(args, out):
    p = _load_presentation(args.presentation)
    try:
        _read_term(args.file, p)
    except (tc.ParseError, tc.TermError) as exc:
        print("INVALID %s" % exc, file=sys.stderr)
        return EXIT_INVALID
    out("VALID")
    return EXIT_OK


def cmd_eval(args, out):
    p = _load_presentation(args.presentation)
    A = _load_algebra(args.algebra)
    try:
        term = _read_term(args.file, p)
    except (tc.ParseError, tc.TermError) as exc:
        print("INVALID %s" % exc, file=sys.stderr)
        return EXIT_INVALID
    asg = fr.standard_assignment(A, p)
    value = fr.evaluate(term, asg)
    out(value.render())
    return EXIT_OK


def cmd_invariants(args, out):
    p = _load_presentation(args.presentation)
    try:
        term = _read_term(args.file, p)
    except (tc.ParseError, tc.TermError) as exc:
        print("INVALID %s" % exc, file=sys.stderr)
        return EXIT_INVALID
    surf = sf.reconstruct(term, p)
    out(str(sf.invariants(surf)))
    return EXIT_OK


def cmd_rewrite(args, out):
    p = _load_presentation(args.presentation)
    try:
        t1 = _read_term(args.file, p)
        t2 = _read_term(args.to, p)
    except (tc.ParseError, tc.TermError) as exc:
        print("INVALID %s" % exc, file=sys.stderr)
        return EXIT_INVALID
    res = pr.equivalent_bounded(t1, t2, p, depth=args.depth,
                                max_visited=args.max_visited)
    if res.equivalent:
        out("EQUIVALENT %d" % len(res.steps))
        for step in res.steps:
            out("step %s %s at %s window %s"
                % (step.relation, step.direction,
                   "/".join(map(str, step.path)) or "<root>",
                   "%d+%d" % step.window))
        return EXIT_OK
    out("UNKNOWN")
    return EXIT_FAILED


def cmd_verify(args, out):
    p = _load_presentation(args.presentation)
    A = _load_algebra(args.algebra)
    report = fr.verify_presentation(A, p)
    for name, ok in report.results:
        out("%s %s" % ("PASS" if ok else "FAIL", name))
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_presentation(args, out):
    p = _load_presentation(args.dump)
    out(p.manifest().rstrip("\n"))
    return EXIT_OK


def cmd_linear(args, out):
    with open(args.file, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        d = ln.parse_diagram(text)
    except ln.LinearError as exc:
        print("INVALID %s" % exc, file=sys.stderr)
        return EXIT_INVALID
    census = ln.reconstruct_1manifold(d)
    out("circles=%d intervals=%d" % (census["circles"], census["intervals"]))
    if not args.moves:
        return EXIT_OK
    ok = True
    for move in ln.MOVES:
        for pos in range(len(d.regions) + 1):
            for side in ("left", "right"):
                try:
                    d2 = ln.apply_linear_move(d, move, pos, side)
                except ln.LinearError:
                    continue
                c2 = ln.reconstruct_1manifold(d2)
                same = (c2 == census)
                ok = ok and same
                out("move %s@%d/%s -> circles=%d intervals=%d %s"
                    % (move, pos, side, c2["circles"], c2["intervals"],
                       "ok" if same else "CHANGED"))
                if move in ("isotopy", "merge_permutations",
                            "absorb_transposition", "cancel_cup_cap"):
                    break  # side is irrelevant for these
    return EXIT_OK if ok else EXIT_FAILED


def build_parser():
    ap = argparse.ArgumentParser(
        prog="bordcalc",
        description="term rewriting and evaluation for 2D bordism "
                    "presentations")
    ap.add_argument("--format", choices=("text", "lines"), default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="validate a 2-cell term file")
    c.add_argument("file")
    c.add_argument("--presentation", default="unoriented",
                   choices=("unoriented", "oriented"))
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("eval", help="evaluate a term into an algebra")
    c.add_argument("file")
    c.add_argument("--algebra", required=True)
    c.add_argument("--presentation", default="oriented",
                   choices=("unoriented", "oriented"))
    c.set_defaults(func=cmd_eval)

    c = sub.add_parser("invariants", help="surface invariants of a term")
    c.add_argument("file")
    c.add_argument("--presentation", default="unoriented",
                   choices=("unoriented", "oriented"))
    c.set_defaults(func=cmd_invariants)

    c = sub.add_parser("rewrite", help="bounded search between two terms")
    c.add_argument("file")
    c.add_argument("--to", required=True)
    c.add_argument("--depth", type=int, default=6)
    c.add_argument("--max-visited", type=int, default=100000)
    c.add_argument("--presentation", default="unoriented",
                   choices=("unoriented", "oriented"))
    c.set_defaults(func=cmd_rewrite)

    c = sub.add_parser("verify", help="check all relations in an algebra")
    c.add_argument("--algebra", required=True)
    c.add_argument("--presentation", default="oriented",
                   choices=("unoriented", "oriented"))
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("presentation", help="dump a presentation manifest")
    c.add_argument("--dump", required=True,
                   choices=("unoriented", "oriented"))
    c.set_defaults(func=cmd_presentation)

    c = sub.add_parser("linear", help="linear diagram census and moves")
    c.add_argument("file")
    c.add_argument("--moves", action="store_true")
    c.set_defaults(func=cmd_linear)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    lines = []
    code = args.func(args, lines.append)
    if args.format == "lines":
        lines = ["%s\t%s" % (args.command, line) for line in lines]
    text = "\n".join(lines)
    if text:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
