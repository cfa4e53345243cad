"""Command-line entry point.

Exit status: 0 success or confirmation, 1 verification failure or refutation,
2 usage error, 3 inconclusive (budget or trials exhausted).

Text output is one ``key: value`` record per line in a fixed order; ``--json``
prints the same fields as a single JSON object per record.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(args, text: str, record: dict):
    if args.json:
        print(json.dumps(record))
    else:
        print(text)


def _read_graph(path: str):
    from .graph_core import decode_graph6

    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return decode_graph6(data)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _write_graph(path: str, g):
    from .graph_core import encode_graph6

    Path(path).write_bytes(encode_graph6(g) + b"\n")


def cmd_construct(args) -> int:
    from .constructions import build

    try:
        res = build(args.family, args.q, args.t)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.out:
        _write_graph(args.out, res.graph)
        Path(args.out + ".manifest").write_text(res.manifest())
    record = {
        "family": res.family, "q": res.q, "t": res.t, "order": res.order, "n": res.target_book,
        "certified": f"r(C4,B{res.target_book}) >= {res.certified_lower}",
        "verdict": "valid" if res.report.valid else "invalid",
    }
    _emit(args, res.manifest().rstrip("\n"), record)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .witness import verify_witness

    if args.book < 1:
        raise UsageError("--book must be >= 1")
    rep = verify_witness(_read_graph(args.infile), args.book)
    _emit(args, rep.to_text(), rep.to_dict())
    return EXIT_OK if rep.valid else EXIT_FAIL


def cmd_audit(args) -> int:
    from .structure_audit import audit_er_structure, audit_graph

    if (args.q is None) == (args.infile is None):
        raise UsageError("give exactly one of --q or --in")
    if args.q is not None:
        try:
            rep = audit_er_structure(args.q)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    else:
        try:
            rep = audit_graph(_read_graph(args.infile), subject=args.infile)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    _emit(args, rep.to_text(), rep.to_dict())
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_bounds(args) -> int:
    from .bounds import best_known

    if args.n < 1:
        raise UsageError("--n must be >= 1")
    rec = best_known(args.n)
    _emit(args, rec.to_text() + "\n" + rec.machine_line(), rec.to_dict())
    return EXIT_OK


def cmd_search(args) -> int:
    from .exhaustive import verify_exact
    from .graph_core import decode_graph6

    try:
        out = verify_exact(args.n, args.claim, budget_seconds=args.budget_seconds,
                           budget_graphs=args.budget_graphs, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.out and out.witness:
        _write_graph(args.out, decode_graph6(out.witness))
    _emit(args, out.to_text(), out.to_dict())
    return {"confirmed": EXIT_OK, "refuted": EXIT_FAIL}.get(out.status, EXIT_INCONCLUSIVE)


def cmd_random_lower(args) -> int:
    from .random_deletion import PrimeGapViolation, TrialsExhausted, VacuousParameters, retry_until_witness

    try:
        rep = retry_until_witness(args.n, args.trials, seed=args.seed)
    except VacuousParameters as exc:
        raise UsageError(str(exc)) from exc
    except PrimeGapViolation as exc:
        _emit(args, f"n: {args.n}\nstatus: inconclusive ({exc})",
              {"n": args.n, "status": "inconclusive", "detail": str(exc)})
        return EXIT_INCONCLUSIVE
    except TrialsExhausted as exc:
        last = exc.reports[-1]
        _emit(args, last.to_text() + f"\nstatus: inconclusive ({exc})", last.to_dict() | {"status": "inconclusive"})
        return EXIT_INCONCLUSIVE
    if args.out:
        if rep.graph is None:
            raise UsageError("the survivor graph is too large to export")
        _write_graph(args.out, rep.graph)
    _emit(args, rep.to_text(), rep.to_dict())
    return EXIT_OK if rep.certified else EXIT_FAIL


def cmd_reproduce(args) -> int:
    from .reproduce import run_all

    ok = True
    for row in run_all(quick=args.quick, include_search_n3=args.include_search_n3,
                       oracle_instances_count=args.oracle_instances):
        ok &= row.ok
        record = {"status": "pass" if row.ok else "fail", "key": row.key, "claim": row.claim,
                  "elapsed": round(row.elapsed, 3), "limit": row.limit, "detail": row.detail}
        _emit(args, row.line(), record)
        sys.stdout.flush()
    return EXIT_OK if ok else EXIT_FAIL


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="c4books", description="Witnesses, bounds and exact values for r(C4, B_n).")
    parser.add_argument("--json", action="store_true", help="emit JSON records")
    # accepted after the subcommand too; SUPPRESS keeps a global --json from being reset
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit JSON records")

    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("construct", parents=[common], help="build an H or G witness graph")
    p.add_argument("--family", required=True, choices=["H", "G", "h", "g"])
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--out", help="write graph6 here and a manifest to OUT.manifest")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="certify a graph6 witness")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--book", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("audit", parents=[common], help="structure audit of ER_q or a C4-free graph")
    p.add_argument("--q", type=int)
    p.add_argument("--in", dest="infile")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("bounds", parents=[common], help="best known bounds on r(C4,B_n)")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("search", parents=[common], help="exhaustively confirm r(C4,B_n) = R")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--claim", type=int, required=True)
    p.add_argument("--budget-seconds", type=float)
    p.add_argument("--budget-graphs", type=int)
    p.add_argument("--seed", type=int, default=0, help="audit sample seed")
    p.add_argument("--out", help="write the witness as graph6")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("random-lower", parents=[common], help="random-deletion lower-bound certificate")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--out", help="write the certificate graph as graph6")
    p.set_defaults(func=cmd_random_lower)

    p = sub.add_parser("reproduce", parents=[common], help="run every reproduction row")
    p.add_argument("--quick", action="store_true", help="skip the randomized rows")
    p.add_argument("--include-search-n3", action="store_true", help="add the exhaustive n=3 row")
    p.add_argument("--oracle-instances", type=int, default=100_000)
    p.set_defaults(func=cmd_reproduce)
    return parser


def parse_and_run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None) -> int:
    return parse_and_run(argv)


if __name__ == "__main__":
    sys.exit(main())
