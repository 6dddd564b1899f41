"""bgraph command line: analyze, verify, table1, dot."""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import re
import sys

from . import report
from .bigraph import FAMILIES, default_workers
from .errors import BGraphError
from .groups import DEFAULT_CAP

EXIT_MISMATCH = 4


def _primes_arg(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+))?\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected a..b or a single prime, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # flags are accepted before or after the subcommand
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--cap", type=int, default=d(DEFAULT_CAP), help="largest group order accepted (default 512)")
    parser.add_argument("--threads", type=int, default=d(None), help="worker processes for the pair scan (default: all cores)")
    parser.add_argument("--out", default=d("-"), help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bgraph", description="Bipartite generation graph B(G) of a finite group.")
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full JSON report for one group")
    p.add_argument("--group", required=True, help="group spec, e.g. D:12 or X(Z:2,S:3)")
    p.add_argument("--with-gen-graph", action="store_true", help="include generating-graph edge counts")
    _global_flags(p, suppress=True)

    p = sub.add_parser("verify", help="check a family's closed-form star forest over a prime range (JSON lines)")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--primes", required=True, type=_primes_arg, help="inclusive range a..b")
    _global_flags(p, suppress=True)

    p = sub.add_parser("table1", help="recompute the seven-group probability table as CSV")
    _global_flags(p, suppress=True)

    p = sub.add_parser("dot", help="Graphviz export of B(G)")
    p.add_argument("--group", required=True)
    p.add_argument("--mode", choices=("full", "collapsed"), default="full")
    _global_flags(p, suppress=True)
    return parser


@contextlib.contextmanager
def _sink(path: str):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _run(args: argparse.Namespace, out) -> int:
    workers = args.threads or default_workers()
    if args.command == "analyze":
        data = report.analyze(args.group, args.cap, workers, args.with_gen_graph)
        out.write(json.dumps(data, indent=2) + "\n")
        return 0
    if args.command == "verify":
        lo, hi = args.primes
        status = 0
        for p in report.primes_between(lo, hi):
            cert = report.certificate(args.family, p, args.cap, workers)
            out.write(json.dumps(cert) + "\n")
            if cert["verdict"] != "pass":
                status = EXIT_MISMATCH
        return status
    if args.command == "table1":
        rows, mismatches = report.table1(workers)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(report.TABLE1_HEADER)
        writer.writerows(rows)
        out.write(buf.getvalue())
        for line in mismatches:
            print(f"mismatch: {line}", file=sys.stderr)
        return EXIT_MISMATCH if mismatches else 0
    if args.command == "dot":
        out.write(report.dot(args.group, args.mode, args.cap, workers))
        return 0
    raise AssertionError(args.command)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with _sink(args.out) as out:
            return _run(args, out)
    except BGraphError as exc:
        print(f"bgraph: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
