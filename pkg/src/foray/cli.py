"""Command-line front end: analyze / synth / check.

Exit codes: 0 success, 1 analysis or validation failure, 2 I/O or trace
format error.  Diagnostics go to stderr; artifacts to stdout or --out.
Set FORAY_LOG=debug|info|warning for logging verbosity.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import Optional

from .emit import emit_c, emit_report
from .model import FilterConfig, analyze
from .synth import (WorkloadError, diff_model, expected_results, generate_trace,
                    load_workload)
from .trace import TraceError, open_trace_stream, write_trace

log = logging.getLogger("foray.cli")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_FORMAT = 2


def _add_filter_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--nexec", type=int, default=20,
                        help="minimum executions for a reference to survive (default 20)")
    parser.add_argument("--nloc", type=int, default=10,
                        help="minimum distinct addresses to survive (default 10)")


def _filter_config(args) -> FilterConfig:
    return FilterConfig(n_exec=args.nexec, n_loc=args.nloc)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="foray",
        description="Reconstruct loop nests and affine index expressions from "
                    "a memory access trace.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze a trace file into a FORAY model")
    p.add_argument("--trace", required=True,
                   help="trace file path, or '-' for standard input")
    p.add_argument("--emit", choices=("c", "report", "both"), default="c")
    p.add_argument("--out", help="output path prefix (default: stdout)")
    p.add_argument("--stats", action="store_true",
                   help="print summary statistics to stderr")
    _add_filter_flags(p)

    p = sub.add_parser("synth", help="generate a trace from a workload spec")
    p.add_argument("--spec", required=True, help="workload spec (JSON)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="-", help="trace output path ('-' for stdout)")

    p = sub.add_parser("check", help="synth + analyze + compare against ground truth")
    p.add_argument("--spec", required=True, help="workload spec (JSON)")
    p.add_argument("--seed", type=int, default=0)
    _add_filter_flags(p)

    return parser


def cmd_analyze(args) -> int:
    if args.trace == "-":
        source = sys.stdin
        close = None
    else:
        try:
            close = source = open(args.trace, "r", encoding="utf-8")
        except OSError as exc:
            print(f"foray: cannot open trace: {exc}", file=sys.stderr)
            return EXIT_FORMAT
    stream = open_trace_stream(source)
    try:
        model = analyze(stream, _filter_config(args))
    except TraceError as exc:
        if exc.line is None:
            exc.line = stream.line
        print(f"foray: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    finally:
        if close is not None:
            close.close()

    artifacts = []
    if args.emit in ("c", "both"):
        artifacts.append((".c", emit_c(model)))
    if args.emit in ("report", "both"):
        artifacts.append((".report.json", emit_report(model)))
    if args.out:
        for suffix, text in artifacts:
            path = args.out + suffix
            with open(path, "w", encoding="utf-8") as fp:
                fp.write(text)
            log.info("wrote %s", path)
    else:
        for _, text in artifacts:
            sys.stdout.write(text)
    if args.stats:
        _print_stats(model)
    return EXIT_OK


def _print_stats(model) -> None:
    s = model.stats
    print(f"loops: {s.loop_count}", file=sys.stderr)
    cats = ", ".join(f"{name} {c.references}" for name, c in s.categories.items())
    print(f"references: {s.total_references} ({cats})", file=sys.stderr)
    print(f"accesses: {s.total_accesses}  footprint: {s.total_footprint}",
          file=sys.stderr)
    print(f"inlining hints: {len(model.hints)}", file=sys.stderr)


def cmd_synth(args) -> int:
    try:
        spec = load_workload(args.spec)
    except OSError as exc:
        print(f"foray: cannot open spec: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except WorkloadError as exc:
        for err in exc.errors:
            print(f"foray: spec: {err}", file=sys.stderr)
        return EXIT_FAILURE
    records = generate_trace(spec, args.seed)
    if args.out == "-":
        write_trace(records, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8") as fp:
            n = write_trace(records, fp)
        log.info("wrote %d records to %s", n, args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    try:
        spec = load_workload(args.spec)
    except OSError as exc:
        print(f"foray: cannot open spec: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except WorkloadError as exc:
        for err in exc.errors:
            print(f"foray: spec: {err}", file=sys.stderr)
        return EXIT_FAILURE
    cfg = _filter_config(args)
    model = analyze(generate_trace(spec, args.seed), cfg)
    mismatches = diff_model(model, expected_results(spec, args.seed, cfg))
    if mismatches:
        for msg in mismatches:
            print(f"MISMATCH {msg}", file=sys.stderr)
        print(f"foray: {len(mismatches)} mismatch(es)", file=sys.stderr)
        return EXIT_FAILURE
    print(f"check: all {len(expected_results(spec, args.seed, cfg))} references match",
          file=sys.stderr)
    return EXIT_OK


def main(argv: Optional[list] = None) -> int:
    level = os.environ.get("FORAY_LOG", "warning").upper()
    logging.basicConfig(stream=sys.stderr,
                        level=getattr(logging, level, logging.WARNING),
                        format="foray %(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    handler = {"analyze": cmd_analyze, "synth": cmd_synth, "check": cmd_check}
    return handler[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
