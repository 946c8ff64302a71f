"""Command-line entry point.

    switchless sweep --config sweep.ini [--jobs N] [--seed U64] [--output PATH]
    switchless selftest [--seed U64]
    switchless prep-success --config prep.ini [--output PATH]
    switchless version

Exit codes: 0 ok, 1 selftest failure, 2 config error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys

from . import __version__
from .config import ConfigError, load_prep, load_sweep

EXIT_OK, EXIT_SELFTEST, EXIT_CONFIG, EXIT_IO = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_CONFIG)


def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _jobs(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("--jobs must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="switchless", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sw = sub.add_parser("sweep", help="evaluate p_fail over a squeezing grid")
    sw.add_argument("--config", required=True)
    sw.add_argument("--jobs", type=_jobs, default=os.cpu_count() or 1)
    sw.add_argument("--seed", type=_seed, default=None)
    sw.add_argument("--output", default=None)

    st = sub.add_parser("selftest", help="run oracle-vs-analytic checks")
    st.add_argument("--config", default=None, help="optional sweep config supplying the seed")
    st.add_argument("--seed", type=_seed, default=None)
    st.add_argument("--jobs", type=_jobs, default=1, help=argparse.SUPPRESS)
    st.add_argument("--perturb-gamma-b", type=float, default=0.0, help=argparse.SUPPRESS)

    pr = sub.add_parser("prep-success", help="GKP Bell-pair preparation success table")
    pr.add_argument("--config", required=True)
    pr.add_argument("--output", default=None)
    pr.add_argument("--jobs", type=_jobs, default=1, help=argparse.SUPPRESS)
    pr.add_argument("--seed", type=_seed, default=None, help=argparse.SUPPRESS)

    sub.add_parser("version", help="print the tool version")
    return parser


def _write(text: str, path: str | None) -> int:
    if path is None or path == "-":
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {path}: {exc.strerror}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _cmd_sweep(args) -> int:
    from .sweep import render_sweep, run_grid

    cfg = load_sweep(args.config)
    if args.seed is not None:
        cfg = dataclasses.replace(cfg, seed=args.seed)
    rows = run_grid(cfg, jobs=args.jobs)
    return _write(render_sweep(cfg, rows), args.output or cfg.output)


def _cmd_selftest(args) -> int:
    from .selftest import report, run_checks

    seed = 0
    if args.config:
        seed = load_sweep(args.config).seed
    if args.seed is not None:
        seed = args.seed
    results = run_checks(seed=seed, perturb_gamma_b=args.perturb_gamma_b)
    return EXIT_OK if report(results) else EXIT_SELFTEST


def _cmd_prep(args) -> int:
    from .sweep import prep_rows, render_prep

    cfg = load_prep(args.config)
    return _write(render_prep(cfg, prep_rows(cfg)), args.output or cfg.output)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "version":
        print(f"switchless {__version__}")
        return EXIT_OK
    handler = {"sweep": _cmd_sweep, "selftest": _cmd_selftest, "prep-success": _cmd_prep}[args.command]
    try:
        return handler(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
