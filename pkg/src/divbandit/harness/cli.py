"""Command-line entry point: ``divbandit run | sweep | report``."""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace

from ..errors import ConfigurationError
from .config import load_config
from .report import FORMATS, emit_report, report
from .sweep import records_stats, run_repetitions, sweep


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of numbers: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="divbandit",
                                     description="Diversity-driven selection of exploration strategies.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="repeat the configured selector")
    run.add_argument("--config", required=True)
    run.add_argument("--seed", type=int, help="override master_seed")
    run.add_argument("--reps", type=int, help="override repetitions")
    run.add_argument("--out", default="out")
    run.add_argument("--format", choices=FORMATS, default="csv")

    sw = sub.add_parser("sweep", help="ADAPT against fixed mixtures")
    sw.add_argument("--config", required=True)
    sw.add_argument("--d", type=_float_list, help="perturbation ratios, e.g. 0.001,0.05,0.5")
    sw.add_argument("--p-grid", type=_float_list, help="mixture probabilities of motor babbling")
    sw.add_argument("--reps", type=int)
    sw.add_argument("--seed", type=int, help="override master_seed")
    sw.add_argument("--out", default="out")
    sw.add_argument("--format", choices=FORMATS, default="csv")
    sw.add_argument("--workers", type=int, default=1)

    rep = sub.add_parser("report", help="summaries and plot data from a run/sweep directory")
    rep.add_argument("--in", dest="in_dir", required=True)
    rep.add_argument("--out", required=True)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "report":
            written = report(args.in_dir, args.out)
        else:
            config = load_config(args.config)
            if args.seed is not None:
                config = replace(config, master_seed=args.seed)
            if args.reps is not None:
                config = replace(config, repetitions=args.reps)
            if args.command == "run":
                records = run_repetitions(config)
                stats = records_stats(records)
                written = emit_report(stats, args.format, args.out, config, records)
            else:
                stats = sweep(config, p_grid=args.p_grid, d_values=args.d, workers=args.workers)
                written = emit_report(stats, args.format, args.out, config)
    except (ConfigurationError, ValueError, OSError) as exc:
        print(f"divbandit {args.command}: error: {exc}", file=sys.stderr)
        return 2
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
