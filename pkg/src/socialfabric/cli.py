"""Command-line entry point: ``socialfabric <command> [options]``."""

import argparse
import logging
import sys

from ._validation import ValidationError
from .config import default_config, load_config
from .plotting import emit_plot
from .runner import run_scenario

COMMANDS = ("simulate", "sweep", "percolation", "household", "cross-community", "classify-spreading")

EXIT_OK, EXIT_VALIDATION, EXIT_IO = 0, 2, 3


def build_parser():
    parser = argparse.ArgumentParser(prog="socialfabric", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="flat key = value scenario file")
    common.add_argument("--seed", type=int, metavar="U64", help="master seed (overrides the config)")
    common.add_argument("--threads", type=int, metavar="N", help="worker threads; results do not depend on it")
    common.add_argument("--out", metavar="DIR", help="output directory (overrides output_dir)")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=f"run the {name} scenario")
    plot = sub.add_parser("plot", parents=[common], help="render a result CSV as an SVG line chart")
    plot.add_argument("csv", help="input CSV")
    plot.add_argument("--x", required=True, help="x column")
    plot.add_argument("--y", required=True, help="comma-separated y columns")
    plot.add_argument("--output", "-o", help="SVG path (default: CSV path with .svg)")
    return parser


def _config(args):
    overrides = {"master_seed": args.seed, "threads": args.threads, "output_dir": args.out}
    if args.seed is not None and not 0 <= args.seed < 2**64:
        raise ValidationError("--seed must fit in an unsigned 64-bit integer")
    if args.threads is not None and args.threads < 1:
        raise ValidationError("--threads must be at least 1")
    if args.config:
        return load_config(args.config, overrides)
    changes = {k: v for k, v in overrides.items() if v is not None}
    return default_config(**changes)


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        if args.command == "plot":
            out = args.output or str(args.csv).rsplit(".", 1)[0] + ".svg"
            print(emit_plot(args.csv, args.x, args.y, out))
        else:
            print(run_scenario(_config(args), args.command))
    except ValueError as exc:
        # ValidationError and DomainError are both ValueErrors
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
