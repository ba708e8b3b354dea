"""Command line entry points: plot-ecdf and plot-diag.

Exit codes: 0 success, 2 bad inputs, 1 runtime error.
"""

import argparse
import sys

from .figures import FORMATS, plot_diagnostics, plot_ecdf
from .io import ParseError


def _run(fn):
    try:
        out = fn()
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"runtime error: {exc}", file=sys.stderr)
        return 1
    print(out)
    return 0


def main_ecdf(argv=None):
    parser = argparse.ArgumentParser(
        prog="plot-ecdf",
        description="Render proportion-of-targets curves from ECDF CSV files.")
    parser.add_argument("--in", dest="inputs", nargs="+", required=True,
                        help="one or more ECDF curve files")
    parser.add_argument("--labels", default=None,
                        help="comma-separated legend labels, one per file")
    parser.add_argument("--out", required=True)
    parser.add_argument("--format", default="png", choices=FORMATS)
    parser.add_argument("--normalize-dim", type=int, default=None,
                        help="divide the evaluation axis by this dimension")
    args = parser.parse_args(argv)
    labels = args.labels.split(",") if args.labels else None
    return _run(lambda: plot_ecdf(args.inputs, args.out, labels=labels,
                                  fmt=args.format, normalize_by=args.normalize_dim))


def main_diag(argv=None):
    parser = argparse.ArgumentParser(
        prog="plot-diag",
        description="Render the four diagnostic panels of one run.")
    parser.add_argument("--in", dest="inputs", nargs=2, required=True,
                        metavar=("RUNLOG", "DIAGFILE"),
                        help="the run log and diagnostics files of one run")
    parser.add_argument("--labels", default=None,
                        help="unused; accepted for interface symmetry")
    parser.add_argument("--out", required=True)
    parser.add_argument("--format", default="png", choices=FORMATS)
    args = parser.parse_args(argv)
    return _run(lambda: plot_diagnostics(args.inputs[0], args.inputs[1],
                                         args.out, fmt=args.format))


if __name__ == "__main__":
    sys.exit(main_ecdf())
