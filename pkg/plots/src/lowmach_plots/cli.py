"""Command line: lowmach-plot <kind> <csv> [--var NAME] [--columns A,B] [--out PATH]."""

import argparse
import sys
from pathlib import Path

from .figures import plot_contour2d, plot_profile1d, plot_timeseries
from .io import FormatError

DEFAULT_COLUMNS = "entropy,kinetic_energy,potential_energy"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="lowmach-plot", description=__doc__)
    parser.add_argument("kind", choices=("timeseries", "profile1d", "contour2d"))
    parser.add_argument("csv", help="a CSV produced by the lowmach CLI")
    parser.add_argument("--var", default=None, help="variable to draw (profile1d/contour2d)")
    parser.add_argument("--columns", default=DEFAULT_COLUMNS,
                        help="comma-separated diagnostics columns (timeseries)")
    parser.add_argument("--out", default=None, help="output image path (default: <csv>.png)")
    args = parser.parse_args(argv)

    out = args.out or str(Path(args.csv).with_suffix(".png"))
    try:
        if args.kind == "timeseries":
            columns = [c for c in args.columns.split(",") if c]
            plot_timeseries(args.csv, columns, out)
        elif args.kind == "profile1d":
            plot_profile1d(args.csv, args.var or "rho", out)
        else:
            plot_contour2d(args.csv, args.var or "rho", out)
    except (FormatError, OSError) as err:
        print(f"lowmach-plot: {err}", file=sys.stderr)
        return 1
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
