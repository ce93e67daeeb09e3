"""Command line: ``magstab-plot <figure-name> --in sweep.csv --out figure.png``."""

from __future__ import annotations

import argparse
import sys

from .figures import FIGURES, FigureConfigError, render, spec_for


def run(argv: list[str]) -> int:
    parser = argparse.ArgumentParser(
        prog="magstab-plot",
        description="Render a magstab sweep CSV as a parameter-study figure.")
    parser.add_argument("figure", metavar="figure-name",
                        help=f"one of {', '.join(sorted(FIGURES))}")
    parser.add_argument("--in", dest="csv_path", required=True,
                        help="sweep CSV written by the solver")
    parser.add_argument("--out", dest="out_path", required=True,
                        help="image file to write (format from the extension)")
    ns = parser.parse_args(argv)
    try:
        result = render(spec_for(ns.figure), ns.csv_path, ns.out_path)
    except (FigureConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {result.path}: {len(result.series)} series, "
          f"{result.n_points_drawn} points")
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
