"""Command line entry point: one figure per invocation."""
from __future__ import annotations

import argparse
import sys

from .figures import render
from .schema import FIGURE_INPUTS, FigureSpec, SchemaMismatch


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="figscripts",
        description="Render one figure from result CSV files.",
    )
    parser.add_argument("--figure", required=True,
                        choices=sorted(FIGURE_INPUTS),
                        help="which figure to draw")
    parser.add_argument("--in", dest="inputs", nargs="+", required=True,
                        metavar="CSV",
                        help="input CSV files, in the figure's declared order")
    parser.add_argument("--out", required=True, metavar="PNG",
                        help="output image path")
    return parser


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        render(FigureSpec(args.figure, tuple(args.inputs), args.out))
    except SchemaMismatch as exc:
        print(f"figscripts: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"figscripts: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
