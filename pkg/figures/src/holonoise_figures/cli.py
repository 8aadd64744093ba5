"""Command line: `holonoise-figures render --figure <id> --in <csv...> --out <path>`."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .render import SUPPORTED_FIGURES, FigureSpec, render_figure
from .schema import SchemaError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="holonoise-figures",
        description="Render study figures from simulation CSV outputs")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("render", help="render one figure")
    p.add_argument("--figure", required=True, choices=SUPPORTED_FIGURES)
    p.add_argument("--in", dest="inputs", required=True, nargs="+", type=Path,
                   help="input CSV file(s)")
    p.add_argument("--out", required=True, type=Path,
                   help="output image (extension picks the format; "
                        "vector formats like .svg/.pdf preferred)")
    p.add_argument("--label", action="append", default=[],
                   help="legend label per input (repeatable)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    spec = FigureSpec(figure_id=args.figure,
                      input_csvs=tuple(args.inputs),
                      output_path=args.out,
                      labels=tuple(args.label))
    try:
        result = render_figure(spec)
    except (SchemaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {result.output_path} "
          f"(series sha256 {result.series_checksum[:12]}...)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
