"""Command line entry: render one scenario figure from an experiment CSV.

Exit codes: 0 ok, 1 bad input (unreadable file, schema violation, unknown
scenario, or a CSV that does not contain the requested scenario).
"""

from __future__ import annotations

import argparse
import sys

from .render import render_csv
from .schema import SchemaError


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot",
        description="Render an experiment CSV into its scenario figure (SVG + PNG).",
    )
    parser.add_argument("--csv", required=True, help="input CSV path")
    parser.add_argument("--scenario", required=True, help="scenario name, fig0..fig9")
    parser.add_argument("--out", required=True, help="output directory")
    args = parser.parse_args(argv)

    try:
        summary = render_csv(args.csv, args.scenario, args.out)
    except OSError as exc:
        print(f"cannot read {args.csv}: {exc.strerror or exc}", file=sys.stderr)
        return 1
    except (SchemaError, ValueError) as exc:
        print(str(exc), file=sys.stderr)
        return 1

    svg, png = summary.images
    print(
        f"{summary.scenario}: wrote {svg} and {png} "
        f"({len(summary.series)} series, {sum(summary.series.values())} points, "
        f"{summary.rows_skipped} rows skipped)"
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
