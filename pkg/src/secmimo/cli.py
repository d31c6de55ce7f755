"""Command-line entry point: run catalog scenarios, list them, check configs."""

from __future__ import annotations

import argparse
import sys

from . import scenarios
from .config import ConfigError, InfeasibleError, NumericalError, validate_config_text

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_INFEASIBLE = 2
EXIT_NUMERICAL = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="secmimo",
        description="Secure multi-cell massive MIMO downlink: sweeps and closed forms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a catalog scenario and write its CSV")
    run.add_argument("--scenario", required=True, help="catalog name, e.g. fig3")
    run.add_argument("--out", required=True, help="output CSV path")
    run.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    run.add_argument(
        "--realizations", type=int, default=None,
        help="Monte Carlo realizations per run (default: scenario-specific)",
    )
    run.add_argument("--nt", type=int, default=None, help="cap on the antenna count")
    run.add_argument("--jobs", type=int, default=1, help="parallel sweep cells")
    run.add_argument(
        "--no-header-timestamp", action="store_true",
        help="omit the generated-at comment line for byte-stable output",
    )

    sub.add_parser("list", help="list the scenario catalog")

    validate = sub.add_parser("validate", help="check a config file, report violations")
    validate.add_argument("--config", required=True, help="path to a key=value file")
    return parser


def _cmd_run(args) -> int:
    sc = scenarios.build_scenario(
        args.scenario, nt=args.nt, realizations=args.realizations, seed=args.seed
    )
    rows = scenarios.run_scenario(sc, jobs=args.jobs)
    scenarios.write_csv(rows, args.out, include_timestamp=not args.no_header_timestamp)
    skipped = sum(1 for row in rows if row["status"] != "OK")
    note = f" ({skipped} skipped)" if skipped else ""
    print(f"{sc.name}: wrote {len(rows)} rows{note} to {args.out}")
    return EXIT_OK


def _cmd_list() -> int:
    for name, description in scenarios.list_scenarios():
        print(f"{name}  {description}")
    return EXIT_OK


def _cmd_validate(path: str) -> int:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"cannot read config {path}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    diagnostics = validate_config_text(text)
    for diag in diagnostics:
        print(f"{path}:{diag.line}: {diag.message}")
    if diagnostics:
        return EXIT_CONFIG
    print(f"{path}: ok")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help; everything else is a usage/config error
        return EXIT_OK if not exc.code else EXIT_CONFIG
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "list":
            return _cmd_list()
        return _cmd_validate(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InfeasibleError as exc:
        print(f"infeasible scenario: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
