"""Command-line harness: simulate, sweep, analyze, validate.

Exit codes: 0 success, 2 configuration error, 3 validation failure.
"""

import argparse
import os
import sys

from . import harness, validation
from .harness import ConfigError, SystemConfig

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_VALIDATION = 3


def _parse_values(text: str) -> list:
    try:
        return [int(v) for v in text.split(",") if v.strip() != ""]
    except ValueError as exc:
        raise ConfigError(f"values must be comma-separated integers: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ris-downlink",
        description="Monte Carlo simulator for a multiuser downlink assisted "
                    "by a phase-quantized reflecting surface.")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run the Monte Carlo study for one config")
    sim.add_argument("--config", required=True, help="JSON config path")
    sim.add_argument("--out", required=True, help="output CSV path")
    sim.add_argument("--dump-schedules", metavar="DIR", default=None,
                     help="also write each run's reflection schedule as CSV")

    swp = sub.add_parser("sweep", help="repeat the study along one axis")
    swp.add_argument("--config", required=True)
    swp.add_argument("--axis", required=True, choices=("users", "atoms"))
    swp.add_argument("--values", required=True,
                     help="comma-separated ascending values, e.g. 4,8,16,32")
    swp.add_argument("--out", required=True)

    ana = sub.add_parser("analyze", help="analytical oracle table (homogeneous LoS)")
    ana.add_argument("--config", required=True)
    ana.add_argument("--out", required=True)
    ana.add_argument("--users", default=None, help="comma-separated K values")
    ana.add_argument("--atoms", default=None, help="comma-separated Q values")

    sub.add_parser("validate", help="run the oracle/property self-checks")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "simulate":
            config = SystemConfig.from_json(args.config)
            if args.dump_schedules is not None:
                os.makedirs(args.dump_schedules, exist_ok=True)
            records = harness.run_monte_carlo(config, dump_schedule_dir=args.dump_schedules)
            harness.write_records_csv(records, args.out, config=config)
            print(f"wrote {len(records)} records to {args.out}")
            return EXIT_OK

        if args.command == "sweep":
            config = SystemConfig.from_json(args.config)
            values = _parse_values(args.values)
            rows = harness.sweep(config, args.axis, values)
            harness.write_sweep_csv(rows, args.out, config=config)
            print(f"wrote {len(rows)} aggregate rows to {args.out}")
            return EXIT_OK

        if args.command == "analyze":
            config = SystemConfig.from_json(args.config)
            users = _parse_values(args.users) if args.users else None
            atoms = _parse_values(args.atoms) if args.atoms else None
            rows = harness.analyze_table(config, users, atoms)
            harness.write_analyze_csv(rows, args.out)
            print(f"wrote {len(rows)} analysis rows to {args.out}")
            return EXIT_OK

        if args.command == "validate":
            return EXIT_OK if validation.run_all() else EXIT_VALIDATION

    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
