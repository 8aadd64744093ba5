"""Command-line front end.

Verbs:
  sweep             run a fidelity sweep from a config file -> CSV + manifest
  trajectory        dump the clean/noisy control-sphere loop -> CSV
  compare-dynamical paired holonomic/dynamical sweep -> CSV
  ideal-gate        print the analytic / path-ordered / evolved gate table
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

import numpy as np

from .experiments import (SweepConfig, compare_dynamical, dump_loop_trajectory,
                          ideal_gate_report, run_sweep, save_sweep,
                          write_compare_csv, write_trajectory_csv)
from .noise import ConfigError, NoiseSpec, sample_trajectory, trajectory_to_csv


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", required=True, type=Path,
                        help="TOML config file (flat key/value)")
    parser.add_argument("--seed", type=int, default=None,
                        help="override the config's base seed")
    parser.add_argument("--out", type=Path, default=Path("."),
                        help="output directory")
    parser.add_argument("--threads", type=int, default=1,
                        help="parallel worker processes (results identical)")


def _load_config(args) -> SweepConfig:
    config = SweepConfig.from_file(args.config)
    if args.seed is not None:
        config = dataclasses.replace(config, seed=args.seed)
    return config


def _cmd_sweep(args) -> int:
    config = _load_config(args)
    result = run_sweep(config, workers=args.threads, progress=True)
    stem = args.stem or f"{config.gate.value}_{config.channel.value}_sweep"
    csv_path, manifest_path = save_sweep(result, args.out, stem=stem)
    print(f"wrote {csv_path} and {manifest_path} "
          f"({result.wall_time_s:.1f} s)")
    return 0


def _cmd_trajectory(args) -> int:
    config = _load_config(args)
    schedule = config.schedule()
    n_r = args.n_r or config.n_r_values[0]
    spec = NoiseSpec.from_extractions(config.channel, config.sigma, n_r,
                                      schedule.t_ad, config.seed)
    rows = dump_loop_trajectory(schedule, spec, args.samples_per_interval)
    args.out.mkdir(parents=True, exist_ok=True)
    path = write_trajectory_csv(rows, args.out / f"trajectory_nr{n_r}.csv")
    print(f"wrote {path}")
    if args.noise_csv:
        noise_path = trajectory_to_csv(sample_trajectory(spec, schedule.omega),
                                       args.out / f"noise_nr{n_r}.csv")
        print(f"wrote {noise_path}")
    return 0


def _cmd_compare(args) -> int:
    config = _load_config(args)
    rows = compare_dynamical(config, sigma=args.sigma, workers=args.threads)
    args.out.mkdir(parents=True, exist_ok=True)
    path = write_compare_csv(rows, args.out / "compare_dynamical.csv")
    print(f"wrote {path}")
    return 0


def _cmd_ideal_gate(args) -> int:
    config = _load_config(args)
    schedule = config.schedule()
    report = ideal_gate_report(schedule, n_points=args.n_points)
    np.set_printoptions(precision=6, suppress=True)
    print(f"gate: {config.gate.value}   geometric phase: {report['geom_phase']:.9f} rad")
    print("\nanalytic logical unitary:")
    print(report["analytic"])
    print("\npath-ordered holonomy "
          f"(max deviation {report['wz_vs_analytic_max']:.3e}):")
    print(report["wilczek_zee"])
    print("\nevolved logical block "
          f"(unitarity defect {report['unitarity_defect']:.3e}):")
    print(report["evolved_logical_block"])
    print("\nper-basis-state overlaps vs analytic:")
    print(f"  path-ordered: {report['wz_overlaps'][0]:.6f}  {report['wz_overlaps'][1]:.6f}")
    print(f"  evolved:      {report['evolved_overlaps'][0]:.6f}  "
          f"{report['evolved_overlaps'][1]:.6f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="holonoise",
        description="Holonomic quantum gates under piecewise-constant control noise")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="fidelity sweep -> CSV + manifest")
    _add_common(p)
    p.add_argument("--stem", default=None, help="output file stem")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("trajectory", help="control-sphere loop dump -> CSV")
    _add_common(p)
    p.add_argument("--n-r", type=int, default=None,
                   help="extraction count (default: first config entry)")
    p.add_argument("--samples-per-interval", type=int, default=64)
    p.add_argument("--noise-csv", action="store_true",
                   help="also dump the raw noise trajectory for audit")
    p.set_defaults(func=_cmd_trajectory)

    p = sub.add_parser("compare-dynamical",
                       help="holonomic vs dynamical gate at shared noise time")
    _add_common(p)
    p.add_argument("--sigma", type=float, default=None,
                   help="override the config's noise strength")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("ideal-gate",
                       help="analytic vs path-ordered vs evolved gate table")
    _add_common(p)
    p.add_argument("--n-points", type=int, default=10_000)
    p.set_defaults(func=_cmd_ideal_gate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
