"""Sweep engine: fidelity-vs-noise-time tables and the figure-level runs.

A sweep evaluates the Monte-Carlo gate fidelity at every requested number
of noise extractions and writes a CSV plus a JSON run manifest (schema
versioned, with the config hash) so downstream plotting never needs to
touch the simulation.  Work units are (extraction count, initial state)
pairs; they may run in parallel processes, and because every unit derives
its own random stream and aggregation is index-ordered, parallel and
serial runs emit byte-identical CSVs.
"""

from __future__ import annotations

import csv
import dataclasses
import hashlib
import json
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:                       # Python 3.10
    import tomli as tomllib

from . import __version__
from .fidelity import (FidelityRecord, StateSample, assemble_record,
                       evaluate_state, gate_fidelity, sample_for)
from .holonomy import ideal_gate, wilczek_zee_holonomy
from .model import (Gate, LoopSchedule, control_field_array, dynamical_pi_pulse,
                    schedule_from_config)
from .noise import ConfigError, NoiseChannel, NoiseSpec, sample_trajectory
from .propagate import propagator

SWEEP_CSV_SCHEMA = "holonoise-sweep/1"
COMPARE_CSV_SCHEMA = "holonoise-compare/1"
TRAJECTORY_CSV_SCHEMA = "holonoise-trajectory/1"

#: dynamical gates are treated as ~100x faster than adiabatic ones when
#: mapping a shared noise time to extraction counts
DYNAMICAL_SPEEDUP = 100


@dataclass(frozen=True)
class SweepConfig:
    """Full description of one fidelity sweep."""

    gate: Gate
    channel: NoiseChannel
    sigma: float
    n_r_values: tuple[int, ...]
    realizations: int = 5
    seed: int = 0
    omega_inv_fs: float | None = 50.0
    t_ad_fs: float | None = 7500.0
    target_angle: float = math.pi / 2
    delta_mev: float | None = None
    omega_single_mev: float | None = None
    n_states: int = 18

    def __post_init__(self):
        if not self.n_r_values:
            raise ConfigError("n_r list must be non-empty")
        if list(self.n_r_values) != sorted(self.n_r_values):
            raise ConfigError("n_r list must be sorted ascending")
        for n in self.n_r_values:
            if int(n) != n or n < 1:
                raise ConfigError(f"n_r entries must be positive integers, got {n}")
        if self.sigma < 0:
            raise ConfigError("sigma must be non-negative")
        if self.realizations < 1:
            raise ConfigError("realizations must be >= 1")
        if not 1 <= self.n_states <= 18:
            raise ConfigError("n_states must lie in 1..18")

    @classmethod
    def from_mapping(cls, mapping: dict) -> "SweepConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(mapping) - known - {"n_r"}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        kwargs = dict(mapping)
        n_r = kwargs.pop("n_r", None)
        if n_r is None:
            raise ConfigError("config requires an n_r list")
        kwargs["n_r_values"] = tuple(int(n) for n in n_r)
        try:
            kwargs["gate"] = Gate(kwargs.get("gate", "mixing"))
            kwargs["channel"] = NoiseChannel(kwargs.get("channel", "intensity"))
            return cls(**kwargs)
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"invalid sweep config: {exc}") from exc

    @classmethod
    def from_file(cls, path: str | Path) -> "SweepConfig":
        with open(path, "rb") as fh:
            try:
                data = tomllib.load(fh)
            except tomllib.TOMLDecodeError as exc:
                raise ConfigError(f"cannot parse config {path}: {exc}") from exc
        return cls.from_mapping(data)

    def to_mapping(self) -> dict:
        out = {
            "gate": self.gate.value,
            "channel": self.channel.value,
            "sigma": self.sigma,
            "n_r": list(self.n_r_values),
            "realizations": self.realizations,
            "seed": self.seed,
            "target_angle": self.target_angle,
            "n_states": self.n_states,
        }
        if self.omega_inv_fs is not None:
            out["omega_inv_fs"] = self.omega_inv_fs
        if self.t_ad_fs is not None:
            out["t_ad_fs"] = self.t_ad_fs
        if self.delta_mev is not None:
            out["delta_mev"] = self.delta_mev
        if self.omega_single_mev is not None:
            out["omega_single_mev"] = self.omega_single_mev
        return out

    def config_hash(self) -> str:
        canonical = json.dumps(self.to_mapping(), sort_keys=True)
        return hashlib.sha256(canonical.encode()).hexdigest()

    def schedule(self) -> LoopSchedule:
        mapping = {"gate": self.gate.value, "target_angle": self.target_angle}
        if self.omega_inv_fs is not None:
            mapping["omega_inv_fs"] = self.omega_inv_fs
        if self.t_ad_fs is not None:
            mapping["t_ad_fs"] = self.t_ad_fs
        if self.delta_mev is not None:
            mapping["delta_mev"] = self.delta_mev
        if self.omega_single_mev is not None:
            mapping["omega_single_mev"] = self.omega_single_mev
        return schedule_from_config(mapping)

    def noise_for(self, n_r: int, schedule: LoopSchedule) -> NoiseSpec:
        return NoiseSpec.from_extractions(self.channel, self.sigma, n_r,
                                          schedule.t_ad, self.seed)


@dataclass(frozen=True)
class SweepResult:
    config: SweepConfig
    records: tuple[FidelityRecord, ...]
    wall_time_s: float
    software_version: str = __version__

    def record_for(self, n_r: int) -> FidelityRecord:
        for rec in self.records:
            if rec.n_extractions == n_r:
                return rec
        raise KeyError(f"no record for n_r={n_r}")


def _truncated_sample(schedule: LoopSchedule, n_states: int) -> StateSample:
    full = sample_for(schedule)
    return StateSample(states=full.states[:n_states])


def _sweep_unit(args):
    schedule, spec, state_index, realizations, n_states = args
    sample = _truncated_sample(schedule, n_states)
    return evaluate_state(schedule, spec, state_index, realizations,
                          sample=sample)


def run_sweep(config: SweepConfig, workers: int = 1,
              progress: bool = False) -> SweepResult:
    """Evaluate the configured sweep; deterministic for a fixed seed."""
    schedule = config.schedule()
    for n_r in config.n_r_values:
        config.noise_for(n_r, schedule).check_matches(schedule.t_ad)
    sample = _truncated_sample(schedule, config.n_states)
    t0 = time.perf_counter()
    records = []
    if workers <= 1:
        for i, n_r in enumerate(config.n_r_values):
            spec = config.noise_for(n_r, schedule)
            records.append(gate_fidelity(schedule, spec, config.realizations,
                                         sample=sample))
            if progress:
                print(f"  [{i + 1}/{len(config.n_r_values)}] n_r={n_r} "
                      f"F={records[-1].mean_fidelity:.4f}", file=sys.stderr)
    else:
        units = [(schedule, config.noise_for(n_r, schedule), s_idx,
                  config.realizations, config.n_states)
                 for n_r in config.n_r_values
                 for s_idx in range(config.n_states)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_unit, units,
                                    chunksize=max(1, len(units) // (4 * workers))))
        done = 0
        for n_r in config.n_r_values:
            chunk = results[done:done + config.n_states]
            done += config.n_states
            spec = config.noise_for(n_r, schedule)
            records.append(assemble_record(spec, config.realizations, chunk))
            if progress:
                print(f"  n_r={n_r} F={records[-1].mean_fidelity:.4f}",
                      file=sys.stderr)
    return SweepResult(config=config, records=tuple(records),
                       wall_time_s=time.perf_counter() - t0)


def sweep_csv_header(n_states: int) -> list[str]:
    return (["n_r", "mean_fidelity", "std_fidelity", "leakage_G", "leakage_E0"]
            + [f"state_{i:02d}" for i in range(n_states)])


def write_sweep_csv(result: SweepResult, path: str | Path) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(sweep_csv_header(result.config.n_states))
        for rec in result.records:
            writer.writerow([rec.n_extractions,
                             repr(rec.mean_fidelity),
                             repr(float(rec.per_state.std())),
                             repr(rec.leakage_g),
                             repr(rec.leakage_e0)]
                            + [repr(float(f)) for f in rec.per_state])
    return path


def write_manifest(result: SweepResult, csv_path: Path,
                   path: str | Path, schema: str = SWEEP_CSV_SCHEMA) -> Path:
    path = Path(path)
    manifest = {
        "schema": schema,
        "csv": csv_path.name,
        "columns": sweep_csv_header(result.config.n_states),
        "config": result.config.to_mapping(),
        "config_hash": result.config.config_hash(),
        "software_version": result.software_version,
        "wall_time_s": result.wall_time_s,
        "seed_derivation": "SeedSequence(seed, spawn_key=(state, realization))",
    }
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path


def save_sweep(result: SweepResult, out_dir: str | Path,
               stem: str = "sweep") -> tuple[Path, Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = write_sweep_csv(result, out_dir / f"{stem}.csv")
    manifest_path = write_manifest(result, csv_path,
                                   out_dir / f"{stem}.manifest.json")
    return csv_path, manifest_path


def dump_loop_trajectory(schedule: LoopSchedule, noise: NoiseSpec | None,
                         samples_per_interval: int = 64) -> list[dict]:
    """Clean and noisy control-space trajectories, radius normalized to 1.

    Coordinates follow the control-sphere convention (x, y, z) =
    (Re omega_-, Re omega_+, Re omega_0) / omega; rows sample interval
    midpoints so each noise plateau is visible.
    """
    intervals = noise.extractions if noise is not None else 1
    if noise is not None:
        noise.check_matches(schedule.t_ad)
    n = intervals * samples_per_interval
    t = (np.arange(n) + 0.5) * (schedule.t_ad / n)
    clean = control_field_array(schedule, t)
    noisy = clean
    if noise is not None and noise.channel is not NoiseChannel.NONE and noise.sigma > 0:
        trajectory = sample_trajectory(noise, schedule.omega)
        if noise.channel.has_phase:
            noisy = noisy * np.exp(1j * np.repeat(trajectory.phases,
                                                  samples_per_interval, axis=0))
        if noise.channel.has_intensity:
            noisy = noisy + np.repeat(trajectory.intensity_offsets,
                                      samples_per_interval, axis=0)
    rows = []
    for i in range(n):
        cx = clean[i].real / schedule.omega
        nx = noisy[i].real / schedule.omega
        rows.append({"t_fs": float(t[i]),
                     "clean_x": float(cx[1]), "clean_y": float(cx[0]),
                     "clean_z": float(cx[2]),
                     "noisy_x": float(nx[1]), "noisy_y": float(nx[0]),
                     "noisy_z": float(nx[2])})
    return rows


def write_trajectory_csv(rows: list[dict], path: str | Path) -> Path:
    path = Path(path)
    cols = ["t_fs", "clean_x", "clean_y", "clean_z", "noisy_x", "noisy_y", "noisy_z"]
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(cols)
        for row in rows:
            writer.writerow([repr(row[c]) for c in cols])
    return path


def dynamical_extractions(n_r_adiabatic: int,
                          speedup: int = DYNAMICAL_SPEEDUP) -> int:
    """Extraction count the ~100x-faster dynamical gate sees at shared noise time.

    At least one extraction: when the pulse is shorter than the noise
    time, the field still changes once.
    """
    return max(1, math.ceil(n_r_adiabatic / speedup))


def compare_dynamical(config: SweepConfig, sigma: float | None = None,
                      base_seed: int | None = None,
                      workers: int = 1) -> list[dict]:
    """Holonomic vs dynamical fidelity on a shared noise-time grid.

    Both gates run at the config's Rabi frequency with the same noise
    channel and strength; the dynamical pulse covers pi/(2*omega) and sees
    ceil(n_r/100) extractions for every adiabatic n_r.
    """
    if config.gate is Gate.DYNAMICAL_PI:
        raise ConfigError("comparison config must describe the holonomic arm")
    sigma = config.sigma if sigma is None else sigma
    seed = config.seed if base_seed is None else base_seed
    holo = dataclasses.replace(config, sigma=sigma, seed=seed)
    holo_result = run_sweep(holo, workers=workers)
    schedule = holo.schedule()
    dyn_schedule = dynamical_pi_pulse(schedule.omega)
    rows = []
    for rec in holo_result.records:
        n_ad = rec.n_extractions
        n_dyn = dynamical_extractions(n_ad)
        t_n = schedule.t_ad / n_ad
        dyn_spec = NoiseSpec.from_extractions(holo.channel, sigma, n_dyn,
                                              dyn_schedule.t_ad, seed)
        dyn_rec = gate_fidelity(dyn_schedule, dyn_spec, holo.realizations)
        rows.append({
            "n_r_ad": n_ad,
            "n_r_dyn": n_dyn,
            "t_n_fs": t_n,
            "t_dyn_over_t_n": dyn_schedule.t_ad / t_n,
            "holo_mean_fidelity": rec.mean_fidelity,
            "holo_std_fidelity": float(rec.per_state.std()),
            "dyn_mean_fidelity": dyn_rec.mean_fidelity,
            "dyn_std_fidelity": float(dyn_rec.per_state.std()),
        })
    return rows


def write_compare_csv(rows: list[dict], path: str | Path) -> Path:
    path = Path(path)
    cols = ["n_r_ad", "n_r_dyn", "t_n_fs", "t_dyn_over_t_n",
            "holo_mean_fidelity", "holo_std_fidelity",
            "dyn_mean_fidelity", "dyn_std_fidelity"]
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(cols)
        for row in rows:
            writer.writerow([row["n_r_ad"], row["n_r_dyn"]]
                            + [repr(float(row[c])) for c in cols[2:]])
    return path


def ideal_gate_report(schedule: LoopSchedule, n_points: int = 10_000,
                      steps_per_interval: int | None = None) -> dict:
    """Three independent routes to the loop operator, with agreement metrics.

    Returns the analytic gate, the numeric path-ordered holonomy and the
    noiseless evolved propagator restricted to the logical pair, plus
    per-basis-state overlaps and max elementwise deviations.
    """
    gate = ideal_gate(schedule)
    wz = wilczek_zee_holonomy(schedule, n_points)
    prop = propagator(schedule, None, steps_per_interval)
    analytic = gate.logical_unitary
    return {
        "geom_phase": gate.geom_phase,
        "analytic": analytic,
        "wilczek_zee": wz,
        "evolved_logical_block": prop.matrix[1:3, 1:3],
        "wz_vs_analytic_max": float(np.abs(wz - analytic).max()),
        # per logical basis state: overlap of the evolved column (leakage
        # included) with the analytic target column
        "evolved_overlaps": [float(abs(np.vdot(analytic[:, j],
                                               prop.matrix[1:3, 1 + j])))
                             for j in range(2)],
        "wz_overlaps": [float(abs(np.vdot(analytic[:, j], wz[:, j])))
                        for j in range(2)],
        "unitarity_defect": prop.unitarity_defect(),
    }
