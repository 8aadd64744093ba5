"""Seeded piecewise-constant perturbations of the control fields.

The noise model: every ``noise_time`` fs a fresh set of random numbers is
drawn and held constant for that interval.  The intensity channel adds a
real offset to each Rabi component, the phase channel multiplies each
component by a unit-modulus factor exp(i*xi), and the combined channel
applies the phase factor first and then the additive offset (the two
orders differ only at second order in sigma).

Randomness contract: offsets are produced by inverse-CDF sampling of
standard normals from 53-bit uniforms drawn from a PCG64 stream, so a
(spec, seed) pair reproduces a trajectory bit-for-bit on any platform.
Per-realization streams are derived with
``numpy.random.SeedSequence(base_seed, spawn_key=(state_index,
realization_index))`` so parallel workers never share generator state.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np
from scipy.special import ndtri

from .model import ControlField


class NoiseChannel(Enum):
    NONE = "none"
    INTENSITY = "intensity"
    PHASE = "phase"
    BOTH = "both"

    @property
    def has_intensity(self) -> bool:
        return self in (NoiseChannel.INTENSITY, NoiseChannel.BOTH)

    @property
    def has_phase(self) -> bool:
        return self in (NoiseChannel.PHASE, NoiseChannel.BOTH)


class ConfigError(ValueError):
    """Inconsistent noise/sweep configuration."""


@dataclass(frozen=True)
class NoiseSpec:
    """Stochastic perturbation settings for one run.

    ``sigma`` is the relative intensity standard deviation (offsets are
    drawn with std sigma*omega) and doubles as the phase standard
    deviation in radians.  ``extractions`` is the number of piecewise
    constant intervals; ``noise_time * extractions`` must equal the
    schedule duration it is used with.
    """

    channel: NoiseChannel
    sigma: float
    noise_time: float            # fs
    extractions: int
    seed: int

    def __post_init__(self):
        if self.sigma < 0:
            raise ConfigError("sigma must be non-negative")
        if self.extractions < 1 or int(self.extractions) != self.extractions:
            raise ConfigError("extractions must be a positive integer")
        if self.noise_time <= 0:
            raise ConfigError("noise_time must be positive")

    @classmethod
    def from_extractions(cls, channel: NoiseChannel, sigma: float,
                         extractions: int, t_ad: float, seed: int) -> "NoiseSpec":
        """Spec with noise_time = t_ad / extractions."""
        if extractions < 1:
            raise ConfigError("extractions must be >= 1")
        return cls(channel=channel, sigma=sigma,
                   noise_time=t_ad / extractions,
                   extractions=extractions, seed=seed)

    @property
    def total_time(self) -> float:
        return self.noise_time * self.extractions

    def check_matches(self, t_ad: float) -> None:
        """Raise unless extractions * noise_time covers t_ad exactly."""
        if abs(self.total_time - t_ad) > 1e-9 * max(t_ad, 1.0):
            raise ConfigError(
                f"noise grid covers {self.total_time} fs but the schedule "
                f"runs for {t_ad} fs; extractions must divide the duration")

    def with_seed(self, seed: int) -> "NoiseSpec":
        return NoiseSpec(self.channel, self.sigma, self.noise_time,
                         self.extractions, seed)


@dataclass(frozen=True)
class NoiseTrajectory:
    """One realization: per-interval intensity offsets [fs^-1] and phases [rad]."""

    spec: NoiseSpec
    intensity_offsets: np.ndarray   # (extractions, 3) float
    phases: np.ndarray              # (extractions, 3) float

    def __post_init__(self):
        n = self.spec.extractions
        if self.intensity_offsets.shape != (n, 3) or self.phases.shape != (n, 3):
            raise ConfigError("trajectory arrays must have shape (extractions, 3)")

    def interval_of(self, t: float) -> int:
        t_total = self.spec.total_time
        if not 0.0 <= t < t_total:
            raise ValueError(f"t={t} outside noise domain [0, {t_total})")
        return min(int(t // self.spec.noise_time), self.spec.extractions - 1)


def derive_seed(base_seed: int, state_index: int, realization_index: int) -> int:
    """Independent 64-bit child seed for one (initial state, realization) pair.

    First word of ``SeedSequence(base_seed, spawn_key=(state_index,
    realization_index))``: collision-resistant, order-independent, and
    stable across platforms.
    """
    seq = np.random.SeedSequence(entropy=base_seed,
                                 spawn_key=(state_index, realization_index))
    return int(seq.generate_state(1, np.uint64)[0])


def _standard_normals(rng: np.random.Generator, shape) -> np.ndarray:
    # inverse-CDF transform on strictly interior 53-bit uniforms: keeps the
    # sampling recipe explicit and identical on every platform
    u = (rng.integers(0, 1 << 53, size=shape).astype(np.float64) + 0.5) / float(1 << 53)
    return ndtri(u)


def sample_trajectory(spec: NoiseSpec, omega: float) -> NoiseTrajectory:
    """Draw one noise realization for a loop with Rabi frequency ``omega``.

    Per interval the three intensity offsets are i.i.d. N(0, (sigma*omega)^2)
    and the three phases i.i.d. N(0, sigma^2).  The intensity block is drawn
    before the phase block, so at equal seed the combined channel shares its
    intensity offsets with an intensity-only run.
    """
    rng = np.random.default_rng(np.random.SeedSequence(spec.seed))
    n = spec.extractions
    if spec.channel.has_intensity and spec.sigma > 0:
        offsets = spec.sigma * omega * _standard_normals(rng, (n, 3))
    else:
        offsets = np.zeros((n, 3))
    if spec.channel.has_phase and spec.sigma > 0:
        phases = spec.sigma * _standard_normals(rng, (n, 3))
    else:
        phases = np.zeros((n, 3))
    return NoiseTrajectory(spec=spec, intensity_offsets=offsets, phases=phases)


def perturb_field(clean: ControlField, trajectory: NoiseTrajectory,
                  t: float) -> ControlField:
    """Apply the trajectory's interval at time t to a clean field."""
    spec = trajectory.spec
    if spec.channel is NoiseChannel.NONE:
        if not 0.0 <= t < spec.total_time:
            raise ValueError(f"t={t} outside noise domain [0, {spec.total_time})")
        return clean
    k = trajectory.interval_of(t)
    u = clean.as_array()
    if spec.channel.has_phase:
        u = u * np.exp(1j * trajectory.phases[k])
    if spec.channel.has_intensity:
        u = u + trajectory.intensity_offsets[k]
    return ControlField(complex(u[0]), complex(u[1]), complex(u[2]))


def apply_trajectory(u: np.ndarray, trajectory: NoiseTrajectory,
                     steps_per_interval: int) -> np.ndarray:
    """Vectorized counterpart of `perturb_field` for a full step grid.

    ``u`` has shape (extractions * steps_per_interval, 3) and is sampled at
    the step midpoints, in time order.
    """
    spec = trajectory.spec
    if spec.channel is NoiseChannel.NONE:
        return u
    out = u
    if spec.channel.has_phase:
        out = out * np.exp(1j * np.repeat(trajectory.phases, steps_per_interval, axis=0))
    if spec.channel.has_intensity:
        out = out + np.repeat(trajectory.intensity_offsets, steps_per_interval, axis=0)
    return out


def trajectory_to_csv(trajectory: NoiseTrajectory, path: str | Path) -> Path:
    """Dump a trajectory for auditing, one row per interval."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["interval", "dOmegaPlus", "dOmegaMinus", "dOmegaZero",
                         "xiPlus", "xiMinus", "xiZero"])
        for k in range(trajectory.spec.extractions):
            values = [*trajectory.intensity_offsets[k], *trajectory.phases[k]]
            writer.writerow([k] + [repr(float(v)) for v in values])
    return path
