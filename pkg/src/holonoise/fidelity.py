"""Gate performance estimation.

The estimator compares the noisy final state against the noiseless final
state of the same finite-duration run (so it isolates the noise error from
the adiabatic error, which is reported separately as leakage).  Both
evolutions are unitary, so the fidelity is the amplitude overlap
|<ideal|noisy>|.  Eighteen deterministic initial states sample the logical
Bloch sphere and each is averaged over independent noise realizations.

`evaluate_state` is the independent work unit (one initial state, all its
realizations); `gate_fidelity` runs the units serially and aggregates with
`assemble_record`.  A parallel driver may execute the units in any order
and obtain the identical record, because every unit derives its own
random stream and aggregation sorts by state index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import G, E_PLUS, E_MINUS, Gate, LoopSchedule
from .noise import NoiseChannel, NoiseSpec, derive_seed
from .propagate import as_state, evolve, leakage_populations

DEFAULT_REALIZATIONS = 5


@dataclass(frozen=True)
class StateSample:
    """Deterministic set of initial states spanning a logical Bloch sphere."""

    states: tuple[np.ndarray, ...]

    def __len__(self) -> int:
        return len(self.states)


def bloch_sample(pole_indices: tuple[int, int] = (E_PLUS, E_MINUS)) -> StateSample:
    """The 18-point Bloch-sphere grid: both poles plus two 8-point rings.

    ``pole_indices`` selects which basis pair spans the sampled sphere:
    the logical excitons by default, (ground, E+) for the dynamical gate.
    """
    up, down = pole_indices
    angles = [(0.0, 0.0), (math.pi, 0.0)]
    angles += [(polar, 2.0 * math.pi * k / 8.0)
               for polar in (math.pi / 3.0, 2.0 * math.pi / 3.0)
               for k in range(8)]
    states = []
    for polar, azimuth in angles:
        psi = np.zeros(4, dtype=complex)
        if polar == 0.0:
            psi[up] = 1.0
        elif polar == math.pi:
            psi[down] = 1.0
        else:
            psi[up] = math.cos(polar / 2.0)
            psi[down] = math.sin(polar / 2.0) * np.exp(1j * azimuth)
        states.append(psi)
    return StateSample(states=tuple(states))


def sample_for(schedule: LoopSchedule) -> StateSample:
    """Default initial-state sample for a schedule's gate family."""
    if schedule.gate is Gate.DYNAMICAL_PI:
        return bloch_sample(pole_indices=(G, E_PLUS))
    return bloch_sample()


def state_fidelity(ideal, noisy) -> float:
    """Amplitude overlap |<ideal|noisy>| between two pure states."""
    a = as_state(ideal)
    b = as_state(noisy)
    return float(abs(np.vdot(a, b)))


@dataclass(frozen=True)
class StateFidelity:
    """Result of all realizations for one initial state."""

    state_index: int
    mean: float
    std: float
    leak_g: tuple[float, ...]       # per realization, noisy run
    leak_e0: tuple[float, ...]
    ref_leak_g: float               # noiseless reference leakage
    ref_leak_e0: float


@dataclass(frozen=True)
class FidelityRecord:
    """Aggregated result of one (schedule, noise setting) evaluation."""

    n_extractions: int
    per_state: np.ndarray          # (n_states,) mean fidelity per initial state
    per_state_std: np.ndarray      # (n_states,) spread over realizations
    mean_fidelity: float
    leakage_g: float               # mean terminal ground population (noisy)
    leakage_e0: float              # mean terminal ancilla population (noisy)
    noiseless_leakage_g: float
    noiseless_leakage_e0: float
    channel: NoiseChannel
    sigma: float
    realizations: int
    base_seed: int

    def __post_init__(self):
        if not np.all((self.per_state >= 0) & (self.per_state <= 1 + 1e-12)):
            raise ValueError("per-state fidelities must lie in [0, 1]")

    def seeds(self) -> tuple[int, ...]:
        """The derived per-run seeds, state-major then realization."""
        return tuple(derive_seed(self.base_seed, s, r)
                     for s in range(len(self.per_state))
                     for r in range(self.realizations))


def _reference_spec(noise: NoiseSpec) -> NoiseSpec:
    """Channel-less spec on the same interval grid as the noisy runs."""
    return NoiseSpec(channel=NoiseChannel.NONE, sigma=0.0,
                     noise_time=noise.noise_time,
                     extractions=noise.extractions, seed=0)


def evaluate_state(schedule: LoopSchedule, noise: NoiseSpec, state_index: int,
                   realizations: int = DEFAULT_REALIZATIONS,
                   steps_per_interval: int | None = None,
                   sample: StateSample | None = None) -> StateFidelity:
    """Fidelity statistics for one Bloch-sample state.

    The noiseless reference is evolved on the same interval-aligned step
    grid as the noisy runs; realization r uses the stream derived from
    (noise.seed, state_index, r).  With the channel disabled (or sigma 0)
    the noisy run is by construction the reference run and the fidelity is
    exactly 1.
    """
    if sample is None:
        sample = sample_for(schedule)
    psi0 = as_state(sample.states[state_index])
    quiet = noise.channel is NoiseChannel.NONE or noise.sigma == 0.0
    reference, _ = evolve(schedule, _reference_spec(noise), psi0, steps_per_interval)
    ref_g, ref_e0 = leakage_populations(reference)
    if quiet:
        return StateFidelity(state_index=state_index, mean=1.0, std=0.0,
                             leak_g=(ref_g,) * realizations,
                             leak_e0=(ref_e0,) * realizations,
                             ref_leak_g=ref_g, ref_leak_e0=ref_e0)
    fids = np.empty(realizations)
    leak_g, leak_e0 = [], []
    for r_idx in range(realizations):
        child = noise.with_seed(derive_seed(noise.seed, state_index, r_idx))
        noisy, _ = evolve(schedule, child, psi0, steps_per_interval)
        fids[r_idx] = state_fidelity(reference, noisy)
        g, e = leakage_populations(noisy)
        leak_g.append(g)
        leak_e0.append(e)
    return StateFidelity(state_index=state_index,
                         mean=float(fids.mean()), std=float(fids.std()),
                         leak_g=tuple(leak_g), leak_e0=tuple(leak_e0),
                         ref_leak_g=ref_g, ref_leak_e0=ref_e0)


def assemble_record(noise: NoiseSpec, realizations: int,
                    results: list[StateFidelity]) -> FidelityRecord:
    """Deterministic aggregation of state results (sorted by state index)."""
    ordered = sorted(results, key=lambda r: r.state_index)
    per_state = np.array([r.mean for r in ordered])
    per_state_std = np.array([r.std for r in ordered])
    leak_g = [v for r in ordered for v in r.leak_g]
    leak_e0 = [v for r in ordered for v in r.leak_e0]
    return FidelityRecord(
        n_extractions=noise.extractions,
        per_state=per_state,
        per_state_std=per_state_std,
        mean_fidelity=float(per_state.mean()),
        leakage_g=float(np.mean(leak_g)),
        leakage_e0=float(np.mean(leak_e0)),
        noiseless_leakage_g=float(np.mean([r.ref_leak_g for r in ordered])),
        noiseless_leakage_e0=float(np.mean([r.ref_leak_e0 for r in ordered])),
        channel=noise.channel,
        sigma=noise.sigma,
        realizations=realizations,
        base_seed=noise.seed,
    )


def gate_fidelity(schedule: LoopSchedule, noise: NoiseSpec,
                  realizations: int = DEFAULT_REALIZATIONS,
                  sample: StateSample | None = None,
                  steps_per_interval: int | None = None) -> FidelityRecord:
    """Mean fidelity of the noisy gate over the Bloch sample."""
    if realizations < 1:
        raise ValueError("realizations must be >= 1")
    if sample is None:
        sample = sample_for(schedule)
    results = [evaluate_state(schedule, noise, s_idx, realizations,
                              steps_per_interval, sample)
               for s_idx in range(len(sample))]
    return assemble_record(noise, realizations, results)
