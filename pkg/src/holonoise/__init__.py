"""Holonomic quantum gates under piecewise-constant control noise.

Numerical study of non-abelian adiabatic gates on a driven 4-level
system: loop schedules in control space, seeded stochastic perturbations
of the driving fields, unitarity-preserving Schrödinger integration,
independent holonomy cross-checks, and Monte-Carlo fidelity sweeps over
the noise correlation time.
"""

__version__ = "0.1.0"

from .model import (Basis, ControlField, Gate, HamiltonianSample, LoopSchedule,
                    SINGLE_QUBIT_BASIS, TWO_QUBIT_BASIS, assemble_hamiltonian,
                    build_control_field, dynamical_pi_pulse, mixing_loop,
                    phase_shift_loop, schedule_from_config, two_qubit_schedule)
from .noise import (ConfigError, NoiseChannel, NoiseSpec, NoiseTrajectory,
                    derive_seed, perturb_field, sample_trajectory)
from .propagate import (Propagator, StepSizeError, evolve, leakage_populations,
                        step_propagators)
from .holonomy import (ConnectionSample, HolonomyTrackingError, IdealGate,
                       NotHolonomicError, connection_sample, ideal_gate,
                       solid_angle, wilczek_zee_holonomy)
from .fidelity import (FidelityRecord, StateSample, bloch_sample, gate_fidelity,
                       state_fidelity)
from .experiments import (SweepConfig, SweepResult, compare_dynamical,
                          dump_loop_trajectory, ideal_gate_report, run_sweep,
                          save_sweep)
from .units import HBAR_MEV_FS, inv_fs_to_mev, mev_to_inv_fs

__all__ = [
    "Basis", "ControlField", "Gate", "HamiltonianSample", "LoopSchedule",
    "SINGLE_QUBIT_BASIS", "TWO_QUBIT_BASIS", "assemble_hamiltonian",
    "build_control_field", "dynamical_pi_pulse", "mixing_loop",
    "phase_shift_loop", "schedule_from_config", "two_qubit_schedule",
    "ConfigError", "NoiseChannel", "NoiseSpec", "NoiseTrajectory",
    "derive_seed", "perturb_field", "sample_trajectory",
    "Propagator", "StepSizeError", "evolve", "leakage_populations",
    "step_propagators",
    "ConnectionSample", "HolonomyTrackingError", "IdealGate",
    "NotHolonomicError", "connection_sample", "ideal_gate", "solid_angle",
    "wilczek_zee_holonomy",
    "FidelityRecord", "StateSample", "bloch_sample", "gate_fidelity",
    "state_fidelity",
    "SweepConfig", "SweepResult", "compare_dynamical", "dump_loop_trajectory",
    "ideal_gate_report", "run_sweep", "save_sweep",
    "HBAR_MEV_FS", "inv_fs_to_mev", "mev_to_inv_fs",
    "__version__",
]
