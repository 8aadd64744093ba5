"""Driven 4-level system: bases, control-field loops and Hamiltonians.

The working basis is {ground, sigma+ exciton, sigma- exciton, ancilla
exciton}.  Three resonant lasers couple the ground state to the three
excited states; the complex Rabi-frequency triple is steered along closed
loops on a sphere of fixed radius in control space.  The two exciton
states spanning the dark space at the loop endpoints carry the logical
qubit.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .units import mev_to_inv_fs

# basis indices (fixed ordering, ground state first)
G, E_PLUS, E_MINUS, E_ZERO = 0, 1, 2, 3

#: indices of the logical (dark at the loop endpoints) states
LOGICAL = (E_PLUS, E_MINUS)
#: indices of the non-logical states whose terminal population is "leakage"
NON_LOGICAL = (G, E_ZERO)


class Gate(Enum):
    """Gate families supported by the loop schedules."""

    MIXING = "mixing"
    PHASE_SHIFT = "phase_shift"
    TWO_QUBIT_PHASE = "two_qubit_phase"
    DYNAMICAL_PI = "dynamical_pi"


@dataclass(frozen=True)
class Basis:
    """Ordered 4-state working basis; index 0 is always the ground state."""

    labels: tuple[str, str, str, str]

    def __post_init__(self):
        if len(self.labels) != 4:
            raise ValueError(f"basis needs exactly 4 labels, got {len(self.labels)}")

    def index(self, label: str) -> int:
        return self.labels.index(label)


SINGLE_QUBIT_BASIS = Basis(("G", "E+", "E-", "E0"))
# effective two-exciton basis for the two-photon phase gate: doubly excited
# logical sectors plus the two-photon ancilla sector
TWO_QUBIT_BASIS = Basis(("GG", "E+E+", "E-E-", "E0E0"))


@dataclass(frozen=True)
class ControlField:
    """Complex Rabi-frequency triple (sigma+, sigma-, ancilla) at one instant."""

    omega_plus: complex
    omega_minus: complex
    omega_zero: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.omega_plus, self.omega_minus, self.omega_zero],
                        dtype=complex)

    @property
    def magnitude(self) -> float:
        """Euclidean length of the Rabi vector, i.e. the instantaneous gap/2."""
        return float(np.linalg.norm(self.as_array()))


@dataclass(frozen=True)
class HamiltonianSample:
    """4x4 Hermitian coupling matrix at a given time (hbar = 1)."""

    matrix: np.ndarray
    time: float


@dataclass(frozen=True)
class LoopSchedule:
    """Deterministic control loop t -> (theta(t), phi(t)) for one gate.

    Holonomic schedules traverse three legs at constant rate, each taking a
    third of ``t_ad``: polar angle 0 -> theta_max at phi = 0, azimuth
    0 -> phi_max at theta = theta_max, then polar angle back to 0 at
    phi = phi_max.  The start/end configuration has only the ancilla
    coupling on.  The dynamical pi-pulse is a constant drive and ignores
    the angles.

    For the two-qubit gate ``omega`` holds the effective two-photon Rabi
    frequency and ``delta_mev``/``omega_single_mev`` record the underlying
    detuning and single-laser Rabi frequency.
    """

    gate: Gate
    omega: float                 # fs^-1
    t_ad: float                  # fs
    target_solid_angle: float    # geometric phase the loop is built for [rad]
    theta_max: float
    phi_max: float
    basis: Basis = SINGLE_QUBIT_BASIS
    delta_mev: float | None = None
    omega_single_mev: float | None = None

    def __post_init__(self):
        if self.omega <= 0:
            raise ValueError("omega must be positive")
        if self.t_ad <= 0:
            raise ValueError("t_ad must be positive")

    @property
    def is_holonomic(self) -> bool:
        return self.gate is not Gate.DYNAMICAL_PI

    def theta(self, t):
        """Polar angle theta(t); accepts scalars or arrays."""
        x = np.asarray(t, dtype=float) / self.t_ad
        ramp = np.clip(np.minimum(3.0 * x, 3.0 * (1.0 - x)), 0.0, 1.0)
        return self.theta_max * ramp

    def phi(self, t):
        """Azimuthal angle phi(t); accepts scalars or arrays."""
        x = np.asarray(t, dtype=float) / self.t_ad
        return self.phi_max * np.clip(3.0 * x - 1.0, 0.0, 1.0)


def control_field_array(schedule: LoopSchedule, t) -> np.ndarray:
    """Noiseless Rabi triple(s) at time(s) t, shape (..., 3) complex.

    Vectorized core used by the propagator; `build_control_field` wraps it
    for single instants.
    """
    t = np.asarray(t, dtype=float)
    if schedule.gate is Gate.DYNAMICAL_PI:
        u = np.zeros(t.shape + (3,), dtype=complex)
        u[..., 0] = schedule.omega
        return u
    th = schedule.theta(t)
    ph = schedule.phi(t)
    u = np.empty(t.shape + (3,), dtype=complex)
    if schedule.gate is Gate.MIXING:
        u[..., 0] = schedule.omega * np.sin(th) * np.sin(ph)
        u[..., 1] = schedule.omega * np.sin(th) * np.cos(ph)
        u[..., 2] = schedule.omega * np.cos(th)
    else:
        # selective phase gates: sigma- laser off, sigma+ carries the azimuth
        # phase, half-angle split between sigma+ and the ancilla coupling
        u[..., 0] = -schedule.omega * np.sin(th / 2.0) * np.exp(1j * ph)
        u[..., 1] = 0.0
        u[..., 2] = schedule.omega * np.cos(th / 2.0)
    return u


def build_control_field(schedule: LoopSchedule, t: float) -> ControlField:
    """Noiseless control field of the schedule at one instant.

    Raises ValueError when t lies outside [0, t_ad].
    """
    if not 0.0 <= t <= schedule.t_ad:
        raise ValueError(f"t={t} outside schedule domain [0, {schedule.t_ad}]")
    u = control_field_array(schedule, t)
    return ControlField(complex(u[0]), complex(u[1]), complex(u[2]))


def assemble_hamiltonian(field: ControlField, time: float = 0.0) -> HamiltonianSample:
    """Coupling Hamiltonian for a control field (hbar = 1).

    Only the first row and column are populated: H[i,0] = -omega_i and
    H[0,i] = -conj(omega_i) for the three excited states; the
    excited-excited block is zero.
    """
    u = field.as_array()
    if not np.all(np.isfinite(u.view(float))):
        raise ValueError("control field contains non-finite entries")
    h = np.zeros((4, 4), dtype=complex)
    h[1:, 0] = -u
    h[0, 1:] = -np.conj(u)
    return HamiltonianSample(matrix=h, time=time)


def mixing_loop(omega: float, t_ad: float,
                target_angle: float = math.pi / 2) -> LoopSchedule:
    """Three-leg loop enclosing ``target_angle`` steradians on the control sphere.

    The enclosed solid angle of the leg family equals the azimuth sweep, so
    the loop realizes the logical rotation exp(i * target_angle * sigma_y).
    ``omega * t_ad`` below ~50 is allowed but warned about: the evolution is
    then visibly non-adiabatic.
    """
    if not 0.0 < target_angle < 2.0 * math.pi:
        raise ValueError(f"target_angle must lie in (0, 2*pi), got {target_angle}")
    if omega * t_ad < 50.0:
        warnings.warn(
            f"omega*t_ad = {omega * t_ad:.1f} < 50: adiabatic approximation is poor",
            stacklevel=2,
        )
    return LoopSchedule(
        gate=Gate.MIXING,
        omega=omega,
        t_ad=t_ad,
        target_solid_angle=target_angle,
        theta_max=math.pi / 2,
        phi_max=target_angle,
    )


def phase_shift_loop(omega: float, t_ad: float,
                     target_angle: float = math.pi / 2) -> LoopSchedule:
    """Single-qubit selective phase gate: diag(exp(i*target_angle), 1).

    The geometric phase is half the enclosed angle of the (theta, phi)
    loop, so the azimuth sweep is 2 * target_angle / (1 - cos(theta_max)).
    """
    if not 0.0 < target_angle <= math.pi:
        raise ValueError(f"target_angle must lie in (0, pi], got {target_angle}")
    theta_max = math.pi / 2
    phi_max = 2.0 * target_angle / (1.0 - math.cos(theta_max))
    if omega * t_ad < 50.0:
        warnings.warn(
            f"omega*t_ad = {omega * t_ad:.1f} < 50: adiabatic approximation is poor",
            stacklevel=2,
        )
    return LoopSchedule(
        gate=Gate.PHASE_SHIFT,
        omega=omega,
        t_ad=t_ad,
        target_solid_angle=target_angle,
        theta_max=theta_max,
        phi_max=phi_max,
    )


def effective_rabi_frequency(delta_mev: float, omega_single_mev: float) -> float:
    """Two-photon effective Rabi frequency 2*omega^2/delta in fs^-1."""
    if delta_mev <= 0:
        raise ValueError(f"detuning must be positive, got {delta_mev} meV")
    omega_i = mev_to_inv_fs(omega_single_mev)
    delta = mev_to_inv_fs(delta_mev)
    return 2.0 * omega_i ** 2 / delta


def two_qubit_schedule(delta_mev: float, omega_single_mev: float, t_ad: float,
                       target_angle: float = math.pi / 2) -> LoopSchedule:
    """Conditional phase gate on the two-exciton effective basis.

    The far-detuned two-photon drive behaves like the single-qubit phase
    gate with the effective Rabi frequency 2*omega^2/delta; the loop
    geometry is the same three-leg family.
    """
    omega_eff = effective_rabi_frequency(delta_mev, omega_single_mev)
    theta_max = math.pi / 2
    phi_max = 2.0 * target_angle / (1.0 - math.cos(theta_max))
    if omega_eff * t_ad < 50.0:
        warnings.warn(
            f"omega_eff*t_ad = {omega_eff * t_ad:.1f} < 50: adiabatic approximation is poor",
            stacklevel=2,
        )
    return LoopSchedule(
        gate=Gate.TWO_QUBIT_PHASE,
        omega=omega_eff,
        t_ad=t_ad,
        target_solid_angle=target_angle,
        theta_max=theta_max,
        phi_max=phi_max,
        basis=TWO_QUBIT_BASIS,
        delta_mev=delta_mev,
        omega_single_mev=omega_single_mev,
    )


def dynamical_pi_pulse(omega: float) -> LoopSchedule:
    """Resonant square pi-pulse |G> <-> |E+>, duration pi/(2*omega).

    The baseline non-geometric gate; roughly two orders of magnitude
    shorter than the adiabatic loops at equal Rabi frequency.
    """
    if omega <= 0:
        raise ValueError("omega must be positive")
    return LoopSchedule(
        gate=Gate.DYNAMICAL_PI,
        omega=omega,
        t_ad=math.pi / (2.0 * omega),
        target_solid_angle=0.0,
        theta_max=0.0,
        phi_max=0.0,
    )


def schedule_from_config(config: dict) -> LoopSchedule:
    """Build a schedule from flat config keys.

    Recognized keys: ``gate`` (mixing | phase_shift | two_qubit_phase |
    dynamical_pi), ``omega_inv_fs`` (inverse Rabi frequency, fs),
    ``t_ad_fs``, ``target_angle`` (rad, optional), and for the two-qubit
    gate ``delta_mev`` plus ``omega_single_mev`` (defaults to delta/15).
    """
    try:
        gate = Gate(config["gate"])
    except (KeyError, ValueError) as exc:
        raise ValueError(f"missing or unknown gate in config: {exc}") from exc
    target = float(config.get("target_angle", math.pi / 2))
    if gate is Gate.DYNAMICAL_PI:
        return dynamical_pi_pulse(1.0 / float(config["omega_inv_fs"]))
    if gate is Gate.TWO_QUBIT_PHASE:
        delta = float(config["delta_mev"])
        omega_single = float(config.get("omega_single_mev", delta / 15.0))
        return two_qubit_schedule(delta, omega_single,
                                  float(config["t_ad_fs"]), target)
    omega = 1.0 / float(config["omega_inv_fs"])
    t_ad = float(config["t_ad_fs"])
    if gate is Gate.MIXING:
        return mixing_loop(omega, t_ad, target)
    return phase_shift_loop(omega, t_ad, target)
