"""Ideal gate operators: analytic solid-angle formulas and the numeric
path-ordered holonomy.

Both routes are independent of the Schrödinger propagator and serve as
cross-checks on it.  The numeric route transports an orthonormal frame of
the two zero-energy (dark) states around the loop (each step projects the
previous frame onto the new dark space and re-orthonormalizes, which is
the discrete path-ordered exponential of the non-abelian connection) and
reads off the loop operator as the overlap with the initial frame.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import Gate, LoopSchedule, control_field_array

GL_ORDER = 32


class NotHolonomicError(ValueError):
    """Operation defined only for closed adiabatic loops."""


class HolonomyTrackingError(RuntimeError):
    """Dark-frame continuity lost between consecutive loop points."""


@dataclass(frozen=True)
class IdealGate:
    """Perfect-adiabatic loop operator on the logical pair.

    ``logical_unitary`` acts on (|E+>, |E->) amplitudes; ``geom_phase`` is
    the loop's geometric angle in radians.
    """

    logical_unitary: np.ndarray
    geom_phase: float


@dataclass(frozen=True)
class ConnectionSample:
    """u(2)-valued connection components at one loop point (anti-Hermitian)."""

    a_theta: np.ndarray
    a_phi: np.ndarray


def _legs(schedule: LoopSchedule):
    """Linear (theta, phi) segments of the three-leg loop."""
    tm, pm = schedule.theta_max, schedule.phi_max
    return [((0.0, tm), (0.0, 0.0)),
            ((tm, tm), (0.0, pm)),
            ((tm, 0.0), (pm, pm))]


def solid_angle(schedule: LoopSchedule) -> float:
    """Geometric angle enclosed by the loop, by Gauss-Legendre quadrature.

    Evaluates the boundary integral of (1 - cos(theta)) d(phi) leg by leg,
    which equals the enclosed solid angle for loops anchored at the pole;
    phase-type gates acquire half of it.
    """
    if not schedule.is_holonomic:
        raise NotHolonomicError("dynamical pulse is not a closed parameter loop")
    nodes, weights = np.polynomial.legendre.leggauss(GL_ORDER)
    s = 0.5 * (nodes + 1.0)          # map to [0, 1]
    w = 0.5 * weights
    total = 0.0
    for (th0, th1), (ph0, ph1) in _legs(schedule):
        theta = th0 + (th1 - th0) * s
        dphi = ph1 - ph0
        total += dphi * float(np.sum(w * (1.0 - np.cos(theta))))
    if schedule.gate in (Gate.PHASE_SHIFT, Gate.TWO_QUBIT_PHASE):
        total *= 0.5
    return total


def ideal_gate(schedule: LoopSchedule) -> IdealGate:
    """Closed-form loop operator in the perfect adiabatic limit."""
    if not schedule.is_holonomic:
        raise NotHolonomicError("no holonomy for the dynamical pulse")
    angle = solid_angle(schedule)
    if schedule.gate is Gate.MIXING:
        c, s = math.cos(angle), math.sin(angle)
        u = np.array([[c, s], [-s, c]], dtype=complex)
    else:
        u = np.diag([np.exp(1j * angle), 1.0]).astype(complex)
    return IdealGate(logical_unitary=u, geom_phase=angle)


def _unit_fields(schedule: LoopSchedule, n_points: int) -> np.ndarray:
    t = np.linspace(0.0, schedule.t_ad, n_points + 1)
    u = control_field_array(schedule, t)
    norms = np.linalg.norm(u, axis=1)
    if np.any(norms <= 0):
        raise HolonomyTrackingError("control field vanishes on the loop")
    return u / norms[:, None]


def _loewdin(frame: np.ndarray) -> np.ndarray:
    gram = np.conj(frame.T) @ frame
    evals, evecs = np.linalg.eigh(gram)
    if evals.min() < 0.25:
        raise HolonomyTrackingError(
            f"dark-frame overlap collapsed (min gram eigenvalue {evals.min():.3g}); "
            "increase n_points or check the loop for gap closings")
    inv_sqrt = evecs @ np.diag(evals ** -0.5) @ np.conj(evecs.T)
    return frame @ inv_sqrt


def transport_dark_frame(unit_fields: np.ndarray,
                         initial_frame: np.ndarray) -> np.ndarray:
    """Parallel-transport a dark frame along a sequence of unit Rabi vectors.

    ``unit_fields`` has shape (n+1, 3); the dark space at each point is the
    orthogonal complement of the field vector in the excited sector (the
    coupling to the ground state is the Hermitian inner product with the
    field).  Returns the transported 3x2 frame at the last point.
    """
    frame = initial_frame
    for v in unit_fields[1:]:
        frame = frame - np.outer(v, np.conj(v) @ frame)   # remove bright part
        frame = _loewdin(frame)
    return frame


def wilczek_zee_holonomy(schedule: LoopSchedule, n_points: int = 10_000,
                         gauge: np.ndarray | None = None) -> np.ndarray:
    """Numeric loop holonomy on the logical pair, 2x2 unitary.

    Discretizes the loop at ``n_points`` segments, tracks the dark frame by
    projection and re-orthonormalization, and accumulates the path-ordered
    product.  ``gauge`` optionally rotates the initial dark frame; the
    returned operator is expressed in that rotated frame (conjugated by the
    gauge), so gauge choices change nothing physical.
    """
    if n_points < 100:
        raise ValueError("n_points must be >= 100")
    if not schedule.is_holonomic:
        raise NotHolonomicError("no holonomy for the dynamical pulse")
    start = np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]], dtype=complex)
    if gauge is not None:
        gauge = np.asarray(gauge, dtype=complex)
        if gauge.shape != (2, 2) or np.abs(np.conj(gauge.T) @ gauge - np.eye(2)).max() > 1e-12:
            raise ValueError("gauge must be a 2x2 unitary")
        start = start @ gauge
    fields = _unit_fields(schedule, n_points)
    end = transport_dark_frame(fields, start)
    return np.conj(start.T) @ end


def _chart_frame(schedule: LoopSchedule, theta: float, phi: float) -> np.ndarray:
    """Smooth reference dark frame at a chart point, columns in (E+, E-, E0)."""
    if schedule.gate is Gate.MIXING:
        d1 = np.array([math.cos(theta) * math.sin(phi),
                       math.cos(theta) * math.cos(phi),
                       -math.sin(theta)], dtype=complex)
        d2 = np.array([math.cos(phi), -math.sin(phi), 0.0], dtype=complex)
    else:
        d1 = np.array([math.cos(theta / 2.0), 0.0,
                       math.sin(theta / 2.0) * np.exp(-1j * phi)], dtype=complex)
        d2 = np.array([0.0, 1.0, 0.0], dtype=complex)
    return np.stack([d1, d2], axis=1)


def connection_sample(schedule: LoopSchedule, t: float,
                      delta: float = 1e-6) -> ConnectionSample:
    """Connection components at loop time t, by central differences.

    Uses the family's smooth reference frame in the (theta, phi) chart and
    differentiates along the chart directions; the tiny symmetric
    finite-difference residue is projected out so the samples are exactly
    anti-Hermitian.
    """
    if not schedule.is_holonomic:
        raise NotHolonomicError("no connection for the dynamical pulse")
    theta = float(schedule.theta(t))
    phi = float(schedule.phi(t))
    f0 = _chart_frame(schedule, theta, phi)

    def component(dth, dph):
        fp = _chart_frame(schedule, theta + dth, phi + dph)
        fm = _chart_frame(schedule, theta - dth, phi - dph)
        a = np.conj(f0.T) @ (fp - fm) / (2.0 * delta)
        return 0.5 * (a - np.conj(a.T))

    return ConnectionSample(a_theta=component(delta, 0.0),
                            a_phi=component(0.0, delta))
