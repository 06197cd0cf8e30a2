"""Hamiltonian schedules that drive loops on the Schmidt sphere.

A path (alpha(t), beta(t)) is generated by

    H(t) = -(alpha'/2) sin(beta) h_xy + (alpha'/2) cos(beta) h_dm
           + (beta'/2) h_z,

equivalently by the effective field B = (2 c_xy, 2 c_dm, 2 c_z) about
which the sphere point precesses (r' = B x r). The gamma-sector triple
(h_xy, h_dm, h_z) acts as the Pauli triple on span{|01>, |10>} and
annihilates |00>, |11>; the lambda-sector triple is its analog on
span{|00>, |11>}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import herm_exp
from .sphere import (
    LinearSegment,
    RotationSegment,
    SampledSegment,
    SchmidtPath,
    equator_arc,
    meridian_arc,
)

H_XY = np.zeros((4, 4), dtype=np.complex128)
H_XY[1, 2] = H_XY[2, 1] = 1.0

H_DM = np.zeros((4, 4), dtype=np.complex128)
H_DM[1, 2] = -1j
H_DM[2, 1] = 1j

H_Z = np.diag([0, 1, -1, 0]).astype(np.complex128)

L_XY = np.zeros((4, 4), dtype=np.complex128)
L_XY[0, 3] = L_XY[3, 0] = 1.0

L_DM = np.zeros((4, 4), dtype=np.complex128)
L_DM[0, 3] = -1j
L_DM[3, 0] = 1j

L_Z = np.diag([1, 0, 0, -1]).astype(np.complex128)


@dataclass(frozen=True)
class SpinOperators:
    """Exchange, antisymmetric-exchange, and splitting operators of one
    sector; they satisfy [h_xy, h_dm] = 2i h_z and cyclic permutations.
    """

    h_xy: np.ndarray
    h_dm: np.ndarray
    h_z: np.ndarray

    @classmethod
    def for_sector(cls, sector: str) -> "SpinOperators":
        if sector == "gamma":
            return cls(H_XY, H_DM, H_Z)
        if sector == "lambda":
            return cls(L_XY, L_DM, L_Z)
        raise ValueError(f"unknown sector {sector!r}")

    def hamiltonian(self, c_xy: float, c_dm: float, c_z: float) -> np.ndarray:
        return c_xy * self.h_xy + c_dm * self.h_dm + c_z * self.h_z


@dataclass(frozen=True)
class ConstantPulse:
    """Pulse with time-independent coefficients (c_xy, c_dm, c_z)."""

    duration: float
    c_xy: float
    c_dm: float
    c_z: float

    def __post_init__(self):
        if not self.duration > 0:
            raise ValueError("pulse duration must be positive")


@dataclass(frozen=True)
class SampledPulse:
    """Pulse with coefficients sampled on a uniform time grid."""

    times: np.ndarray
    c_xy: np.ndarray
    c_dm: np.ndarray
    c_z: np.ndarray

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        if times.ndim != 1 or times.size < 2:
            raise ValueError("a sampled pulse needs at least two samples")
        object.__setattr__(self, "times", times)
        for name in ("c_xy", "c_dm", "c_z"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if arr.shape != times.shape:
                raise ValueError(f"{name} must match the time grid")
            object.__setattr__(self, name, arr)

    @property
    def duration(self) -> float:
        return float(self.times[-1] - self.times[0])


Pulse = ConstantPulse | SampledPulse


@dataclass(frozen=True)
class HamiltonianSchedule:
    """Time-ordered pulses (first entry acts first) within one sector."""

    pulses: tuple
    sector: str = "gamma"

    def __post_init__(self):
        object.__setattr__(self, "pulses", tuple(self.pulses))
        if self.sector not in ("gamma", "lambda"):
            raise ValueError(f"unknown sector {self.sector!r}")

    @property
    def duration(self) -> float:
        return float(sum(p.duration for p in self.pulses))


def _segment_pulse(seg, samples: int) -> Pulse:
    if isinstance(seg, RotationSegment):
        rate = seg.angle / seg.duration
        kx, ky, kz = seg.axis
        if abs(kx) == 0.0 and abs(ky) == 0.0:
            # rotation about z is a latitude arc: the scheme's field is the
            # constant axis field itself
            return ConstantPulse(seg.duration, 0.0, 0.0, 0.5 * rate * kz)
        # for tilted axes the constant axis field moves the sphere point
        # correctly but adds a parallel component (a spurious phase), so
        # the pulse is resampled from the chart lift instead
        t, alpha, beta = seg.sample(samples)
        da = np.gradient(alpha, t, edge_order=2)
        db = np.gradient(beta, t, edge_order=2)
        return SampledPulse(t, -0.5 * da * np.sin(beta),
                            +0.5 * da * np.cos(beta), 0.5 * db)
    if isinstance(seg, LinearSegment):
        da, db = seg.alpha_rate, seg.beta_rate
        if da == 0.0:
            return ConstantPulse(seg.duration, 0.0, 0.0, 0.5 * db)
        if db == 0.0:
            return ConstantPulse(seg.duration,
                                 -0.5 * da * np.sin(seg.beta_start),
                                 +0.5 * da * np.cos(seg.beta_start),
                                 0.0)
        t, _, beta = seg.sample(samples)
        return SampledPulse(t, -0.5 * da * np.sin(beta),
                            +0.5 * da * np.cos(beta),
                            np.full(t.shape, 0.5 * db))
    if isinstance(seg, SampledSegment):
        t, alpha, beta = seg.sample(samples)
        da = np.gradient(alpha, t, edge_order=2)
        db = np.gradient(beta, t, edge_order=2)
        return SampledPulse(t, -0.5 * da * np.sin(beta),
                            +0.5 * da * np.cos(beta), 0.5 * db)
    raise TypeError(f"unsupported segment type {type(seg).__name__}")


def reverse_engineer(path: SchmidtPath, sector: str = "gamma",
                     samples_per_segment: int = 1000) -> HamiltonianSchedule:
    """Hamiltonian schedule whose evolution drags the Schmidt vectors along
    the path with no extra phase.

    Coordinate-aligned segments (constant alpha or constant beta, and
    rotation arcs about the z axis) become constant pulses in closed form;
    everything else is sampled, with derivatives by centered differences
    (one-sided second order at the endpoints). Doubling
    `samples_per_segment` should leave the resulting propagator unchanged
    at the 1e-8 level; increase it until it does.
    """
    pulses = [_segment_pulse(seg, samples_per_segment)
              for seg in path.segments]
    return HamiltonianSchedule(tuple(pulses), sector=sector)


def propagate(schedule: HamiltonianSchedule) -> np.ndarray:
    """Time-ordered propagator of a schedule (latest pulse leftmost).

    Constant pulses exponentiate exactly; sampled pulses step between
    consecutive samples using the midpoint (averaged) coefficients.
    """
    ops = SpinOperators.for_sector(schedule.sector)
    u = np.eye(4, dtype=np.complex128)
    for pulse in schedule.pulses:
        if isinstance(pulse, ConstantPulse):
            h = ops.hamiltonian(pulse.c_xy, pulse.c_dm, pulse.c_z)
            u = herm_exp(h, pulse.duration) @ u
        else:
            t = pulse.times
            for k in range(t.size - 1):
                h = ops.hamiltonian(
                    0.5 * (pulse.c_xy[k] + pulse.c_xy[k + 1]),
                    0.5 * (pulse.c_dm[k] + pulse.c_dm[k + 1]),
                    0.5 * (pulse.c_z[k] + pulse.c_z[k + 1]),
                )
                u = herm_exp(h, t[k + 1] - t[k]) @ u
    return u


def dynamical_phase(path: SchmidtPath, samples: int = 1000) -> tuple[float, float]:
    """Accumulated dynamical phases (phi_plus, phi_minus) of the entangled
    pair under the reverse-engineered schedule.

    phi_plus = -(1/2) * integral of cos(alpha) d(beta) along the path and
    phi_minus = -phi_plus; both vanish on geodesic-pair loops.
    """
    cos_int = 0.0
    for seg in path.segments:
        _, seg_cos = seg._beta_integrals(samples)
        cos_int += seg_cos
    phi_plus = -0.5 * cos_int
    return float(phi_plus), float(-phi_plus)


def _check_times(t1: float, tau: float) -> None:
    if not 0.0 < t1 < tau:
        raise ValueError("times must satisfy 0 < t1 < tau")


def orange_slice_path(t1: float, tau: float) -> SchmidtPath:
    """Closed loop from (0,1,0): half equator to (0,-1,0) during [0, t1],
    then the meridian through the north pole back to the start. Solid
    angle -pi.
    """
    _check_times(t1, tau)
    return SchmidtPath((
        equator_arc(np.pi / 2, -np.pi / 2, t1),
        meridian_arc(-np.pi / 2, np.pi / 2, -np.pi / 2, tau - t1),
    ), closed=True)


def two_pulse_schedule(t1: float, tau: float) -> HamiltonianSchedule:
    """The two constant pulses generating the orange-slice loop:
    -(pi/(2 t1)) h_z during [0, t1], then -(pi/(2 (tau-t1))) h_xy.
    """
    _check_times(t1, tau)
    return HamiltonianSchedule((
        ConstantPulse(t1, 0.0, 0.0, -np.pi / (2.0 * t1)),
        ConstantPulse(tau - t1, -np.pi / (2.0 * (tau - t1)), 0.0, 0.0),
    ))


def tilted_schedule(theta: float, t1: float, tau: float) -> HamiltonianSchedule:
    """Two-pulse schedule with the second pulse tilted by theta:
    -(pi/(2 (tau-t1))) (cos(theta) h_xy - sin(theta) h_z). theta = 0
    recovers the plain two-pulse schedule.
    """
    _check_times(t1, tau)
    k = np.pi / (2.0 * (tau - t1))
    return HamiltonianSchedule((
        ConstantPulse(t1, 0.0, 0.0, -np.pi / (2.0 * t1)),
        ConstantPulse(tau - t1, -k * np.cos(theta), 0.0, k * np.sin(theta)),
    ))


def tilted_segment_propagator(theta: float) -> np.ndarray:
    """Exact propagator of the tilted second pulse,
    exp(+i (pi/2) (cos(theta) h_xy - sin(theta) h_z)).
    """
    h = -0.5 * np.pi * (np.cos(theta) * H_XY - np.sin(theta) * H_Z)
    return herm_exp(h, 1.0)


def composed_tilted_gate(theta: float) -> np.ndarray:
    """Exact propagator of the full tilted sequence (both pulses)."""
    return propagate(tilted_schedule(theta, 1.0, 2.0))


@dataclass(frozen=True)
class TrotterPlan:
    """First-order splitting of the tilted pulse into n alternating steps
    exp(+i (pi/2n) cos(theta) h_xy) exp(-i (pi/2n) sin(theta) h_z).
    """

    theta: float
    n: int

    def __post_init__(self):
        if not (isinstance(self.n, (int, np.integer)) and self.n >= 1):
            raise ValueError("step count n must be a positive integer")


def trotter_step(plan: TrotterPlan) -> np.ndarray:
    k = np.pi / (2.0 * plan.n)
    xy = herm_exp(-k * np.cos(plan.theta) * H_XY, 1.0)
    z = herm_exp(+k * np.sin(plan.theta) * H_Z, 1.0)
    return xy @ z


def trotter_propagate(plan: TrotterPlan) -> np.ndarray:
    """n-fold repetition of the Trotter step (binary powering)."""
    return np.linalg.matrix_power(trotter_step(plan), plan.n)


def extract_rotation_angle(u: np.ndarray) -> tuple[float, float]:
    """Rotation angle omega of a gate of the real middle-block rotation
    form, plus the residual max|u - rebuilt form|.
    """
    from .gates import u_general

    u = np.asarray(u, dtype=np.complex128)
    omega = 2.0 * np.arctan2(u[2, 1].real, u[1, 1].real)
    residual = float(np.max(np.abs(u - u_general(omega))))
    return float(omega), residual
