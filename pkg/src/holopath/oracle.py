"""Brute-force time-stepped propagation of pulse-envelope Hamiltonians.

Independent validator for every closed-form propagator in
:mod:`holopath.schemes`: instead of using the accumulated pulse area, the
Hamiltonian H(t) = scale * Omega(t) * G is integrated as an ordered product
of per-step exponentials with midpoint sampling.  For these schemes the
generator structure is constant within a segment, so the only
discretization error is the midpoint quadrature error of the envelope
area; the "square" and "sine-squared" shapes are integrated exactly by the
midpoint rule (constant, resp. periodic integrand), while the half-sine
"sine" shape carries a genuine O(1/N^2) error and is the one to use for
convergence-order measurements.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.integrate import quad

from . import schemes
from .linalg import IDENTITY, expm, require_hermitian
from .schemes import RabiError, SingleLoopPath, SingleShotPath, TwoLoopPath

SHAPES = ("square", "sine", "sine-squared")

#: propagation error below this is roundoff; convergence order is then indeterminate
ROUNDOFF_FLOOR = 1e-12


@dataclass(frozen=True)
class PulseEnvelope:
    """Scalar envelope Omega(t) on [0, duration] calibrated to a target area.

    The amplitude is calibrated numerically (quadrature of the unit shape)
    so that the integrated area matches ``target_area`` regardless of shape.
    A zero-duration envelope is legal only with zero target area and
    contributes the identity.
    """

    shape: str
    duration: float
    target_area: float

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise ValueError(f"shape must be one of {SHAPES}, got {self.shape!r}")
        if self.duration < 0.0 or not np.isfinite(self.duration):
            raise ValueError("duration must be a finite nonnegative time")
        if self.duration == 0.0 and self.target_area != 0.0:
            raise ValueError("zero-duration envelope cannot carry a nonzero area")

    def unit(self, t):
        """Unit-amplitude shape value(s) at time(s) t."""
        t = np.asarray(t, dtype=float)
        if self.shape == "square":
            return np.ones_like(t)
        if self.shape == "sine":
            return np.sin(np.pi * t / self.duration)
        return np.sin(np.pi * t / self.duration) ** 2

    @cached_property
    def amplitude(self) -> float:
        if self.duration == 0.0:
            return 0.0
        unit_area, _ = quad(lambda t: float(self.unit(t)), 0.0, self.duration, limit=200)
        return self.target_area / unit_area

    def values(self, t):
        return self.amplitude * self.unit(t)

    def area(self) -> float:
        """Numerically integrated area of the calibrated envelope."""
        if self.duration == 0.0:
            return 0.0
        result, _ = quad(lambda t: float(self.values(t)), 0.0, self.duration, limit=200)
        return result


@dataclass(frozen=True, eq=False)
class ScheduleSegment:
    """One pulse: envelope, fixed Hermitian generator structure, error multiplier."""

    envelope: PulseEnvelope
    generator: np.ndarray
    scale: float = 1.0

    def __post_init__(self):
        g = require_hermitian(self.generator).copy()
        g.setflags(write=False)
        object.__setattr__(self, "generator", g)
        object.__setattr__(self, "scale", float(self.scale))


@dataclass(frozen=True)
class Schedule:
    """Ordered, non-overlapping pulse segments applied left to right in time."""

    segments: tuple[ScheduleSegment, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))

    @property
    def duration(self) -> float:
        return float(sum(seg.envelope.duration for seg in self.segments))


def _ordered_product(mats: np.ndarray) -> np.ndarray:
    # ordered product M[N-1] @ ... @ M[0]; pairwise regrouping (associativity
    # only) keeps the cost at O(N) batched 3x3 multiplications
    while mats.shape[0] > 1:
        if mats.shape[0] % 2:
            head = np.matmul(mats[1:-1:2], mats[0:-1:2])
            mats = np.concatenate([head, mats[-1:]])
        else:
            mats = np.matmul(mats[1::2], mats[0::2])
    return mats[0]


def propagate(schedule: Schedule, steps_per_segment: int) -> np.ndarray:
    """Ordered product of per-step exponentials exp(-1j H(t_k) dt), midpoint sampled.

    Requires at least 100 steps per segment.  An empty schedule yields the
    identity with a warning.  The result is unitary to roundoff and
    converges to the accumulated-area propagator as steps increase.
    """
    if steps_per_segment < 100:
        raise ValueError("steps_per_segment must be >= 100")
    if not schedule.segments:
        warnings.warn("propagating an empty schedule: returning identity", RuntimeWarning, stacklevel=2)
        return IDENTITY.copy()
    total = IDENTITY.copy()
    for seg in schedule.segments:
        if seg.envelope.duration == 0.0:
            continue
        h = seg.envelope.duration / steps_per_segment
        midpoints = (np.arange(steps_per_segment) + 0.5) * h
        areas = seg.scale * seg.envelope.values(midpoints) * h
        vals, vecs = np.linalg.eigh(seg.generator)
        phases = np.exp(-1j * np.outer(areas, vals))
        steps = np.matmul(vecs[None, :, :] * phases[:, None, :], vecs.conj().T)
        total = _ordered_product(steps) @ total
    return total


def closed_form_limit(schedule: Schedule) -> np.ndarray:
    """Infinite-step limit: per-segment exponential at the exact scaled area."""
    total = IDENTITY.copy()
    for seg in schedule.segments:
        total = expm(seg.generator, seg.scale * seg.envelope.target_area) @ total
    return total


def convergence_order(schedule: Schedule, steps: int = 1000) -> float:
    """Empirical order p from propagation errors at ``steps`` and ``2*steps``.

    Errors are measured against the closed-form limit.  Midpoint sampling
    of a time-constant generator structure is second order, so p ~ 2 for
    shapes with genuine quadrature error (the "sine" shape).  When both
    errors sit at the roundoff floor (square and sine-squared shapes are
    integrated exactly), the order is indeterminate and +inf is returned.
    """
    reference = closed_form_limit(schedule)
    err1 = float(np.max(np.abs(propagate(schedule, steps) - reference)))
    err2 = float(np.max(np.abs(propagate(schedule, 2 * steps) - reference)))
    if err1 <= ROUNDOFF_FLOOR or err2 <= ROUNDOFF_FLOOR:
        return float("inf")
    return float(np.log2(err1 / err2))


def schedule_for_two_loop(
    path: TwoLoopPath, error: RabiError | None = None, shape: str = "square", loop_duration: float = 1.0
) -> Schedule:
    """Two-segment schedule equivalent to the (errored) two-loop gate.

    Each loop becomes one pi-area pulse of the errored bright-state
    coupling, scaled by its effective amplitude fraction 1 + delta; with
    zero error this is the ideal gate's schedule.
    """
    err = error or schemes.NO_ERROR
    segs = []
    for loop in (path.loop1, path.loop2):
        theta_p, delta = schemes.relative_error_angles(loop.theta, err)
        gen = schemes.coupling_generator(theta_p, loop.psi, loop.phi)
        segs.append(ScheduleSegment(PulseEnvelope(shape, loop_duration, np.pi), gen, 1.0 + delta))
    return Schedule(tuple(segs))


def schedule_for_single_loop(
    path: SingleLoopPath, error: RabiError | None = None, shape: str = "square", segment_duration: float = 1.0
) -> Schedule:
    """Two pi/2-area segments at total phases phi then phi_prime, both scaled by 1 + eps."""
    err = error or schemes.NO_ERROR
    if err.kappa != 0.0:
        raise ValueError("single-loop schedules support the common-error model only (kappa = 0)")
    scale = 1.0 + err.epsilon
    segs = []
    for phase in (path.phi, path.phi_prime):
        gen = schemes.coupling_generator(path.theta, path.psi, phase)
        segs.append(ScheduleSegment(PulseEnvelope(shape, segment_duration, np.pi / 2), gen, scale))
    return Schedule(tuple(segs))


def schedule_for_single_shot(
    path: SingleShotPath, error: RabiError | None = None, shape: str = "square", duration: float = 1.0
) -> Schedule:
    """One pi-area segment of the full (errored) single-shot Hamiltonian structure."""
    err = error or schemes.NO_ERROR
    if err.kappa != 0.0:
        raise ValueError("single-shot schedules support the common-error model only (kappa = 0)")
    gen = schemes.single_shot_generator(path, err.epsilon)
    return Schedule((ScheduleSegment(PulseEnvelope(shape, duration, np.pi), gen, 1.0),))
