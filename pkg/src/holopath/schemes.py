"""Gate constructors for three holonomic one-qubit gate schemes in a Lambda system.

Covers the two-loop scheme (two pi-area pulse pairs), the single-loop
multiple-pulse scheme (one loop split into two pi/2-area segments with a
phase jump), and the off-resonant single-shot scheme, each with its ideal
propagator and its propagator under systematic Rabi-frequency errors.

The amplitude error model multiplies the whole pulse envelope by an unknown
constant fraction, so the accumulated pulse area is a sufficient statistic
and the propagators below are exact for that model.  Pulse areas are
enforced exactly (pi per two-loop loop, pi/2 per single-loop segment, and
total area pi for the single-shot pulse); envelope-resolved time stepping
lives in :mod:`holopath.oracle`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .linalg import (
    ContractViolation,
    IDENTITY,
    KET_0,
    KET_1,
    KET_E,
    PROJ_E,
    expm,
    projector,
)

TWO_PI = 2.0 * np.pi

#: fast/loose agreement tolerance between closed forms and expm routes
_CROSSCHECK_ATOL = 1e-11
_RANGE_SLACK = 1e-12


def _principal(angle: float) -> float:
    a = float(angle) % TWO_PI
    return 0.0 if a >= TWO_PI else a


def _in_range(value: float, lo: float, hi: float, name: str) -> float:
    v = float(value)
    if lo - _RANGE_SLACK <= v < lo:
        return lo
    if hi < v <= hi + _RANGE_SLACK:
        return hi
    if not lo <= v <= hi:
        raise ValueError(f"{name} must lie in [{lo:.6g}, {hi:.6g}], got {v:.6g}")
    return v


@dataclass(frozen=True)
class LoopParams:
    """Laser parameters of one two-loop evolution loop.

    theta is the Rabi-frequency ratio angle 2*arctan(Omega_1/Omega_0),
    psi the relative phase between the two drives, and phi the total phase.
    psi and phi are stored reduced to [0, 2*pi).
    """

    theta: float
    psi: float
    phi: float

    def __post_init__(self):
        object.__setattr__(self, "theta", _in_range(self.theta, 0.0, np.pi, "theta"))
        object.__setattr__(self, "psi", _principal(self.psi))
        object.__setattr__(self, "phi", _principal(self.phi))


@dataclass(frozen=True)
class TwoLoopPath:
    """The six laser parameters defining the two pi-pulse loops."""

    loop1: LoopParams
    loop2: LoopParams


@dataclass(frozen=True)
class SingleLoopPath:
    """Single-loop multiple-pulse parameters.

    Both segments share (theta, psi); the total phase jumps from phi to
    phi_prime at the intermediate time.  Segment areas are pi/2 each.
    """

    theta: float
    psi: float
    phi: float
    phi_prime: float

    def __post_init__(self):
        object.__setattr__(self, "theta", _in_range(self.theta, 0.0, np.pi, "theta"))
        object.__setattr__(self, "psi", _principal(self.psi))
        object.__setattr__(self, "phi", _principal(self.phi))
        object.__setattr__(self, "phi_prime", _principal(self.phi_prime))

    @property
    def phase_diff(self) -> float:
        """Total-phase jump phi - phi_prime, reduced to [0, 2*pi)."""
        return _principal(self.phi - self.phi_prime)


@dataclass(frozen=True)
class SingleShotPath:
    """Off-resonant single-shot parameters (alpha, beta0, beta1, gamma).

    gamma fixes the detuning-to-Rabi ratio; the physical drive parameters
    for a free overall scale Omega > 0 follow from
    :meth:`rabi_parameters`.  gamma = +/- pi/2 (pure detuning, no Rabi
    drive) is accepted as the identity-gate limit.
    """

    alpha: float
    beta0: float
    beta1: float
    gamma: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", _in_range(self.alpha, 0.0, np.pi / 2, "alpha"))
        object.__setattr__(self, "beta0", _principal(self.beta0))
        object.__setattr__(self, "beta1", _principal(self.beta1))
        object.__setattr__(self, "gamma", _in_range(self.gamma, -np.pi / 2, np.pi / 2, "gamma"))

    def rabi_parameters(self, omega: float = 1.0) -> tuple[float, float, float]:
        """Physical (detuning, Omega_0, Omega_1) for overall scale omega > 0."""
        if omega <= 0:
            raise ValueError("omega must be positive")
        return (
            -2.0 * omega * np.sin(self.gamma),
            omega * np.cos(self.alpha) * np.cos(self.gamma),
            omega * np.sin(self.alpha) * np.cos(self.gamma),
        )


@dataclass(frozen=True)
class RabiError:
    """Systematic Rabi-frequency error: average epsilon, relative half-difference kappa.

    The two drives see fractions epsilon0 = epsilon + kappa and
    epsilon1 = epsilon - kappa.  Both parameters are capped at 0.1 in
    magnitude; the perturbative analysis assumes small fractions.
    """

    epsilon: float
    kappa: float = 0.0

    def __post_init__(self):
        for name in ("epsilon", "kappa"):
            v = float(getattr(self, name))
            if not np.isfinite(v) or abs(v) > 0.1:
                raise ValueError(f"|{name}| must be <= 0.1, got {v!r}")
            object.__setattr__(self, name, v)

    @property
    def epsilon0(self) -> float:
        return self.epsilon + self.kappa

    @property
    def epsilon1(self) -> float:
        return self.epsilon - self.kappa


NO_ERROR = RabiError(0.0)


class BrightDecomposition(NamedTuple):
    """Decomposition of the second loop's phased bright state in the first loop's frame.

    ``exp(1j phi2)|b2> = cos(eta/2) exp(1j (phi_b + phi1))|b1>
    + sin(eta/2) exp(1j phi_d)|d1>``.  When the bright states are orthogonal
    (eta = pi) phi_b is undefined: it is returned as NaN with
    ``degenerate=True``, never as a silent default.
    """

    eta: float
    phi_b: float
    phi_d: float
    degenerate: bool


def _require_common_error(error: RabiError, scheme: str) -> RabiError:
    if error.kappa != 0.0:
        raise ValueError(
            f"{scheme} is analyzed under the common-error model only (kappa = 0); "
            "use two_loop_errored_relative for kappa != 0"
        )
    return error


def bright_dark(theta: float, psi: float) -> tuple[np.ndarray, np.ndarray]:
    """Bright and dark logical states for ratio angle theta and relative phase psi.

    |b> = cos(theta/2)|0> + sin(theta/2) e^{i psi}|1> couples to |e> under
    the drive; |d> = sin(theta/2)|0> - cos(theta/2) e^{i psi}|1> does not.
    """
    t = _in_range(theta, 0.0, np.pi, "theta")
    half = t / 2.0
    phase = np.exp(1j * psi)
    b = np.cos(half) * KET_0 + np.sin(half) * phase * KET_1
    d = np.sin(half) * KET_0 - np.cos(half) * phase * KET_1
    return b, d


def bloch_vector(theta: float, psi: float) -> np.ndarray:
    """Unit Bloch vector (sin t cos p, sin t sin p, cos t) of the bright state."""
    t = _in_range(theta, 0.0, np.pi, "theta")
    return np.array([np.sin(t) * np.cos(psi), np.sin(t) * np.sin(psi), np.cos(t)])


def coupling_generator(theta: float, psi: float, phi: float) -> np.ndarray:
    """Hamiltonian structure e^{i phi}|b><e| + h.c. with the envelope factored out."""
    b, _ = bright_dark(theta, psi)
    half = np.exp(1j * phi) * np.outer(b, KET_E.conj())
    return half + half.conj().T


def loop_generator(loop: LoopParams) -> np.ndarray:
    return coupling_generator(loop.theta, loop.psi, loop.phi)


def loop_unitary(loop: LoopParams) -> np.ndarray:
    """Propagator of one full loop (pulse area pi): -|e><e| - n.sigma."""
    return expm(loop_generator(loop), np.pi)


def two_loop_ideal(path: TwoLoopPath) -> np.ndarray:
    """Ideal two-loop gate U = U2 U1.

    The logical block equals (n1.n2) I - 1j (n1 x n2).sigma, a rotation by
    twice the angle between the two loop Bloch vectors; it is independent
    of the total phases phi1, phi2.
    """
    return loop_unitary(path.loop2) @ loop_unitary(path.loop1)


def two_loop_errored(path: TwoLoopPath, error: RabiError) -> np.ndarray:
    """Two-loop gate under a common amplitude error on both drives.

    Exact for this error model: each loop's Hamiltonian commutes with
    itself at all times, so the extra area epsilon*pi factors out of each
    loop as an extra bright/excited rotation.
    """
    _require_common_error(error, "two_loop_errored")
    eps = error.epsilon
    u1 = loop_unitary(path.loop1)
    u2 = loop_unitary(path.loop2)
    e1 = expm(loop_generator(path.loop1), eps * np.pi)
    e2 = expm(loop_generator(path.loop2), eps * np.pi)
    return u2 @ e2 @ e1 @ u1


def relative_error_angles(theta: float, error: RabiError) -> tuple[float, float]:
    """Errored ratio angle and area excess (theta_prime, delta) for one loop.

    With drive fractions (1+e0, 1+e1) the coupled direction tilts to
    theta_prime = 2 arctan(tan(theta/2) (1+e1)/(1+e0)) and the effective
    pulse-area fraction grows by
    delta = hypot((1+e0) cos(theta/2), (1+e1) sin(theta/2)) - 1.
    """
    t = _in_range(theta, 0.0, np.pi, "theta")
    c0 = (1.0 + error.epsilon0) * np.cos(t / 2.0)
    s1 = (1.0 + error.epsilon1) * np.sin(t / 2.0)
    return 2.0 * np.arctan2(s1, c0), float(np.hypot(c0, s1) - 1.0)


def two_loop_errored_relative(path: TwoLoopPath, error: RabiError, factored: bool = True) -> np.ndarray:
    """Two-loop gate when the two drives carry different error fractions.

    ``factored=True`` composes the errored ideal loops with the residual
    delta-area rotations; ``factored=False`` exponentiates each errored
    loop Hamiltonian in one shot with area pi*(1+delta).  The two forms are
    algebraically identical and cross-checked in the tests.
    """
    gates = []
    for loop in (path.loop1, path.loop2):
        theta_p, delta = relative_error_angles(loop.theta, error)
        gen = coupling_generator(theta_p, loop.psi, loop.phi)
        if factored:
            gates.append(expm(gen, delta * np.pi) @ expm(gen, np.pi))
        else:
            gates.append(expm(gen, (1.0 + delta) * np.pi))
    return gates[1] @ gates[0]


def single_loop_ideal(path: SingleLoopPath) -> np.ndarray:
    """Single-loop multiple-pulse gate: two pi/2-area segments with a phase jump."""
    seg1 = expm(coupling_generator(path.theta, path.psi, path.phi), np.pi / 2)
    seg2 = expm(coupling_generator(path.theta, path.psi, path.phi_prime), np.pi / 2)
    return seg2 @ seg1


def single_loop_errored(path: SingleLoopPath, error: RabiError) -> np.ndarray:
    """Single-loop gate under a common amplitude error (each segment gains area eps*pi/2)."""
    _require_common_error(error, "single_loop_errored")
    eps = error.epsilon
    g1 = coupling_generator(path.theta, path.psi, path.phi)
    g2 = coupling_generator(path.theta, path.psi, path.phi_prime)
    return expm(g2, np.pi / 2) @ expm(g2, eps * np.pi / 2) @ expm(g1, eps * np.pi / 2) @ expm(g1, np.pi / 2)


def single_shot_bright(path: SingleShotPath) -> np.ndarray:
    """Bright state cos(alpha) e^{i beta0}|0> + sin(alpha) e^{i beta1}|1>."""
    return (
        np.cos(path.alpha) * np.exp(1j * path.beta0) * KET_0
        + np.sin(path.alpha) * np.exp(1j * path.beta1) * KET_1
    )


def single_shot_generator(path: SingleShotPath, epsilon: float = 0.0) -> np.ndarray:
    """Full single-shot Hamiltonian structure (unit overall scale Omega).

    The amplitude error multiplies only the Rabi couplings; the detuning
    term is set by an independent frequency reference and stays exact.
    """
    b = single_shot_bright(path)
    pb = projector(b)
    cross = np.outer(b, KET_E.conj()) + np.outer(KET_E, b.conj())
    sg, cg = np.sin(path.gamma), np.cos(path.gamma)
    return sg * (PROJ_E + pb) + (1.0 + epsilon) * cg * cross + sg * (PROJ_E - pb)


def single_shot_error_operator(path: SingleShotPath, epsilon: float) -> tuple[float, np.ndarray]:
    """Normalized traceless rotation operator of the errored single-shot drive.

    Returns (lambda, sigma) with lambda = hypot((1+eps) cos gamma, sin gamma);
    sigma squares to the bright/excited projector and is traceless.
    """
    b = single_shot_bright(path)
    pb = projector(b)
    cross = np.outer(b, KET_E.conj()) + np.outer(KET_E, b.conj())
    sg, cg = np.sin(path.gamma), np.cos(path.gamma)
    lam = float(np.hypot((1.0 + epsilon) * cg, sg))
    sigma = ((1.0 + epsilon) * cg * cross + sg * (PROJ_E - pb)) / lam
    return lam, sigma


def _crosscheck(closed: np.ndarray, direct: np.ndarray, what: str) -> np.ndarray:
    dev = np.max(np.abs(closed - direct))
    if dev > _CROSSCHECK_ATOL:
        raise ContractViolation(f"{what}: closed form and expm route disagree by {dev:.3e}")
    return closed


def single_shot_ideal(path: SingleShotPath) -> np.ndarray:
    """Ideal single-shot gate e^{i zeta}(|e><e| + |b><b|) + |d><d|, zeta = pi(1 - sin gamma).

    Evaluated in closed form and verified on every call against the matrix
    exponential of the full Hamiltonian at total area pi.
    """
    pb = projector(single_shot_bright(path))
    zeta = np.pi * (1.0 - np.sin(path.gamma))
    closed = np.exp(1j * zeta) * (PROJ_E + pb) + (IDENTITY - PROJ_E - pb)
    return _crosscheck(closed, expm(single_shot_generator(path), np.pi), "single_shot_ideal")


def single_shot_errored(path: SingleShotPath, error: RabiError) -> np.ndarray:
    """Single-shot gate under an amplitude error on the Rabi couplings only.

    Closed form: a bright/excited phase times a rotation by lambda*pi about
    the tilted error axis, identity on the dark state; verified on every
    call against the exponential of the errored Hamiltonian.
    """
    _require_common_error(error, "single_shot_errored")
    pb = projector(single_shot_bright(path))
    lam, sigma = single_shot_error_operator(path, error.epsilon)
    phase_part = expm(PROJ_E + pb, np.pi * np.sin(path.gamma))
    rotation = expm(sigma, lam * np.pi)
    closed = phase_part @ rotation
    direct = expm(single_shot_generator(path, error.epsilon), np.pi)
    return _crosscheck(closed, direct, "single_shot_errored")


def phi_b_of(path: TwoLoopPath) -> BrightDecomposition:
    """Decompose the second loop's phased bright state over the first loop's basis.

    eta is the Bloch-sphere angle between the two bright states (equal to
    the angle between the loop Bloch vectors); phi_b is the decomposition
    phase controlling the leading error sensitivity of the two-loop gate.
    Angles are reduced to [0, 2*pi); at eta = 0 the dark-component phase
    phi_d is immaterial and returned as phi2 by convention.
    """
    b1, d1 = bright_dark(path.loop1.theta, path.loop1.psi)
    b2, _ = bright_dark(path.loop2.theta, path.loop2.psi)
    overlap = np.vdot(b1, b2)
    eta = 2.0 * np.arccos(min(1.0, abs(overlap)))
    degenerate = abs(overlap) <= 1e-12
    phi1, phi2 = path.loop1.phi, path.loop2.phi
    phi_b = np.nan if degenerate else _principal(phi2 - phi1 + np.angle(overlap))
    phi_d = _principal(phi2 + np.angle(np.vdot(d1, b2)))
    return BrightDecomposition(float(eta), phi_b, phi_d, degenerate)
