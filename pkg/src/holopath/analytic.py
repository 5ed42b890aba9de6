"""Second-order fidelity formulas, scheme comparison curves, and coefficient extraction.

All closed-form fidelities here are exact through second order in the error
fractions; the exact propagators in :mod:`holopath.schemes` differ from them
by cubic (or higher) remainders, which the tests bound explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import schemes
from .linalg import gate_fidelity
from .schemes import RabiError, TwoLoopPath

PI_SQ = np.pi**2
_SLACK = 1e-12


@dataclass(frozen=True, eq=False)
class TargetGate:
    """Desired logical gate exp(1j * theta_gate * axis.sigma).

    theta_gate is half the Bloch rotation angle and lies in [0, pi/2]; the
    axis is normalized at construction.
    """

    theta_gate: float
    axis: np.ndarray

    def __post_init__(self):
        t = float(self.theta_gate)
        if -_SLACK <= t < 0.0:
            t = 0.0
        if np.pi / 2 < t <= np.pi / 2 + _SLACK:
            t = np.pi / 2
        if not 0.0 <= t <= np.pi / 2:
            raise ValueError(f"theta_gate must lie in [0, pi/2], got {t!r}")
        m = np.asarray(self.axis, dtype=float).reshape(3)
        norm = np.linalg.norm(m)
        if not np.isfinite(norm) or norm == 0.0:
            raise ValueError("axis must be a nonzero finite 3-vector")
        m = m / norm
        m.setflags(write=False)
        object.__setattr__(self, "theta_gate", t)
        object.__setattr__(self, "axis", m)


def _check_rotation_angle(theta_gate):
    t = np.asarray(theta_gate, dtype=float)
    if np.any(t < -_SLACK) or np.any(t > np.pi / 2 + _SLACK):
        raise ValueError("rotation angle must lie in [0, pi/2]")
    return np.clip(t, 0.0, np.pi / 2)


def _check_epsilon(epsilon: float) -> float:
    e = float(epsilon)
    if not np.isfinite(e) or abs(e) > 0.1:
        raise ValueError(f"|epsilon| must be <= 0.1, got {epsilon!r}")
    return e


def f1(theta_gate):
    """Two-loop error shape 2 - 2 cos(theta/2); infidelity is f1 * (pi eps)^2 / 3."""
    t = _check_rotation_angle(theta_gate)
    out = 2.0 - 2.0 * np.cos(t / 2.0)
    return out if out.ndim else float(out)


def f2(theta_gate):
    """Single-loop multiple-pulse error shape (1 - cos(2 theta)) / 2."""
    t = _check_rotation_angle(theta_gate)
    out = 0.5 * (1.0 - np.cos(2.0 * t))
    return out if out.ndim else float(out)


def f3(theta_gate):
    """Single-shot error shape 16 theta^2 (1 - theta/pi)^2 / pi^2."""
    t = _check_rotation_angle(theta_gate)
    out = 16.0 * t**2 * (1.0 - t / np.pi) ** 2 / PI_SQ
    return out if out.ndim else float(out)


def comparison_table(samples: int) -> np.ndarray:
    """Rows (theta, f1, f2, f3) for theta uniform on [0, pi/2]."""
    if samples < 2:
        raise ValueError("samples must be >= 2")
    theta = np.linspace(0.0, np.pi / 2, int(samples))
    return np.column_stack([theta, f1(theta), f2(theta), f3(theta)])


def quad_coeff_two_loop(eta: float, phi_b: float) -> float:
    """Quadratic error coefficient (2/3)(1 + cos(eta/2) cos(phi_b)) pi^2."""
    return float((2.0 / 3.0) * (1.0 + np.cos(eta / 2.0) * np.cos(phi_b)) * PI_SQ)


def quad_coeff_single_loop(phase_diff: float) -> float:
    """Quadratic error coefficient (1/6)(1 + cos(phi - phi')) pi^2."""
    return float((1.0 + np.cos(phase_diff)) * PI_SQ / 6.0)


def quad_coeff_single_shot(gamma: float) -> float:
    """Quadratic error coefficient (1/3) pi^2 cos^4(gamma)."""
    return float(PI_SQ * np.cos(gamma) ** 4 / 3.0)


def fid2_two_loop(eta: float, phi_b: float, epsilon: float) -> float:
    """Second-order two-loop fidelity 1 - (2/3)(1 + cos(eta/2) cos(phi_b)) pi^2 eps^2."""
    e = _check_epsilon(epsilon)
    return 1.0 - quad_coeff_two_loop(eta, phi_b) * e * e


def fid2_single_loop(phase_diff: float, epsilon: float) -> float:
    """Second-order single-loop fidelity 1 - (1/6)(1 + cos(phi - phi')) pi^2 eps^2."""
    e = _check_epsilon(epsilon)
    return 1.0 - quad_coeff_single_loop(phase_diff) * e * e


def fid2_single_shot(gamma: float, epsilon: float) -> float:
    """Second-order single-shot fidelity 1 - (1/3) pi^2 eps^2 cos^4(gamma)."""
    e = _check_epsilon(epsilon)
    return 1.0 - quad_coeff_single_shot(gamma) * e * e


@dataclass(frozen=True, eq=False)
class RelativeErrorBreakdown:
    """Intermediate quantities of the two-loop relative-error fidelity.

    theta11/theta22 are the per-loop bright-direction tilts, psi21 the
    relative-phase difference, delta1/delta2 the per-loop area excesses,
    eta_prime and phi_b the bright-state decomposition of the errored
    loops, and (y, z) the two quadrature amplitudes entering the fidelity
    1 - y^2/3 - pi^2 z^2/3.  ``degenerate`` mirrors the phi_b degeneracy
    flag (orthogonal errored bright states), in which case phi_b, z and
    the fidelity are NaN.
    """

    theta11: float
    theta22: float
    psi21: float
    delta1: float
    delta2: float
    eta_prime: float
    phi_b: float
    y: float
    z: float
    degenerate: bool


def fid2_relative(path: TwoLoopPath, error: RabiError) -> tuple[RelativeErrorBreakdown, float]:
    """Second-order two-loop fidelity under unequal drive errors.

    Computes the errored loop angles, decomposes the errored bright states
    to get (eta_prime, phi_b), and evaluates
    ``F = 1 - y^2/3 - pi^2 z^2/3`` with
    y^2 = theta11^2 + theta22^2 - 2 theta11 theta22 cos(psi21) and
    z^2 = delta1^2 + delta2^2 + 2 delta1 delta2 cos(eta'/2) cos(phi_b).
    At kappa = 0 this reduces exactly to the common-error formula.
    """
    t1p, d1 = schemes.relative_error_angles(path.loop1.theta, error)
    t2p, d2 = schemes.relative_error_angles(path.loop2.theta, error)
    errored = TwoLoopPath(
        schemes.LoopParams(t1p, path.loop1.psi, path.loop1.phi),
        schemes.LoopParams(t2p, path.loop2.psi, path.loop2.phi),
    )
    dec = schemes.phi_b_of(errored)
    theta11 = path.loop1.theta - t1p
    theta22 = path.loop2.theta - t2p
    psi21 = path.loop2.psi - path.loop1.psi
    y_sq = theta11**2 + theta22**2 - 2.0 * theta11 * theta22 * np.cos(psi21)
    z_sq = d1**2 + d2**2 + 2.0 * d1 * d2 * np.cos(dec.eta / 2.0) * np.cos(dec.phi_b)
    y = float(np.sqrt(np.maximum(0.0, y_sq)))
    z = float(np.sqrt(np.maximum(0.0, z_sq)))
    fidelity = float(1.0 - y * y / 3.0 - PI_SQ * z * z / 3.0)
    breakdown = RelativeErrorBreakdown(
        theta11=float(theta11),
        theta22=float(theta22),
        psi21=float(psi21),
        delta1=float(d1),
        delta2=float(d2),
        eta_prime=dec.eta,
        phi_b=dec.phi_b,
        y=y,
        z=z,
        degenerate=dec.degenerate,
    )
    return breakdown, fidelity


def dF_dkappa_at_zero(path: TwoLoopPath, epsilon: float) -> float:
    """First derivative of the relative-error fidelity in kappa at kappa = 0.

    Closed form -(2/3)(1 - cos(eta/2))(cos theta1 + cos theta2) pi^2 eps,
    valid for paths tuned to phi_b = pi.  Vanishes exactly when the loops
    are balanced (cos theta1 + cos theta2 = 0), when eta = 0, or at
    epsilon = 0.
    """
    e = _check_epsilon(epsilon)
    dec = schemes.phi_b_of(path)
    cos_sum = np.cos(path.loop1.theta) + np.cos(path.loop2.theta)
    return float(-(2.0 / 3.0) * (1.0 - np.cos(dec.eta / 2.0)) * cos_sum * PI_SQ * e)


def extract_quadratic_coefficient(samples, full_output: bool = False):
    """Least-squares quadratic error coefficient c in F(eps) ~ 1 - c eps^2.

    ``samples`` is a sequence of (epsilon, fidelity) pairs.  Every epsilon
    magnitude must appear with both signs; sign pairs are averaged first so
    odd-order contamination cancels.  With two or more magnitudes the
    residual quartic slope is fitted and removed (Richardson style); the fit
    residual is returned alongside c when ``full_output`` is set.
    """
    pairs = [(float(e), float(f)) for e, f in samples]
    if len(pairs) < 3:
        raise ValueError("need at least 3 (epsilon, fidelity) samples")
    eps = np.array([p[0] for p in pairs])
    fid = np.array([p[1] for p in pairs])
    if np.any(eps == 0.0):
        raise ValueError("epsilon samples must be nonzero")
    if np.any(fid <= 0.0) or np.any(fid > 1.0 + 1e-12):
        raise ValueError("fidelities must lie in (0, 1]")
    if np.unique(eps).size < 2:
        raise ValueError("ill-conditioned sample set: all epsilon values equal")
    mags = np.unique(np.abs(eps))
    u, g = [], []
    for m in mags:
        plus = fid[eps == m]
        minus = fid[eps == -m]
        if plus.size == 0 or minus.size == 0:
            raise ValueError(f"epsilon magnitude {m:g} lacks a +/- sign pair")
        f_even = 0.5 * (plus.mean() + minus.mean())
        u.append(m * m)
        g.append((1.0 - f_even) / (m * m))
    u = np.array(u)
    g = np.array(g)
    if mags.size == 1:
        coeff, residual = float(g[0]), 0.0
    else:
        design = np.column_stack([np.ones_like(u), u])
        (coeff, slope), *_ = np.linalg.lstsq(design, g, rcond=None)
        fitvals = coeff + slope * u
        residual = float(np.sqrt(np.mean((fitvals - g) ** 2)))
        coeff = float(coeff)
    if full_output:
        return coeff, residual
    return coeff


@dataclass(frozen=True)
class FidelityReport:
    """Exact vs second-order fidelity at one (scheme, path, error) point.

    The quadratic coefficients are extracted by the symmetric +/- probe
    protocol along the direction of the error point, normalized per unit
    hypot(epsilon, kappa)^2, from the exact propagators and from the
    second-order formulas respectively.
    """

    exact: float
    analytic2: float
    quad_coeff_exact: float
    quad_coeff_analytic: float


_SCHEMES = ("two-loop", "single-loop", "single-shot")


def fidelity_pair(scheme: str, path, error: RabiError) -> tuple[float, float]:
    """Exact and second-order fidelity for one scheme/path/error point."""
    if scheme == "two-loop":
        ideal = schemes.two_loop_ideal(path)
        if error.kappa != 0.0:
            exact = gate_fidelity(ideal, schemes.two_loop_errored_relative(path, error))
            analytic2 = fid2_relative(path, error)[1]
        else:
            exact = gate_fidelity(ideal, schemes.two_loop_errored(path, error))
            dec = schemes.phi_b_of(path)
            # at eta = pi the phi_b term is multiplied by cos(eta/2) = 0
            phi_b = 0.0 if dec.degenerate else dec.phi_b
            analytic2 = fid2_two_loop(dec.eta, phi_b, error.epsilon)
    elif scheme == "single-loop":
        exact = gate_fidelity(schemes.single_loop_ideal(path), schemes.single_loop_errored(path, error))
        analytic2 = fid2_single_loop(path.phase_diff, error.epsilon)
    elif scheme == "single-shot":
        exact = gate_fidelity(schemes.single_shot_ideal(path), schemes.single_shot_errored(path, error))
        analytic2 = fid2_single_shot(path.gamma, error.epsilon)
    else:
        raise ValueError(f"scheme must be one of {_SCHEMES}, got {scheme!r}")
    return exact, analytic2


def fidelity_report(scheme: str, path, error: RabiError, probe_magnitudes=(1e-3, 1e-4)) -> FidelityReport:
    """Full exact-vs-analytic comparison record for one error point."""
    exact, analytic2 = fidelity_pair(scheme, path, error)
    scale = float(np.hypot(error.epsilon, error.kappa))
    if scale == 0.0:
        direction = (1.0, 0.0)
    else:
        direction = (error.epsilon / scale, error.kappa / scale)

    def probe(kind: str) -> float:
        pts = []
        for mag in probe_magnitudes:
            for sign in (1.0, -1.0):
                probe_error = RabiError(sign * mag * direction[0], sign * mag * direction[1])
                pair = fidelity_pair(scheme, path, probe_error)
                pts.append((sign * mag, pair[0] if kind == "exact" else pair[1]))
        return extract_quadratic_coefficient(pts)

    return FidelityReport(
        exact=exact,
        analytic2=analytic2,
        quad_coeff_exact=probe("exact"),
        quad_coeff_analytic=probe("analytic"),
    )
