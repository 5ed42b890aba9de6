"""Complex linear algebra on the three-level basis (|0>, |1>, |e>).

Every gate and generator in this package is a dense 3x3 complex array over
the fixed basis order (|0>, |1>, |e>): the two logical states first, the
ancillary excited state last.  Hermitian generators carry the operator
structure of the Hamiltonian with the scalar pulse envelope factored out,
so propagators are formed as ``exp(-1j * angle * generator)`` where
``angle`` is the accumulated pulse area.
"""

from __future__ import annotations

import numpy as np

#: tolerance for algebraic identities (unitarity, hermiticity)
ATOL_ALGEBRAIC = 1e-12
#: tolerance for structural checks (block-diagonal form, Lambda form)
ATOL_STRUCTURAL = 1e-10

KET_0, KET_1, KET_E = np.eye(3, dtype=complex)

IDENTITY = np.eye(3, dtype=complex)
PROJ_E = np.outer(KET_E, KET_E.conj())

# Pauli operators acting on the logical subspace, embedded in the 3x3 space
# (they annihilate |e>).
SIGMA_X = np.array([[0, 1, 0], [1, 0, 0], [0, 0, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j, 0], [1j, 0, 0], [0, 0, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0, 0], [0, -1, 0], [0, 0, 0]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)

PAULI_QUBIT = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


class ContractViolation(ValueError):
    """An operand failed a matrix contract (hermiticity, unitarity, block form)."""


def _as_matrix(matrix, name: str) -> np.ndarray:
    m = np.asarray(matrix, dtype=complex)
    if m.shape != (3, 3):
        raise ContractViolation(f"{name} must be a 3x3 complex matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.view(float))):
        raise ContractViolation(f"{name} contains non-finite entries")
    return m


def is_hermitian(matrix, atol: float = ATOL_ALGEBRAIC) -> bool:
    m = np.asarray(matrix, dtype=complex)
    return m.shape == (3, 3) and bool(np.max(np.abs(m - m.conj().T)) <= atol)


def is_unitary(matrix, atol: float = ATOL_ALGEBRAIC) -> bool:
    m = np.asarray(matrix, dtype=complex)
    return m.shape == (3, 3) and bool(np.max(np.abs(m.conj().T @ m - IDENTITY)) <= atol)


def require_hermitian(matrix, name: str = "generator", atol: float = ATOL_ALGEBRAIC) -> np.ndarray:
    m = _as_matrix(matrix, name)
    dev = np.max(np.abs(m - m.conj().T))
    if dev > atol:
        raise ContractViolation(f"{name} is not Hermitian (max |M - M^dag| = {dev:.3e})")
    return m


def require_unitary(matrix, name: str = "matrix", atol: float = ATOL_ALGEBRAIC) -> np.ndarray:
    m = _as_matrix(matrix, name)
    dev = np.max(np.abs(m.conj().T @ m - IDENTITY))
    if dev > atol:
        raise ContractViolation(f"{name} is not unitary (max |U^dag U - I| = {dev:.3e})")
    return m


def projector(ket) -> np.ndarray:
    """Rank-one projector |k><k| of a length-3 amplitude vector."""
    k = np.asarray(ket, dtype=complex)
    return np.outer(k, k.conj())


def pauli_dot(axis) -> np.ndarray:
    """n . sigma on the logical subspace, embedded as a 3x3 operator."""
    n = np.asarray(axis, dtype=float)
    return n[0] * SIGMA_X + n[1] * SIGMA_Y + n[2] * SIGMA_Z


def qubit_rotation(theta_gate: float, axis) -> np.ndarray:
    """The logical gate exp(1j * theta_gate * n.sigma) as a 2x2 matrix."""
    n = np.asarray(axis, dtype=float)
    ns = n[0] * PAULI_QUBIT[0] + n[1] * PAULI_QUBIT[1] + n[2] * PAULI_QUBIT[2]
    return np.cos(theta_gate) * np.eye(2) + 1j * np.sin(theta_gate) * ns


def is_lambda_form(generator, atol: float = ATOL_STRUCTURAL) -> bool:
    """True when the generator couples only the logical states to |e>.

    Lambda form means the logical block and the <e|G|e> entry vanish, i.e.
    G = |w><e| + |e><w| for some (unnormalized) logical vector |w>.
    """
    g = np.asarray(generator, dtype=complex)
    if g.shape != (3, 3):
        return False
    return bool(max(np.max(np.abs(g[:2, :2])), abs(g[2, 2])) <= atol)


def _expm_closed(generator: np.ndarray, angle: float) -> np.ndarray:
    # rank-2 structure: the generator acts as r * sigma_x on span{|b>, |e>}
    # and annihilates the orthogonal dark direction.
    w = generator[:2, 2]
    r = np.linalg.norm(w)
    if r == 0.0:
        return IDENTITY.copy()
    bright = np.array([w[0] / r, w[1] / r, 0.0], dtype=complex)
    proj_be = projector(bright) + PROJ_E
    cross = np.outer(bright, KET_E.conj()) + np.outer(KET_E, bright.conj())
    a = angle * r
    return IDENTITY - (1.0 - np.cos(a)) * proj_be - 1j * np.sin(a) * cross


def _expm_eig(generator: np.ndarray, angle: float) -> np.ndarray:
    vals, vecs = np.linalg.eigh(generator)
    return (vecs * np.exp(-1j * angle * vals)) @ vecs.conj().T


def expm(generator, angle: float, method: str = "auto") -> np.ndarray:
    """Unitary propagator exp(-1j * angle * generator) of a Hermitian generator.

    Parameters
    ----------
    generator : array_like
        3x3 Hermitian operator structure (envelope factored out).
    angle : float
        Accumulated pulse area multiplying the generator.
    method : {"auto", "closed", "eig"}
        "closed" uses the rank-2 bright/excited form and requires a
        Lambda-form generator; "eig" diagonalizes the Hermitian generator
        (exact for this size); "auto" picks "closed" when the generator is
        in Lambda form.  Both paths agree entrywise to ~1e-15.

    Returns
    -------
    numpy.ndarray
        3x3 unitary matrix.
    """
    g = require_hermitian(generator)
    if not np.isfinite(angle):
        raise ValueError(f"angle must be finite, got {angle!r}")
    if method == "auto":
        method = "closed" if is_lambda_form(g) else "eig"
    if method == "closed":
        if not is_lambda_form(g):
            raise ContractViolation("closed-form expm requires a Lambda-form generator")
        return _expm_closed(g, float(angle))
    if method == "eig":
        return _expm_eig(g, float(angle))
    raise ValueError(f"unknown expm method {method!r}")


def gate_fidelity(ideal, errored) -> float:
    """Trace fidelity |Tr(V^dag V_e)| / Tr(V^dag V) between two unitaries.

    The denominator equals the dimension (3) once both operands pass the
    unitarity contract.  Global phases of either argument drop out, and the
    value lies in [0, 1].
    """
    v = require_unitary(ideal, "ideal")
    ve = require_unitary(errored, "errored")
    return float(abs(np.trace(v.conj().T @ ve)) / 3.0)


def is_block_diagonal(matrix, atol: float = ATOL_STRUCTURAL) -> bool:
    """True when the matrix does not mix the logical subspace with |e>."""
    m = np.asarray(matrix, dtype=complex)
    if m.shape != (3, 3):
        return False
    off = max(abs(m[0, 2]), abs(m[1, 2]), abs(m[2, 0]), abs(m[2, 1]))
    return bool(off <= atol)


def qubit_block(matrix) -> np.ndarray:
    """Logical 2x2 block of a block-diagonal 3x3 operator."""
    m = _as_matrix(matrix, "matrix")
    if not is_block_diagonal(m):
        raise ContractViolation("matrix is not block-diagonal over the qubit/|e> split")
    return m[:2, :2].copy()


def projective_distance_qubit(a, b) -> float:
    """Global-phase-quotiented distance between the qubit blocks of two gates.

    Returns ``min over chi of max-entry-modulus of (A - exp(1j chi) B)``
    where A, B are the logical blocks.  Zero (to roundoff) exactly when the
    blocks agree up to a global phase.  The minimization combines the exact
    trace-alignment candidate with a refined grid search; away from zero
    the returned minimum is accurate to ~1e-6 in chi, which is ample for
    the structural checks this backs.
    """
    ma = require_unitary(a, "a")
    mb = require_unitary(b, "b")
    qa, qb = qubit_block(ma), qubit_block(mb)

    def dist(chi: float) -> float:
        return float(np.max(np.abs(qa - np.exp(1j * chi) * qb)))

    best = np.inf
    overlap = np.trace(qb.conj().T @ qa)
    if abs(overlap) > 1e-15:
        best = dist(float(np.angle(overlap)))
    grid = np.linspace(0.0, 2.0 * np.pi, 1024, endpoint=False)
    values = [dist(c) for c in grid]
    k = int(np.argmin(values))
    best = min(best, values[k])
    center, span = grid[k], 2.0 * np.pi / 1024
    for _ in range(3):
        local = np.linspace(center - span, center + span, 33)
        vals = [dist(c) for c in local]
        j = int(np.argmin(vals))
        best = min(best, vals[j])
        center, span = local[j], span / 16.0
    return best
