"""Single-qubit primitives: Bloch vectors, density matrices and SU(2) rotations.

Bloch vectors and axes are plain read-only ``numpy`` arrays of shape ``(3,)``;
density matrices and unitaries are read-only ``(2, 2)`` complex arrays.  The
``as_*`` helpers validate and freeze their input.
"""

from __future__ import annotations

import numpy as np

TOL = 1e-12

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)

for _m in (IDENTITY, *PAULI):
    _m.flags.writeable = False

E_X = np.array([1.0, 0.0, 0.0])
E_Y = np.array([0.0, 1.0, 0.0])
E_Z = np.array([0.0, 0.0, 1.0])
for _v in (E_X, E_Y, E_Z):
    _v.flags.writeable = False


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.flags.writeable = False
    return a


def as_bloch(s) -> np.ndarray:
    """Validate a Bloch vector (``|s| <= 1``) and return a frozen float copy."""
    v = np.asarray(s, dtype=float).reshape(-1)
    if v.shape != (3,):
        raise ValueError(f"Bloch vector needs 3 components, got {v.size}")
    if not np.all(np.isfinite(v)):
        raise ValueError("Bloch vector has non-finite components")
    norm = float(np.linalg.norm(v))
    if norm > 1.0 + TOL:
        raise ValueError(f"nonphysical state: |s| = {norm:.15g} > 1")
    return _frozen(v)


def as_axis(m, normalize: bool = False) -> np.ndarray:
    """Validate a unit rotation axis.

    With ``normalize=True`` any non-zero finite vector is rescaled to unit
    length instead of being rejected.
    """
    v = np.asarray(m, dtype=float).reshape(-1)
    if v.shape != (3,):
        raise ValueError(f"axis needs 3 components, got {v.size}")
    if not np.all(np.isfinite(v)):
        raise ValueError("axis has non-finite components")
    norm = float(np.linalg.norm(v))
    if normalize:
        if norm < 1e-300:
            raise ValueError("cannot normalize a zero axis")
        v = v / norm
    elif abs(norm - 1.0) > TOL:
        raise ValueError(f"axis is not unit-norm: |m| = {norm:.15g}")
    return _frozen(v)


def is_hermitian(rho: np.ndarray, tol: float = TOL) -> bool:
    return bool(np.all(np.abs(rho - rho.conj().T) <= tol))


def as_density(rho) -> np.ndarray:
    r = np.asarray(rho, dtype=complex)
    if r.shape != (2, 2):
        raise ValueError(f"density matrix must be 2x2, got {r.shape}")
    if not is_hermitian(r):
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(r) - 1.0) > TOL:
        raise ValueError(f"density matrix trace {np.trace(r)} != 1")
    if np.linalg.eigvalsh(r).min() < -TOL:
        raise ValueError("density matrix has a negative eigenvalue")
    return _frozen(r)


def unitarity_residual(u: np.ndarray) -> float:
    """Largest entrywise deviation of ``u u^dagger`` from the identity."""
    u = np.asarray(u, dtype=complex)
    return float(np.max(np.abs(u @ u.conj().T - IDENTITY)))


def as_unitary(u, tol: float = TOL) -> np.ndarray:
    m = np.asarray(u, dtype=complex)
    if m.shape != (2, 2):
        raise ValueError(f"unitary must be 2x2, got {m.shape}")
    res = unitarity_residual(m)
    if not res <= tol:
        raise ValueError(f"matrix is not unitary (residual {res:.3g} > {tol:.0e})")
    return _frozen(m)


def bloch_to_density(s) -> np.ndarray:
    """Return ``(1 + s.sigma) / 2``."""
    x, y, z = as_bloch(s)
    rho = 0.5 * np.array([[1 + z, x - 1j * y], [x + 1j * y, 1 - z]], dtype=complex)
    return _frozen(rho)


def density_to_bloch(rho) -> np.ndarray:
    """Inverse of :func:`bloch_to_density`; components are ``tr(rho sigma_k)``."""
    r = as_density(rho)
    s = np.array([np.trace(r @ p).real for p in PAULI])
    return _frozen(s)


def pauli_dot(n) -> np.ndarray:
    nx, ny, nz = n
    return nx * SIGMA_X + ny * SIGMA_Y + nz * SIGMA_Z


def rotation_unitary(axis, angle: float) -> np.ndarray:
    """``exp(-i angle n.sigma / 2)`` for unit axis ``n``."""
    n = as_axis(axis)
    half = 0.5 * angle
    u = np.cos(half) * IDENTITY - 1j * np.sin(half) * pauli_dot(n)
    return _frozen(u)


def rotate_bloch(axis, angle: float, s) -> np.ndarray:
    """Rotate ``s`` by ``angle`` about ``axis`` (Rodrigues' formula)."""
    t = as_axis(axis)
    v = as_bloch(s)
    c, sn = np.cos(angle), np.sin(angle)
    out = c * v + sn * np.cross(t, v) + (1.0 - c) * np.dot(t, v) * t
    return _frozen(out)


def conjugate_state(u, rho) -> np.ndarray:
    """Return ``u rho u^dagger``."""
    m = np.asarray(u, dtype=complex)
    r = np.asarray(rho, dtype=complex)
    return _frozen(m @ r @ m.conj().T)


def rotation_matrix_y(angle: float) -> np.ndarray:
    """SO(3) matrix of a Bloch-sphere rotation by ``angle`` about e_y."""
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])
