"""Batched density-matrix evolution, used as ground truth for the closed forms.

Nothing here goes through Bloch-vector formulas: states are 2x2 density
matrices, the interferometer is a product of 2x2 unitaries, and outcomes are
traces against projectors.
"""

from __future__ import annotations

import numpy as np

from .qubit import IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z

_P_MINUS = 0.5 * (IDENTITY - SIGMA_Z)
_P_PLUS = 0.5 * (IDENTITY + SIGMA_Z)


def _su2(axes: np.ndarray, angles: np.ndarray) -> np.ndarray:
    """``exp(-i angle n.sigma/2)`` for a batch; returns ``(n, 2, 2)``."""
    axes = np.asarray(axes, dtype=float).reshape(-1, 3)
    half = 0.5 * np.broadcast_to(np.asarray(angles, dtype=float), axes.shape[:1])
    ns = np.einsum("nk,kij->nij", axes, np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z]))
    return np.cos(half)[:, None, None] * IDENTITY - 1j * np.sin(half)[:, None, None] * ns


def densities(states: np.ndarray) -> np.ndarray:
    s = np.asarray(states, dtype=float).reshape(-1, 3)
    ns = np.einsum("nk,kij->nij", s, np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z]))
    return 0.5 * (IDENTITY + ns)


def _sandwich(u: np.ndarray, rho: np.ndarray) -> np.ndarray:
    return u @ rho @ np.conj(np.swapaxes(u, -1, -2))


def path_probabilities(omegas, states) -> tuple[np.ndarray, np.ndarray]:
    """``(w+, w-)`` after the first beam splitter."""
    n = np.asarray(states).reshape(-1, 3).shape[0]
    ey = np.tile([0.0, 1.0, 0.0], (n, 1))
    rho1 = _sandwich(_su2(ey, omegas), densities(states))
    w_plus = np.einsum("ij,nji->n", _P_PLUS, rho1).real
    w_minus = np.einsum("ij,nji->n", _P_MINUS, rho1).real
    return w_plus, w_minus


def detection_probabilities(omegas, axes, states, phis) -> np.ndarray:
    """Probability of the -1 port after BS, U(axis, phi), BS^-1, per row."""
    axes = np.asarray(axes, dtype=float).reshape(-1, 3)
    n = axes.shape[0]
    ey = np.tile([0.0, 1.0, 0.0], (n, 1))
    omegas = np.broadcast_to(np.asarray(omegas, dtype=float), (n,))
    bs = _su2(ey, omegas)
    w = np.conj(np.swapaxes(bs, -1, -2)) @ _su2(axes, phis) @ bs
    rho_f = _sandwich(w, densities(states))
    return np.einsum("ij,nji->n", _P_MINUS, rho_f).real


def duality(omegas, axes, states) -> tuple[np.ndarray, np.ndarray]:
    """Predictability and visibility from matrix evolution only.

    The fringe ``p(phi)`` of a single-qubit rotation is an exact sinusoid, so
    its mean and amplitude follow from the phases 0, pi/2 and pi.
    """
    w_plus, w_minus = path_probabilities(omegas, states)
    pred = np.abs(w_plus - w_minus)
    n = np.asarray(axes).reshape(-1, 3).shape[0]
    p = [detection_probabilities(omegas, axes, states, np.full(n, phi)) for phi in (0.0, np.pi / 2, np.pi)]
    a = 0.5 * (p[0] + p[2])
    b = 0.5 * (p[2] - p[0])
    c = a - p[1]
    vis = np.where(a > 1e-15, np.hypot(b, c) / np.where(a > 1e-15, a, 1.0), 0.0)
    return pred, vis
