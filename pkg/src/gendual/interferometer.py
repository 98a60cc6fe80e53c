"""The generalized two-way interferometer BS(omega) -> U(m, phi) -> BS(omega)^-1.

Quantities come in two flavours: closed forms valid for the balanced beam
splitter (``omega = pi/2``), and a matrix/Bloch evolution that works for any
``omega``.  The two are cross-checked in the test-suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .qubit import (
    E_Y,
    IDENTITY,
    SIGMA_Z,
    as_axis,
    as_bloch,
    bloch_to_density,
    conjugate_state,
    rotation_matrix_y,
    rotation_unitary,
)

BALANCED = math.pi / 2
DEFAULT_GRID = 256
# omega is considered balanced when this close to pi/2
OMEGA_TOL = 1e-12

_MEASURE_MINUS = 0.5 * (IDENTITY - SIGMA_Z)


@dataclass(frozen=True)
class InterferometerConfig:
    """Beam-splitter angle, middle rotation axis and input Bloch vector."""

    omega: float = BALANCED
    axis: np.ndarray = field(default_factory=lambda: np.array([0.0, 0.0, 1.0]))
    input: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        object.__setattr__(self, "omega", float(self.omega))
        object.__setattr__(self, "axis", as_axis(self.axis))
        object.__setattr__(self, "input", as_bloch(self.input))

    @property
    def balanced(self) -> bool:
        return abs(self.omega - BALANCED) <= OMEGA_TOL

    def effective_axis(self) -> np.ndarray:
        """Axis of the overall rotation, i.e. ``m`` seen through the first BS."""
        if self.balanced:
            return t_vector(self.axis)
        return rotation_matrix_y(-self.omega) @ self.axis


@dataclass(frozen=True)
class FringeCurve:
    phis: np.ndarray
    probs: np.ndarray

    def __post_init__(self):
        phis = np.asarray(self.phis, dtype=float)
        probs = np.asarray(self.probs, dtype=float)
        if phis.shape != probs.shape:
            raise ValueError("phis and probs must have the same length")
        if phis.size > 1 and np.any(np.diff(phis) <= 0):
            raise ValueError("phis must be strictly increasing")
        if np.any((probs < 0) | (probs > 1)):
            raise ValueError("probabilities must lie in [0, 1]")
        object.__setattr__(self, "phis", phis)
        object.__setattr__(self, "probs", probs)

    @property
    def i_max(self) -> float:
        return float(self.probs.max())

    @property
    def i_min(self) -> float:
        return float(self.probs.min())

    def visibility(self) -> float:
        total = self.i_max + self.i_min
        if total <= 0:
            return 0.0
        return (self.i_max - self.i_min) / total


def t_vector(m) -> np.ndarray:
    """Image of the middle axis under the balanced beam splitter.

    ``t(m) = -m_z e_x + m_y e_y + m_x e_z``.
    """
    mx, my, mz = as_axis(m)
    t = np.array([-mz, my, mx])
    t.flags.writeable = False
    return t


def beam_splitter(omega: float) -> np.ndarray:
    """``exp(-i omega sigma_y / 2)``."""
    return rotation_unitary(E_Y, omega)


def overall_unitary(config: InterferometerConfig, phi: float) -> np.ndarray:
    """Matrix product ``BS^-1 U(phi) BS`` acting on the input state."""
    bs = beam_splitter(config.omega)
    u = rotation_unitary(config.axis, phi)
    return bs.conj().T @ u @ bs


def predictability(config: InterferometerConfig) -> float:
    """``|w+ - w-|`` after the first beam splitter."""
    sx, _, sz = config.input
    if config.balanced:
        return abs(float(sx))
    return abs(sz * math.cos(config.omega) - sx * math.sin(config.omega))


def detection_probability(config: InterferometerConfig, phi: float) -> float:
    """Probability of the -1 exit port, by evolving the Bloch vector step by step.

    Works for any beam-splitter angle.
    """
    s = rotation_matrix_y(config.omega) @ config.input
    m = config.axis
    c, sn = math.cos(phi), math.sin(phi)
    s = c * s + sn * np.cross(m, s) + (1.0 - c) * np.dot(m, s) * m
    s = rotation_matrix_y(-config.omega) @ s
    return min(1.0, max(0.0, 0.5 * (1.0 - s[2])))


def detection_probability_matrix(config: InterferometerConfig, phi: float) -> float:
    """Matrix-evolution oracle: ``tr[(1 - sigma_z)/2 W rho W^dagger]``."""
    w = overall_unitary(config, phi)
    rho_f = conjugate_state(w, bloch_to_density(config.input))
    return float(np.trace(_MEASURE_MINUS @ rho_f).real)


def _require_balanced(config: InterferometerConfig, what: str):
    if not config.balanced:
        raise ValueError(
            f"{what} closed form holds only for omega = pi/2 (got {config.omega!r}); "
            "use visibility_scan for unbalanced beam splitters"
        )


def _fringe_terms(config: InterferometerConfig) -> tuple[float, float, float]:
    """Offset, cos and sin amplitudes ``(1 - k, b, c)`` with ``p = (1 - k - b cos - c sin)/2``."""
    t = t_vector(config.axis)
    s = config.input
    ts = float(np.dot(t, s))
    k = ts * t[2]
    b = s[2] - k
    c = t[0] * s[1] - t[1] * s[0]
    return 1.0 - k, b, c


def detection_probability_closed_form(config: InterferometerConfig, phi: float) -> float:
    """Closed-form fringe for the balanced interferometer."""
    _require_balanced(config, "detection probability")
    offset, b, c = _fringe_terms(config)
    return 0.5 * (offset - b * math.cos(phi) - c * math.sin(phi))


def visibility_closed_form(config: InterferometerConfig) -> float:
    """Fringe visibility for ``omega = pi/2``.

    Returns 0 when the fringe mean vanishes, which only happens for
    ``s = e_z = t``, where the probability itself is identically zero.
    """
    _require_balanced(config, "visibility")
    offset, b, c = _fringe_terms(config)
    if offset <= 2 * _kernels.DEGENERATE_MEAN:
        return 0.0
    return math.sqrt((b * b + c * c) / (offset * offset))


def sinusoid_coefficients(config: InterferometerConfig) -> tuple[float, float, float]:
    """Exact ``(A, B, C)`` of ``p(phi) = A - B cos(phi) - C sin(phi)`` from three phases."""
    p0 = detection_probability(config, 0.0)
    p_half = detection_probability(config, 0.5 * math.pi)
    p_pi = detection_probability(config, math.pi)
    a = 0.5 * (p0 + p_pi)
    return a, 0.5 * (p_pi - p0), a - p_half


def fringe_curve(config: InterferometerConfig, n_points: int = DEFAULT_GRID) -> FringeCurve:
    """Sample ``p(phi)`` on ``n_points`` uniform phases in ``[0, 2 pi)``."""
    phis = 2 * math.pi * np.arange(n_points) / n_points
    return FringeCurve(phis, _kernels.fringe(config.effective_axis(), config.input, phis))


def visibility_scan(config: InterferometerConfig, n_points: int = DEFAULT_GRID) -> float:
    """Visibility of the recovered sinusoid; valid for any ``omega``.

    For ``n_points >= 10**4`` the result is additionally checked against the
    raw extrema of a dense phase grid (agreement within 1e-6 required).
    """
    if n_points < 3:
        raise ValueError("visibility_scan needs n_points >= 3")
    a, b, c = sinusoid_coefficients(config)
    vis = 0.0 if a <= _kernels.DEGENERATE_MEAN else math.hypot(b, c) / a
    if n_points >= 10_000:
        dense = fringe_curve(config, n_points).visibility()
        if abs(dense - vis) > 1e-6:
            raise RuntimeError(
                f"dense-grid visibility {dense!r} disagrees with sinusoid fit {vis!r}"
            )
    return vis


def final_bloch(config: InterferometerConfig, phi: float) -> np.ndarray:
    """Bloch vector after the whole interferometer at phase ``phi``."""
    t = config.effective_axis()
    s = config.input
    c, sn = math.cos(phi), math.sin(phi)
    return c * s + sn * np.cross(t, s) + (1.0 - c) * np.dot(t, s) * t
