"""Closed-form landscapes of the duality sum P**2 + V**2.

All functions broadcast over numpy arrays.  ``duality_sum`` is the
first-principles route through :mod:`gendual.interferometer`; the remaining
functions are closed forms for input states ``s = s_x e_x`` that the tests
check against it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .interferometer import (
    InterferometerConfig,
    predictability,
    visibility_closed_form,
    visibility_scan,
)

DOMAIN_TOL = 1e-12


@dataclass(frozen=True)
class SphericalAxis:
    """Polar angle ``theta`` from +z and azimuth ``xi`` from +x."""

    theta: float
    xi: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        object.__setattr__(self, "xi", float(self.xi) % (2 * math.pi))

    def to_axis(self) -> np.ndarray:
        return spherical_axis(self.theta, self.xi)

    @classmethod
    def from_axis(cls, m) -> "SphericalAxis":
        mx, my, mz = np.asarray(m, dtype=float)
        theta = math.atan2(math.hypot(mx, my), mz)
        xi = math.atan2(my, mx) % (2 * math.pi)
        return cls(theta, xi)

    @property
    def m_perp(self) -> np.ndarray:
        return math.cos(self.theta) * np.array([0.0, 0.0, 1.0])

    @property
    def m_plane(self) -> np.ndarray:
        st = math.sin(self.theta)
        return st * np.array([math.cos(self.xi), math.sin(self.xi), 0.0])


def spherical_axis(theta, xi) -> np.ndarray:
    st = math.sin(theta)
    return np.array([st * math.cos(xi), st * math.sin(xi), math.cos(theta)])


@dataclass(frozen=True)
class DualityResult:
    predictability: float
    visibility: float

    @property
    def sum(self) -> float:
        return self.predictability**2 + self.visibility**2

    def as_dict(self) -> dict:
        return {
            "predictability": self.predictability,
            "visibility": self.visibility,
            "sum": self.sum,
        }


def duality_sum(config: InterferometerConfig) -> DualityResult:
    """Predictability and visibility of one configuration.

    Uses the balanced closed form when ``omega = pi/2`` and the recovered
    sinusoid otherwise.
    """
    vis = visibility_closed_form(config) if config.balanced else visibility_scan(config)
    return DualityResult(predictability(config), vis)


def F_spherical(s_x, theta, xi):
    """Duality sum for ``s = s_x e_x`` and the middle axis at spherical angles."""
    s_x, theta, xi = np.broadcast_arrays(*(np.asarray(a, dtype=float) for a in (s_x, theta, xi)))
    st, ct = np.sin(theta), np.cos(theta)
    cx, sx_ = np.cos(xi), np.sin(xi)
    num = st**2 * (ct**2 * cx**2 + sx_**2)
    den = (1.0 + s_x * st * ct * cx) ** 2
    return _scalarize(np.abs(s_x) ** 2 * (1.0 + num / den))


def F_pure(theta, xi):
    """``F_spherical`` for the pure input ``e_x``."""
    theta, xi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(xi, float))
    st, ct = np.sin(theta), np.cos(theta)
    num = st**2 * ct**2 * np.cos(xi) ** 2 + st**2 * np.sin(xi) ** 2
    return _scalarize(1.0 + num / (1.0 + st * ct * np.cos(xi)) ** 2)


def in_cartesian_domain(m_x, m_z):
    return np.asarray(m_x) ** 2 + np.asarray(m_z) ** 2 <= 1.0 + DOMAIN_TOL


def f_cartesian(m_x, m_z):
    """Pure-state duality sum in terms of the x and z components of the axis.

    Raises ``ValueError`` when ``m_x**2 + m_z**2 > 1`` anywhere (no real m_y).
    """
    m_x, m_z = np.broadcast_arrays(np.asarray(m_x, float), np.asarray(m_z, float))
    if not np.all(in_cartesian_domain(m_x, m_z)):
        raise ValueError("m_x**2 + m_z**2 exceeds 1: no unit axis has these components")
    return _scalarize(1.0 + (1.0 - m_x**2) * (1.0 - m_z**2) / (1.0 + m_z * m_x) ** 2)


def f_rotated(s_x, m_x_prime):
    """Duality sum with the axis restricted to the (e_y, e_x') plane.

    ``e_x' = (e_x + e_z)/sqrt(2)``; ``m_x_prime`` runs from 0 (axis e_y) to 1
    (axis e_x').
    """
    s_x, mxp = np.broadcast_arrays(np.asarray(s_x, float), np.asarray(m_x_prime, float))
    h = mxp**2 / 2.0
    return _scalarize(s_x**2 + s_x**2 * (1.0 - h) ** 2 / (1.0 + s_x * h) ** 2)


def _omega_bracket(theta, xi, omega):
    return (
        np.sin(2 * theta) * np.cos(2 * omega) * np.sin(xi)
        + np.sin(2 * omega) * np.cos(2 * theta)
        + np.sin(2 * omega) * np.sin(theta) ** 2 * np.cos(xi) ** 2
    )


def duality_sum_omega_paper(s_x, theta, xi, omega):
    """Literal transcription of the unbalanced-splitter formula as printed.

    Kept for cross-checking only.  It does not share the azimuth convention
    of :func:`F_spherical`; see ``gendual.consistency`` for the measured
    residuals against the matrix oracle.
    """
    s_x, theta, xi, omega = np.broadcast_arrays(
        *(np.asarray(a, dtype=float) for a in (s_x, theta, xi, omega))
    )
    g = _omega_bracket(theta, xi, omega)
    num = 0.25 * g**2 + np.sin(theta) ** 2 * np.cos(xi) ** 2
    den = (1.0 - 0.5 * s_x * g) ** 2
    return _scalarize(s_x**2 * (np.sin(omega) ** 2 + num / den))


def duality_sum_omega(s_x, theta, xi, omega):
    """Closed form for ``s = s_x e_x`` and any beam-splitter angle.

    Derived from the effective axis ``R_y(-omega) m``; agrees with the
    first-principles pipeline for every ``omega``.
    """
    s_x, theta, xi, omega = np.broadcast_arrays(
        *(np.asarray(a, dtype=float) for a in (s_x, theta, xi, omega))
    )
    st, ct = np.sin(theta), np.cos(theta)
    mx, my, mz = st * np.cos(xi), st * np.sin(xi), ct
    tx = np.cos(omega) * mx - np.sin(omega) * mz
    tz = np.sin(omega) * mx + np.cos(omega) * mz
    k = tx * tz
    vis2 = s_x**2 * (k**2 + my**2) / (1.0 - s_x * k) ** 2
    return _scalarize(s_x**2 * np.sin(omega) ** 2 + vis2)


def _scalarize(a: np.ndarray):
    return float(a) if a.ndim == 0 else a
