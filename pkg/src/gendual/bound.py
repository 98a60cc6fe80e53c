"""Maximum of the duality sum over all input states for a fixed middle unitary."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .interferometer import BALANCED, InterferometerConfig
from .qubit import as_axis

GRID_POINTS = 10_000
SHELLS = (0.25, 0.5, 0.75)
STEP_TOL = 1e-6
INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class DualityBound:
    l_max: float
    argmax_state: np.ndarray
    iterations: int
    grid_resolution: int
    grid_best: float = math.nan
    evaluations: int = 0

    def as_dict(self) -> dict:
        return {
            "l_max": self.l_max,
            "argmax_state": [float(v) for v in self.argmax_state],
            "argmax_norm": float(np.linalg.norm(self.argmax_state)),
            "iterations": self.iterations,
            "grid_resolution": self.grid_resolution,
            "grid_best": self.grid_best,
            "evaluations": self.evaluations,
        }


def golden_section_max(f, a: float, b: float, tol: float) -> tuple[float, float]:
    """Maximise a unimodal ``f`` on ``[a, b]``; returns ``(x, f(x))``.

    The endpoints are compared with the interior optimum so that a maximum on
    the bracket edge is not lost.
    """
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    x, fx = (c, fc) if fc >= fd else (d, fd)
    for edge in (a, b):
        fe = f(edge)
        if fe > fx:
            x, fx = edge, fe
    return x, fx


def _local_frame(u: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Orthonormal frame whose first vector is ``u``."""
    helper = np.array([1.0, 0.0, 0.0]) if abs(u[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e2 = np.cross(u, helper)
    e2 /= np.linalg.norm(e2)
    e3 = np.cross(u, e2)
    return u, e2, e3


def l_max(axis, omega: float = BALANCED, grid_points: int = GRID_POINTS) -> DualityBound:
    """Largest duality sum over the Bloch ball for middle axis ``axis``.

    A Fibonacci lattice on the unit sphere plus three inner shells is
    scanned first; the best lattice point is then refined by cyclic
    golden-section searches over (polar, azimuth, radius) in a local frame
    centred on it, halving the search window until it is below ``1e-6``.
    """
    m = as_axis(axis)
    t = InterferometerConfig(omega=omega, axis=m).effective_axis()

    sphere = _kernels.fibonacci_sphere(grid_points)
    states = np.concatenate([sphere] + [r * sphere for r in SHELLS])
    sums = _kernels.duality_batch(t, omega, states)[:, 2]
    best = int(np.argmax(sums))
    grid_best = float(sums[best])
    radius0 = float(np.linalg.norm(states[best]))
    evaluations = len(states)

    e1, e2, e3 = _local_frame(states[best] / radius0)

    def state(pol, az, r):
        sp = math.sin(pol)
        return r * (sp * math.cos(az) * e1 + sp * math.sin(az) * e2 + math.cos(pol) * e3)

    def objective(pol, az, r):
        nonlocal evaluations
        evaluations += 1
        pred, vis = _kernels.duality_point(t, omega, state(pol, az, r))
        return pred * pred + vis * vis

    # local coordinates: the lattice point sits at pol = pi/2, az = 0
    x = [0.5 * math.pi, 0.0, radius0]
    fx = objective(*x)
    spacing = math.sqrt(4.0 * math.pi / grid_points)
    half = 4.0 * spacing
    r_half = 0.25
    iterations = 0
    while half >= STEP_TOL or r_half >= STEP_TOL:
        iterations += 1
        start = list(x)
        windows = (half, half, r_half)
        for k in range(3):
            lo, hi = x[k] - windows[k], x[k] + windows[k]
            if k == 2:
                lo, hi = max(0.0, lo), min(1.0, hi)

            def line(v, k=k):
                y = list(x)
                y[k] = v
                return objective(*y)

            v, fv = golden_section_max(line, lo, hi, 1e-3 * windows[k])
            if fv >= fx:
                x[k], fx = v, fv
        moved = max(abs(x[k] - start[k]) for k in range(2))
        # keep the window while the iterate is still travelling
        if moved < 0.5 * half:
            half *= 0.5
        if abs(x[2] - start[2]) < 0.5 * r_half:
            r_half *= 0.5
        if iterations > 500:
            break

    s_best = state(*x)
    value = fx
    if grid_best > value:
        s_best, value = states[best], grid_best
    return DualityBound(
        l_max=float(value),
        argmax_state=np.array(s_best),
        iterations=iterations,
        grid_resolution=grid_points,
        grid_best=grid_best,
        evaluations=evaluations,
    )
