"""Monte Carlo of the repeated path measurement and sinusoidal fringe fitting."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .interferometer import InterferometerConfig

RNG_NAME = "numpy.PCG64/SeedSequence(seed,spawn_key=(point,))/binomial"


@dataclass(frozen=True)
class ExperimentPlan:
    config: InterferometerConfig
    phi_points: int
    shots_per_point: int
    seed: int
    rng_name: str = RNG_NAME

    def __post_init__(self):
        if self.phi_points < 3:
            raise ValueError("phi_points must be >= 3")
        if self.shots_per_point < 1:
            raise ValueError("shots_per_point must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.rng_name != RNG_NAME:
            raise ValueError(f"unsupported rng {self.rng_name!r}; only {RNG_NAME!r}")

    def phis(self) -> np.ndarray:
        return 2 * math.pi * np.arange(self.phi_points) / self.phi_points


@dataclass(frozen=True)
class FringeFit:
    a: float
    b: float
    c: float
    i_max: float
    i_min: float
    visibility_hat: float
    std_error: float

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def point_rng(seed: int, index: int) -> np.random.Generator:
    """Independent generator for one phase point; order of sampling is irrelevant."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,))))


def sample_counts(plan: ExperimentPlan) -> list[tuple[float, int, int]]:
    """Draw the number of -1 outcomes at every phase of the plan."""
    phis = plan.phis()
    probs = _kernels.fringe(plan.config.effective_axis(), plan.config.input, phis)
    out = []
    for k, (phi, p) in enumerate(zip(phis, probs)):
        hits = point_rng(plan.seed, k).binomial(plan.shots_per_point, p)
        out.append((float(phi), int(hits), plan.shots_per_point))
    return out


def fit_fringe(counts) -> FringeFit:
    """Least-squares fit of ``a - b cos(phi) - c sin(phi)`` to observed frequencies.

    The visibility standard error propagates the binomial variance of each
    frequency (evaluated at the fitted curve) through the linear fit and the
    map ``(a, b, c) -> sqrt(b**2 + c**2) / a``.
    """
    rows = np.asarray(counts, dtype=float).reshape(-1, 3)
    phis, hits, shots = rows.T
    if np.unique(np.round(np.mod(phis, 2 * math.pi), 12)).size < 3:
        raise ValueError("fringe fit needs at least 3 distinct phases")
    if np.any(shots <= 0):
        raise ValueError("every point needs at least one shot")
    freq = hits / shots

    design = np.stack([np.ones_like(phis), -np.cos(phis), -np.sin(phis)], axis=1)
    normal = design.T @ design
    a, b, c = np.linalg.solve(normal, design.T @ freq)
    amp = math.hypot(b, c)
    i_max, i_min = a + amp, a - amp

    if a <= 1e-12:
        return FringeFit(a, b, c, i_max, i_min, 0.0, math.inf)

    fitted = np.clip(design @ np.array([a, b, c]), 0.0, 1.0)
    var = fitted * (1.0 - fitted) / shots
    inv = np.linalg.inv(normal)
    cov = inv @ (design.T * var) @ design @ inv
    vis = amp / a
    if amp > 0:
        grad = np.array([-vis / a, b / (a * amp), c / (a * amp)])
        err = math.sqrt(max(grad @ cov @ grad, 0.0))
    else:
        err = math.sqrt(max(cov[1, 1] + cov[2, 2], 0.0)) / a
    return FringeFit(a, b, c, i_max, i_min, vis, err)
