"""Batched numeric kernels.

Every hot kernel exists twice: a numba ``@njit`` loop and a vectorised numpy
expression.  The public names dispatch to the numba version unless numba is
missing or ``GENDUAL_DISABLE_NUMBA`` is set to a truthy value, in which case
the numpy path is used.  Both paths are tested against each other and timed
in ``benchmarks/bench_kernels.py``.
"""

from __future__ import annotations

import math
import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f


def _env_disabled() -> bool:
    flag = os.environ.get("GENDUAL_DISABLE_NUMBA", "").strip().lower()
    return flag not in ("", "0", "false", "no")


USE_NUMBA = HAVE_NUMBA and not _env_disabled()

# A sinusoid whose mean falls below this is treated as having no fringe.
DEGENERATE_MEAN = 1e-15


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"


# --------------------------------------------------------------------------
# duality sum over a batch of input states
# --------------------------------------------------------------------------


@njit(cache=True)
def _duality_point_nb(t0, t1, t2, cw, sw, x, y, z):
    pred = abs(z * cw - x * sw)
    ts = t0 * x + t1 * y + t2 * z
    p0 = 0.5 * (1.0 - z)
    p_pi = 0.5 * (1.0 + z - 2.0 * ts * t2)
    p_half = 0.5 * (1.0 - (t0 * y - t1 * x) - ts * t2)
    a = 0.5 * (p0 + p_pi)
    b = 0.5 * (p_pi - p0)
    c = a - p_half
    if a <= 1e-15:
        vis = 0.0
    else:
        vis = math.sqrt(b * b + c * c) / a
    return pred, vis


@njit(cache=True)
def _duality_batch_nb(t, omega, states):
    n = states.shape[0]
    out = np.empty((n, 3))
    cw = math.cos(omega)
    sw = math.sin(omega)
    for i in range(n):
        pred, vis = _duality_point_nb(
            t[0], t[1], t[2], cw, sw, states[i, 0], states[i, 1], states[i, 2]
        )
        out[i, 0] = pred
        out[i, 1] = vis
        out[i, 2] = pred * pred + vis * vis
    return out


def _duality_batch_np(t, omega, states):
    s = np.asarray(states, dtype=float)
    x, y, z = s[:, 0], s[:, 1], s[:, 2]
    pred = np.abs(z * math.cos(omega) - x * math.sin(omega))
    ts = t[0] * x + t[1] * y + t[2] * z
    p0 = 0.5 * (1.0 - z)
    p_pi = 0.5 * (1.0 + z - 2.0 * ts * t[2])
    p_half = 0.5 * (1.0 - (t[0] * y - t[1] * x) - ts * t[2])
    a = 0.5 * (p0 + p_pi)
    b = 0.5 * (p_pi - p0)
    c = a - p_half
    ok = a > DEGENERATE_MEAN
    vis = np.zeros_like(a)
    vis[ok] = np.sqrt(b[ok] ** 2 + c[ok] ** 2) / a[ok]
    return np.stack([pred, vis, pred**2 + vis**2], axis=1)


def _duality_point_py(t0, t1, t2, cw, sw, x, y, z):
    pred = abs(z * cw - x * sw)
    ts = t0 * x + t1 * y + t2 * z
    p0 = 0.5 * (1.0 - z)
    p_pi = 0.5 * (1.0 + z - 2.0 * ts * t2)
    p_half = 0.5 * (1.0 - (t0 * y - t1 * x) - ts * t2)
    a = 0.5 * (p0 + p_pi)
    b = 0.5 * (p_pi - p0)
    c = a - p_half
    vis = 0.0 if a <= DEGENERATE_MEAN else math.sqrt(b * b + c * c) / a
    return pred, vis


def duality_batch_numba(t, omega, states):
    return _duality_batch_nb(
        np.ascontiguousarray(t, dtype=float),
        float(omega),
        np.ascontiguousarray(states, dtype=float).reshape(-1, 3),
    )


def duality_batch_numpy(t, omega, states):
    return _duality_batch_np(
        np.asarray(t, dtype=float), float(omega), np.asarray(states, dtype=float).reshape(-1, 3)
    )


def duality_batch(t, omega, states):
    """Predictability, visibility and their squared sum for many input states.

    ``t`` is the effective rotation axis of the whole interferometer (the
    middle axis seen through the beam splitter), ``omega`` the beam-splitter
    angle.  The fringe is recovered exactly from three phases, 0, pi/2, pi.
    Returns an ``(n, 3)`` array of columns ``(P, V, P**2 + V**2)``.
    """
    if USE_NUMBA:
        return duality_batch_numba(t, omega, states)
    return duality_batch_numpy(t, omega, states)


def duality_point(t, omega, s) -> tuple[float, float]:
    """Scalar version of :func:`duality_batch` returning ``(P, V)``."""
    fn = _duality_point_nb if USE_NUMBA else _duality_point_py
    return fn(
        float(t[0]), float(t[1]), float(t[2]),
        math.cos(omega), math.sin(omega),
        float(s[0]), float(s[1]), float(s[2]),
    )


@njit(cache=True)
def _duality_rows_nb(t, omega, states):
    n = states.shape[0]
    out = np.empty(n)
    for i in range(n):
        pred, vis = _duality_point_nb(
            t[i, 0], t[i, 1], t[i, 2], math.cos(omega[i]), math.sin(omega[i]),
            states[i, 0], states[i, 1], states[i, 2],
        )
        out[i] = pred * pred + vis * vis
    return out


def _duality_rows_np(t, omega, states):
    x, y, z = states.T
    t0, t1, t2 = t.T
    pred = np.abs(z * np.cos(omega) - x * np.sin(omega))
    ts = t0 * x + t1 * y + t2 * z
    p0 = 0.5 * (1.0 - z)
    p_pi = 0.5 * (1.0 + z - 2.0 * ts * t2)
    p_half = 0.5 * (1.0 - (t0 * y - t1 * x) - ts * t2)
    a = 0.5 * (p0 + p_pi)
    b = 0.5 * (p_pi - p0)
    c = a - p_half
    ok = a > DEGENERATE_MEAN
    vis = np.zeros_like(a)
    vis[ok] = np.sqrt(b[ok] ** 2 + c[ok] ** 2) / a[ok]
    return pred**2 + vis**2


def _rows_args(t, omega, states):
    states = np.ascontiguousarray(states, dtype=float).reshape(-1, 3)
    t = np.ascontiguousarray(t, dtype=float).reshape(-1, 3)
    omega = np.ascontiguousarray(np.broadcast_to(omega, states.shape[:1]), dtype=float)
    return t, omega, states


def duality_rows_numba(t, omega, states):
    return _duality_rows_nb(*_rows_args(t, omega, states))


def duality_rows_numpy(t, omega, states):
    return _duality_rows_np(*_rows_args(t, omega, states))


def duality_rows(t, omega, states):
    """Duality sum row by row, each row with its own effective axis and ``omega``."""
    if USE_NUMBA:
        return duality_rows_numba(t, omega, states)
    return duality_rows_numpy(t, omega, states)


# --------------------------------------------------------------------------
# detection probability over a phase grid
# --------------------------------------------------------------------------


@njit(cache=True)
def _fringe_nb(t, s, phis):
    n = phis.shape[0]
    out = np.empty(n)
    ts = t[0] * s[0] + t[1] * s[1] + t[2] * s[2]
    cross_z = t[0] * s[1] - t[1] * s[0]
    for k in range(n):
        c = math.cos(phis[k])
        sn = math.sin(phis[k])
        sz = c * s[2] + sn * cross_z + (1.0 - c) * ts * t[2]
        p = 0.5 * (1.0 - sz)
        if p < 0.0:
            p = 0.0
        elif p > 1.0:
            p = 1.0
        out[k] = p
    return out


def _fringe_np(t, s, phis):
    ts = float(np.dot(t, s))
    cross_z = t[0] * s[1] - t[1] * s[0]
    c, sn = np.cos(phis), np.sin(phis)
    sz = c * s[2] + sn * cross_z + (1.0 - c) * ts * t[2]
    return np.clip(0.5 * (1.0 - sz), 0.0, 1.0)


def fringe_numba(t, s, phis):
    return _fringe_nb(
        np.ascontiguousarray(t, dtype=float),
        np.ascontiguousarray(s, dtype=float),
        np.ascontiguousarray(phis, dtype=float),
    )


def fringe_numpy(t, s, phis):
    return _fringe_np(np.asarray(t, float), np.asarray(s, float), np.asarray(phis, float))


def fringe(t, s, phis):
    """Probability of the -1 outcome at each phase, for effective axis ``t``."""
    if USE_NUMBA:
        return fringe_numba(t, s, phis)
    return fringe_numpy(t, s, phis)


# --------------------------------------------------------------------------
# sphere lattice
# --------------------------------------------------------------------------


def fibonacci_sphere(n: int) -> np.ndarray:
    """Quasi-uniform ``(n, 3)`` lattice of unit vectors (golden-angle spiral)."""
    if n < 1:
        raise ValueError("need at least one lattice point")
    k = np.arange(n, dtype=float) + 0.5
    z = 1.0 - 2.0 * k / n
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    golden = math.pi * (3.0 - math.sqrt(5.0))
    ang = golden * np.arange(n)
    return np.stack([r * np.cos(ang), r * np.sin(ang), z], axis=1)
