"""Phase-shifter / beam-splitter / phase-shifter factorization of 2x2 unitaries.

``U = exp(i varphi) exp(i psi sigma_z) exp(i chi sigma_y) exp(i delta sigma_z)``
"""

from __future__ import annotations

import cmath
import math
from dataclasses import asdict, dataclass

import numpy as np

from .qubit import as_unitary

UNITARY_TOL = 1e-10
DEGENERATE = 1e-14


@dataclass(frozen=True)
class FactoredUnitary:
    global_phase: float  # varphi
    psi: float
    chi: float
    delta: float

    @property
    def varphi(self) -> float:
        return self.global_phase

    def as_dict(self) -> dict:
        d = asdict(self)
        d["varphi"] = d.pop("global_phase")
        return d


def _wrap(angle: float) -> float:
    """Map to (-pi, pi]."""
    a = math.remainder(angle, 2 * math.pi)
    return math.pi if a == -math.pi else a


def factorize_unitary(u) -> FactoredUnitary:
    m = as_unitary(u, tol=UNITARY_TOL)
    varphi = 0.5 * cmath.phase(np.linalg.det(m))
    w = cmath.exp(-1j * varphi) * m
    a, b = complex(w[0, 0]), complex(w[0, 1])
    chi = math.atan2(abs(b), abs(a))
    if abs(b) <= DEGENERATE:
        psi, delta = cmath.phase(a), 0.0
    elif abs(a) <= DEGENERATE:
        psi, delta = cmath.phase(b), 0.0
    else:
        arg_a, arg_b = cmath.phase(a), cmath.phase(b)
        psi, delta = 0.5 * (arg_a + arg_b), 0.5 * (arg_a - arg_b)
    return FactoredUnitary(_wrap(varphi), _wrap(psi), chi, _wrap(delta))


def recompose(f: FactoredUnitary) -> np.ndarray:
    left = np.diag([cmath.exp(1j * f.psi), cmath.exp(-1j * f.psi)])
    c, s = math.cos(f.chi), math.sin(f.chi)
    middle = np.array([[c, s], [-s, c]], dtype=complex)
    right = np.diag([cmath.exp(1j * f.delta), cmath.exp(-1j * f.delta)])
    return cmath.exp(1j * f.global_phase) * (left @ middle @ right)


def recomposition_residual(u, f: FactoredUnitary) -> float:
    return float(np.max(np.abs(recompose(f) - np.asarray(u, dtype=complex))))
