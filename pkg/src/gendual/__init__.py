"""Predictability, visibility and duality bounds of a generalized two-way interferometer."""

from .bound import DualityBound, l_max
from .decompose import FactoredUnitary, factorize_unitary, recompose
from .interferometer import (
    FringeCurve,
    InterferometerConfig,
    detection_probability,
    detection_probability_closed_form,
    detection_probability_matrix,
    overall_unitary,
    predictability,
    t_vector,
    visibility_closed_form,
    visibility_scan,
)
from .landscape import (
    DualityResult,
    F_pure,
    F_spherical,
    SphericalAxis,
    duality_sum,
    duality_sum_omega,
    duality_sum_omega_paper,
    f_cartesian,
    f_rotated,
)
from .montecarlo import ExperimentPlan, FringeFit, fit_fringe, sample_counts
from .qubit import (
    bloch_to_density,
    conjugate_state,
    density_to_bloch,
    rotate_bloch,
    rotation_unitary,
)
from .sweep import Range, SweepSpec, sweep_grid

__version__ = "0.1.0"

__all__ = [
    "DualityBound",
    "DualityResult",
    "ExperimentPlan",
    "F_pure",
    "F_spherical",
    "FactoredUnitary",
    "FringeCurve",
    "FringeFit",
    "InterferometerConfig",
    "Range",
    "SphericalAxis",
    "SweepSpec",
    "bloch_to_density",
    "conjugate_state",
    "density_to_bloch",
    "detection_probability",
    "detection_probability_closed_form",
    "detection_probability_matrix",
    "duality_sum",
    "duality_sum_omega",
    "duality_sum_omega_paper",
    "f_cartesian",
    "f_rotated",
    "factorize_unitary",
    "fit_fringe",
    "l_max",
    "overall_unitary",
    "predictability",
    "recompose",
    "rotate_bloch",
    "rotation_unitary",
    "sample_counts",
    "sweep_grid",
    "t_vector",
    "visibility_closed_form",
    "visibility_scan",
]
