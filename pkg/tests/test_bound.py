import math

import numpy as np
import pytest

from gendual import _kernels
from gendual.bound import golden_section_max, l_max
from gendual.interferometer import InterferometerConfig
from gendual.landscape import duality_sum
from gendual.qubit import E_X, E_Y, E_Z

from conftest import random_unit

SQRT_HALF = 1 / math.sqrt(2)


def test_golden_section_interior():
    x, fx = golden_section_max(lambda v: -(v - 0.3) ** 2, -1.0, 2.0, 1e-10)
    assert x == pytest.approx(0.3, abs=1e-8)
    assert fx == pytest.approx(0.0, abs=1e-15)


def test_golden_section_edge():
    x, _ = golden_section_max(lambda v: v, 0.0, 1.0, 1e-8)
    assert x == 1.0


def test_fibonacci_lattice_is_uniform():
    pts = _kernels.fibonacci_sphere(10_000)
    np.testing.assert_allclose(np.linalg.norm(pts, axis=1), 1.0, atol=1e-12)
    assert np.abs(pts.mean(axis=0)).max() < 1e-3


@pytest.mark.parametrize(
    "axis, expected, tol",
    [(E_Z, 1.0, 1e-6), (E_X, 1.0, 1e-6), (E_Y, 2.0, 1e-4)],
)
def test_analytic_cases(axis, expected, tol):
    b = l_max(axis)
    assert abs(b.l_max - expected) <= tol
    assert np.linalg.norm(b.argmax_state) <= 1 + 1e-12


def test_value_matches_pipeline_at_argmax():
    for axis in ([0.3, 0.4, math.sqrt(0.75)], E_Y, [SQRT_HALF, 0, SQRT_HALF]):
        b = l_max(axis)
        ref = duality_sum(InterferometerConfig(axis=axis, input=b.argmax_state)).sum
        assert b.l_max == pytest.approx(ref, abs=1e-12)


def test_tilted_axis_reaches_two_with_minus_ex():
    # e_x alone gives 10/9 here; -e_x gives the full bound
    b = l_max([SQRT_HALF, 0, SQRT_HALF])
    assert b.l_max >= 10 / 9 - 1e-9
    assert b.l_max == pytest.approx(2.0, abs=1e-9)
    np.testing.assert_allclose(b.argmax_state, -E_X, atol=1e-6)


def test_random_axes_in_range(rng):
    for m in random_unit(rng, 100):
        b = l_max(m)
        assert 1 - 1e-9 <= b.l_max <= 2 + 1e-9
        assert b.l_max >= b.grid_best
        # the maximiser is always pure: V grows with |s| at fixed direction
        assert abs(np.linalg.norm(b.argmax_state) - 1) <= 1e-6


def test_saturating_axes_pick_plus_minus_ex(rng):
    for a in rng.uniform(-SQRT_HALF + 0.01, SQRT_HALF - 0.01, 20):
        for sign in (1, -1):
            m = np.array([a, math.sqrt(1 - 2 * a * a), -sign * a])
            b = l_max(m)
            assert b.l_max == pytest.approx(2.0, abs=1e-9)
            s = b.argmax_state / np.linalg.norm(b.argmax_state)
            angle = math.acos(min(1.0, abs(s @ E_X)))
            assert angle <= 1e-3


def test_unbalanced_omega():
    b = l_max(E_Y, omega=1.0)
    assert 0.0 <= b.l_max <= 2.0 + 1e-9
    ref = duality_sum(InterferometerConfig(omega=1.0, axis=E_Y, input=b.argmax_state)).sum
    assert b.l_max == pytest.approx(ref, abs=1e-9)
    # brute-force the sphere to make sure nothing better was missed
    pts = _kernels.fibonacci_sphere(200_000)
    t = InterferometerConfig(omega=1.0, axis=E_Y).effective_axis()
    assert b.l_max >= _kernels.duality_batch_numpy(t, 1.0, pts)[:, 2].max() - 1e-9


def test_deterministic():
    a, b = l_max([0.2, 0.5, math.sqrt(0.71)]), l_max([0.2, 0.5, math.sqrt(0.71)])
    assert a.l_max == b.l_max
    np.testing.assert_array_equal(a.argmax_state, b.argmax_state)
