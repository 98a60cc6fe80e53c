import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gendual.interferometer import InterferometerConfig
from gendual.landscape import (
    DualityResult,
    F_pure,
    F_spherical,
    SphericalAxis,
    duality_sum,
    duality_sum_omega,
    duality_sum_omega_paper,
    f_cartesian,
    f_rotated,
    spherical_axis,
)
from gendual.qubit import E_X, E_Y, E_Z

HALF_PI = math.pi / 2
SQRT_HALF = 1 / math.sqrt(2)
thetas = st.floats(0, math.pi)
xis = st.floats(0, 2 * math.pi)
sxs = st.floats(-1, 1)


def cfg(axis, s, omega=HALF_PI):
    return InterferometerConfig(omega=omega, axis=axis, input=s)


class TestDualitySum:
    def test_depolarized(self):
        assert duality_sum(cfg(E_Y, [0, 0, 0])).sum == 0

    def test_y_axis_reaches_two(self):
        assert duality_sum(cfg(E_Y, E_X)).sum == pytest.approx(2.0, abs=1e-12)

    def test_phase_shifter_pure_state_is_one(self, rng):
        for s in rng.normal(size=(200, 3)):
            s /= np.linalg.norm(s)
            assert duality_sum(cfg(E_Z, s)).sum == pytest.approx(1.0, abs=1e-12)

    def test_unbalanced_uses_scan(self):
        r = duality_sum(cfg(E_Y, E_X, omega=1.0))
        assert r.predictability == pytest.approx(math.sin(1.0), abs=1e-12)
        assert 0 <= r.visibility <= 1

    def test_result_sum(self):
        r = DualityResult(0.6, 0.8)
        assert r.sum == pytest.approx(1.0, abs=1e-15)
        assert r.as_dict()["sum"] == r.sum


class TestFSpherical:
    @given(sxs)
    def test_worked_example(self, sx):
        expected = sx**2 * (1 + 1 / (2 + sx) ** 2)
        assert F_spherical(sx, math.pi / 4, 0.0) == pytest.approx(expected, abs=1e-12)

    def test_y_axis(self):
        assert F_spherical(1.0, HALF_PI, HALF_PI) == pytest.approx(2.0, abs=1e-12)

    @given(thetas, xis)
    def test_zero_state(self, theta, xi):
        assert F_spherical(0.0, theta, xi) == 0

    def test_first_principles(self, rng):
        n = 10_000
        sx, th, xi = rng.uniform(-1, 1, n), rng.uniform(0, math.pi, n), rng.uniform(0, 2 * math.pi, n)
        closed = F_spherical(sx, th, xi)
        for k in range(n):
            ref = duality_sum(cfg(spherical_axis(th[k], xi[k]), [sx[k], 0, 0])).sum
            assert abs(closed[k] - ref) <= 1e-9

    def test_bounds_and_denominator(self, rng):
        sx, th, xi = rng.uniform(-1, 1, 10**5), rng.uniform(0, math.pi, 10**5), rng.uniform(0, 2 * math.pi, 10**5)
        vals = F_spherical(sx, th, xi)
        assert vals.min() >= 0 and vals.max() <= 2 + 1e-12
        assert (1 + sx * np.sin(th) * np.cos(th) * np.cos(xi)).min() >= 0.5

    @given(sxs, thetas, xis)
    def test_symmetries(self, sx, th, xi):
        base = F_spherical(sx, th, xi)
        assert F_spherical(sx, th, -xi) == pytest.approx(base, abs=1e-12)
        assert F_spherical(sx, math.pi - th, math.pi - xi) == pytest.approx(base, abs=1e-12)


class TestFPure:
    @given(xis)
    def test_phase_shifter(self, xi):
        assert F_pure(0.0, xi) == pytest.approx(1.0, abs=1e-12)
        assert F_pure(math.pi, xi) == pytest.approx(1.0, abs=1e-12)

    def test_beam_splitter(self):
        assert F_pure(HALF_PI, 0.0) == pytest.approx(1.0, abs=1e-12)

    def test_ten_ninths(self):
        assert F_pure(math.pi / 4, 0.0) == pytest.approx(10 / 9, abs=1e-12)

    def test_consistency_web(self):
        th, xi = np.meshgrid(np.linspace(0, math.pi, 120), np.linspace(0, 2 * math.pi, 120))
        np.testing.assert_allclose(F_spherical(1.0, th, xi), F_pure(th, xi), atol=1e-12)
        mx, mz = np.sin(th) * np.cos(xi), np.cos(th)
        np.testing.assert_allclose(F_pure(th, xi), f_cartesian(mx, mz), atol=1e-12)


class TestFCartesian:
    def test_landmarks(self):
        assert f_cartesian(0.0, 0.0) == pytest.approx(2.0, abs=1e-12)
        assert f_cartesian(SQRT_HALF, SQRT_HALF) == pytest.approx(10 / 9, abs=1e-12)
        assert f_cartesian(1.0, 0.0) == pytest.approx(1.0, abs=1e-12)

    def test_domain(self):
        with pytest.raises(ValueError):
            f_cartesian(0.9, 0.9)

    def test_two_on_anti_diagonal(self):
        mx = np.linspace(-SQRT_HALF, SQRT_HALF, 1001)[1:-1]
        np.testing.assert_allclose(f_cartesian(mx, -mx), 2.0, atol=1e-12)

    def test_diagonal_profile_strictly_decreasing(self):
        mx = np.linspace(0, SQRT_HALF, 2001)
        assert np.all(np.diff(f_cartesian(mx, mx)) < 0)

    def test_matches_rotated(self):
        m = np.linspace(0, SQRT_HALF, 500)
        np.testing.assert_allclose(f_cartesian(m, m), f_rotated(1.0, math.sqrt(2) * m), atol=1e-12)


class TestFRotated:
    def test_endpoints(self):
        assert f_rotated(1.0, 0.0) == pytest.approx(2.0, abs=1e-12)
        assert f_rotated(1.0, 1.0) == pytest.approx(10 / 9, abs=1e-12)

    @given(st.floats(0, 1))
    def test_zero_state(self, m):
        assert f_rotated(0.0, m) == 0

    def test_first_principles(self, rng):
        # axis in the (e_y, e_x') plane with e_x' = (e_x + e_z)/sqrt(2)
        for sx, mxp in zip(rng.uniform(-1, 1, 300), rng.uniform(0, 1, 300)):
            my = math.sqrt(1 - mxp**2)
            axis = [mxp * SQRT_HALF, my, mxp * SQRT_HALF]
            assert f_rotated(sx, mxp) == pytest.approx(duality_sum(cfg(axis, [sx, 0, 0])).sum, abs=1e-12)


class TestOmegaFormulas:
    def test_balanced_matches_shifted_azimuth(self):
        th, xi = np.meshgrid(np.linspace(0, math.pi, 50), np.linspace(0, 2 * math.pi, 50))
        for sx in (-1.0, -0.3, 0.5, 1.0):
            np.testing.assert_allclose(
                duality_sum_omega_paper(sx, th, xi, HALF_PI),
                F_spherical(sx, th, HALF_PI - xi),
                atol=1e-12,
            )

    @given(xis)
    def test_theta_zero(self, xi):
        assert duality_sum_omega_paper(1.0, 0.0, xi, HALF_PI) == pytest.approx(1.0, abs=1e-12)

    @given(thetas, xis, st.floats(0, math.pi))
    def test_zero_state(self, th, xi, w):
        assert duality_sum_omega_paper(0.0, th, xi, w) == 0

    def test_identity_convention_disagrees(self, rng):
        n = 2000
        sx, th, xi = rng.uniform(-1, 1, n), rng.uniform(0, math.pi, n), rng.uniform(0, 2 * math.pi, n)
        resid = np.abs(duality_sum_omega_paper(sx, th, xi, HALF_PI) - F_spherical(sx, th, xi))
        assert resid.max() > 1e-6

    def test_derived_form_matches_pipeline(self, rng):
        for sx, th, xi, w in zip(
            rng.uniform(-1, 1, 500), rng.uniform(0, math.pi, 500),
            rng.uniform(0, 2 * math.pi, 500), rng.uniform(0, math.pi, 500),
        ):
            ref = duality_sum(cfg(spherical_axis(th, xi), [sx, 0, 0], w)).sum
            assert duality_sum_omega(sx, th, xi, w) == pytest.approx(ref, abs=1e-9)
            # the printed form matches after xi -> pi/2 - xi and omega -> pi - omega
            assert duality_sum_omega_paper(sx, th, HALF_PI - xi, math.pi - w) == pytest.approx(ref, abs=1e-9)


class TestSphericalAxis:
    @given(thetas, xis)
    def test_round_trip(self, th, xi):
        ax = SphericalAxis(th, xi)
        m = ax.to_axis()
        np.testing.assert_allclose(m, ax.m_perp + ax.m_plane, atol=1e-15)
        back = SphericalAxis.from_axis(m).to_axis()
        np.testing.assert_allclose(back, m, atol=1e-12)

    def test_range(self):
        with pytest.raises(ValueError):
            SphericalAxis(-0.1, 0.0)
