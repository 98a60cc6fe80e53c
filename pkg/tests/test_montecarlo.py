import math

import numpy as np
import pytest

from gendual.interferometer import InterferometerConfig, detection_probability, visibility_closed_form
from gendual.landscape import duality_sum
from gendual.montecarlo import ExperimentPlan, fit_fringe, point_rng, sample_counts

from conftest import random_ball, random_unit

E_X, E_Y, E_Z = np.eye(3)


def plan(s=E_X, axis=E_Y, points=48, shots=10_000, seed=7, omega=math.pi / 2):
    return ExperimentPlan(InterferometerConfig(omega=omega, axis=axis, input=s), points, shots, seed)


class TestSampling:
    def test_z_state_never_fires_at_zero_phase(self):
        counts = sample_counts(plan(s=E_Z, axis=[0.3, 0.4, math.sqrt(0.75)], shots=10**6))
        phi, hits, shots = counts[0]
        assert phi == 0.0 and hits == 0 and shots == 10**6

    def test_depolarized_is_fair_coin(self):
        for _, hits, shots in sample_counts(plan(s=[0, 0, 0], shots=10**5, seed=42)):
            assert abs(hits / shots - 0.5) <= 5 * math.sqrt(0.25 / shots)

    def test_single_shot(self):
        assert {h for _, h, _ in sample_counts(plan(shots=1))} <= {0, 1}

    def test_bit_identical(self):
        assert sample_counts(plan(seed=123)) == sample_counts(plan(seed=123))
        assert sample_counts(plan(seed=123)) != sample_counts(plan(seed=124))

    def test_points_are_independent_substreams(self):
        # any single point can be regenerated without touching the others
        p = plan(seed=99, s=[0.3, -0.2, 0.5], axis=[0, 0.6, 0.8])
        counts = sample_counts(p)
        k = 17
        prob = detection_probability(p.config, p.phis()[k])
        assert counts[k][1] == point_rng(99, k).binomial(p.shots_per_point, prob)

    @pytest.mark.parametrize("kw", [dict(points=2), dict(shots=0), dict(seed=-1)])
    def test_plan_validation(self, kw):
        with pytest.raises(ValueError):
            plan(**kw)


class TestFit:
    def test_noiseless_fit_is_exact(self, rng):
        for m, s in zip(random_unit(rng, 50), random_ball(rng, 50)):
            cfg = InterferometerConfig(axis=m, input=s)
            phis = 2 * math.pi * np.arange(48) / 48
            shots = 1.0
            counts = [(phi, detection_probability(cfg, phi) * shots, shots) for phi in phis]
            fit = fit_fringe(counts)
            assert fit.visibility_hat == pytest.approx(visibility_closed_form(cfg), abs=1e-10)
            assert fit.i_max >= fit.i_min
            if fit.i_max + fit.i_min > 0:
                v = (fit.i_max - fit.i_min) / (fit.i_max + fit.i_min)
                assert fit.visibility_hat == pytest.approx(v, abs=1e-12)

    def test_full_visibility_statistical(self):
        fit = fit_fringe(sample_counts(plan(shots=10**5, seed=7)))
        assert abs(fit.visibility_hat - 1) <= 0.01
        assert abs(fit.visibility_hat - 1) <= 5 * fit.std_error

    def test_all_zero(self):
        fit = fit_fringe([(phi, 0, 100) for phi in np.linspace(0, 6, 10)])
        assert fit.visibility_hat == 0 and math.isinf(fit.std_error)

    def test_needs_three_phases(self):
        with pytest.raises(ValueError, match="3 distinct"):
            fit_fringe([(0.0, 1, 2), (1.0, 1, 2), (2 * math.pi, 1, 2)])

    def test_deterministic_fit(self):
        a = fit_fringe(sample_counts(plan(seed=5, s=[0.2, 0.3, 0.4])))
        b = fit_fringe(sample_counts(plan(seed=5, s=[0.2, 0.3, 0.4])))
        assert a == b

    def test_std_error_scaling(self):
        # quadrupling the shots halves the error, within 20 %
        cfg_kw = dict(s=[0.5, 0.1, 0.6], axis=[0.6, 0.0, 0.8])
        small = [fit_fringe(sample_counts(plan(shots=2500, seed=k, **cfg_kw))).std_error for k in range(10)]
        large = [fit_fringe(sample_counts(plan(shots=10_000, seed=k, **cfg_kw))).std_error for k in range(10)]
        assert np.mean(small) / np.mean(large) == pytest.approx(2.0, rel=0.2)

    def test_std_error_matches_empirical_spread(self):
        p = dict(s=[0.4, 0.2, -0.5], axis=[0.0, 0.6, 0.8])
        fits = [fit_fringe(sample_counts(plan(shots=2000, seed=k, **p))) for k in range(300)]
        spread = np.std([f.visibility_hat for f in fits])
        assert np.mean([f.std_error for f in fits]) == pytest.approx(spread, rel=0.2)


@pytest.mark.slow
def test_consistency_over_random_plans(rng):
    inside = 0
    for k in range(200):
        m, s = random_unit(rng, 1)[0], random_ball(rng, 1)[0]
        omega = rng.uniform(0, math.pi)
        p = ExperimentPlan(InterferometerConfig(omega=omega, axis=m, input=s), 48, 10_000, 1000 + k)
        fit = fit_fringe(sample_counts(p))
        inside += abs(fit.visibility_hat - duality_sum(p.config).visibility) <= 5 * fit.std_error
    assert inside >= 198
