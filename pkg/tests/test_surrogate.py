"""Linear rating model: least-squares refits and derived objective weights."""

import random

import numpy as np
import pytest

from acodesign.metrics import INITIAL_WEIGHTS, MetricVector, WeightVector
from acodesign.surrogate import (
    INITIAL_COEFFICIENTS,
    MIN_OBSERVATIONS,
    SurrogateModel,
    refit_surrogate,
    weights_from_coefficients,
)

from oracles import solve_normal_equations


def make_observations(rng, n, coeffs=None, noise=0.0):
    a0, a1, a2, a3 = coeffs or (50.0, -30.0, -10.0, -5.0)
    obs = []
    for _ in range(n):
        c, na, at = rng.random(), rng.random() * 3, rng.random() * 2
        rating = a0 + a1 * c + a2 * na + a3 * at + rng.gauss(0, noise)
        obs.append((c, na, at, rating))
    return obs


class TestRefit:
    def test_matches_normal_equations(self):
        rng = random.Random(1)
        for _ in range(30):
            obs = make_observations(rng, rng.randint(4, 40), noise=2.0)
            got = refit_surrogate(obs, INITIAL_COEFFICIENTS)
            want = solve_normal_equations(
                [(c, n, a) for c, n, a, _ in obs], [r for *_, r in obs]
            )
            assert np.allclose(got, want, atol=1e-9)

    def test_exact_recovery(self):
        rng = random.Random(2)
        obs = make_observations(rng, 12, coeffs=(10.0, 2.0, -3.0, 1.0), noise=0.0)
        got = refit_surrogate(obs, INITIAL_COEFFICIENTS)
        assert got == pytest.approx((10.0, 2.0, -3.0, 1.0), abs=1e-9)

    def test_too_few_observations_keeps_previous(self):
        rng = random.Random(3)
        obs = make_observations(rng, MIN_OBSERVATIONS - 1)
        assert refit_surrogate(obs, INITIAL_COEFFICIENTS) == INITIAL_COEFFICIENTS

    def test_rank_deficient_keeps_previous(self):
        # constant cbo column makes the design collinear with the intercept
        obs = [(0.5, n, a, 40.0 - n) for n, a in [(0.1, 0.2), (0.5, 0.9), (1.1, 0.4), (2.0, 1.5)]]
        assert refit_surrogate(obs, INITIAL_COEFFICIENTS) == INITIAL_COEFFICIENTS

    def test_repeated_single_point_keeps_previous(self):
        obs = [(0.2, 0.3, 0.4, 55.0)] * 6
        assert refit_surrogate(obs, INITIAL_COEFFICIENTS) == INITIAL_COEFFICIENTS


class TestWeights:
    def test_proportional_magnitudes(self):
        w = weights_from_coefficients(-1.0, -1.0, -2.0)
        assert w.as_tuple() == (0.25, 0.25, 0.5)

    def test_sign_ignored(self):
        assert weights_from_coefficients(3.0, 0.0, 1.0) == weights_from_coefficients(
            -3.0, 0.0, -1.0
        )

    def test_all_zero_keeps_previous(self):
        previous = WeightVector(0.6, 0.2, 0.2)
        assert weights_from_coefficients(0.0, 0.0, 0.0, previous) == previous
        assert weights_from_coefficients(0.0, 0.0, 0.0) == INITIAL_WEIGHTS

    def test_weights_sum_to_one(self):
        w = weights_from_coefficients(-17.3, 2.6, -0.01)
        assert sum(w.as_tuple()) == pytest.approx(1.0, abs=1e-12)


class TestModel:
    def test_initial_state(self):
        model = SurrogateModel()
        assert model.coefficients == (0.0, 0.34, 0.33, 0.33)
        assert model.weights() == INITIAL_WEIGHTS

    def test_rating_bounds(self):
        model = SurrogateModel()
        m = MetricVector(0.1, 0.2, 0.3)
        with pytest.raises(ValueError):
            model.record_evaluation(m, 0)
        with pytest.raises(ValueError):
            model.record_evaluation(m, 101)
        with pytest.raises(ValueError):
            model.record_evaluation(m, 50.5)
        with pytest.raises(ValueError):
            model.record_evaluation(m, True)

    def test_refits_after_enough_ratings(self):
        model = SurrogateModel()
        rng = random.Random(4)
        for c, n, a, r in make_observations(rng, 3):
            model.record_evaluation(MetricVector(c, n, a), max(1, min(100, round(r))))
        assert model.coefficients == INITIAL_COEFFICIENTS
        c, n, a, r = make_observations(rng, 1)[0]
        model.record_evaluation(MetricVector(c, n, a), max(1, min(100, round(r))))
        assert model.coefficients != INITIAL_COEFFICIENTS

    def test_predict_is_linear(self):
        model = SurrogateModel(coefficients=(1.0, 2.0, 3.0, 4.0))
        assert model.predict(MetricVector(0.5, 1.0, 2.0)) == pytest.approx(
            1 + 1 + 3 + 8
        )

    def test_learned_weights_follow_dominant_coefficient(self):
        model = SurrogateModel()
        rng = random.Random(5)
        # ratings driven almost entirely by cbo
        for c, n, a, r in make_observations(rng, 12, coeffs=(95.0, -90.0, -0.5, -0.5)):
            model.record_evaluation(MetricVector(c, n, a), max(1, min(100, round(r))))
        w = model.weights()
        assert w.w_cbo > 0.8
