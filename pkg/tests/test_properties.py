"""Invariants checked across randomized inputs.

Bulk sweeps use a seeded generator so failures reproduce; hypothesis covers
the shrinking edge cases. Everything here must stay fast enough that the
whole suite comes in well under a minute.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from regaudit import (
    DegenerateError,
    PredictorSummary,
    QuantileProfile,
    RegressionModel,
    cles_mc,
    cles_normal,
    density,
    odds,
    predict,
    quantile_function,
    ri,
    ri_bounds,
    sample,
    sd_bounds,
    wathen_1rm,
    weight_shares,
)
from regaudit.special import regularized_incomplete_beta

RNG = np.random.default_rng(20260822)


def random_profile(rng) -> QuantileProfile:
    k = int(rng.integers(3, 12))
    grid = np.arange(0.5, 100.0, 0.5)
    inner = np.sort(rng.choice(grid, size=k - 2, replace=False))
    percentiles = np.concatenate(([0.0], inner, [100.0]))
    steps = rng.uniform(0.0, 10.0, size=k - 1)
    steps[rng.random(k - 1) < 0.2] = 0.0  # flat stretches are legal
    scores = float(rng.normal(0.0, 50.0)) + np.concatenate(([0.0], np.cumsum(steps)))
    return QuantileProfile(
        label="random", points=tuple(zip(percentiles.tolist(), scores.tolist()))
    )


def random_model(rng) -> RegressionModel:
    k = int(rng.integers(1, 9))
    predictors = tuple(
        PredictorSummary(
            name=f"x{i}",
            coefficient=float(rng.uniform(-10.0, 10.0)),
            mean=float(rng.normal(0.0, 100.0)),
            sd=float(rng.uniform(0.1, 50.0)),
        )
        for i in range(k)
    )
    return RegressionModel(label="random", constant=float(rng.normal()), predictors=predictors)


class TestQuantileMonotonicity:
    def test_thousand_random_profiles(self):
        u = np.linspace(0.0, 1.0, 513)
        for _ in range(1000):
            profile = random_profile(RNG)
            values = quantile_function(profile, u)
            assert np.all(np.diff(values) >= -1e-9)
            # interpolation respects the knots exactly
            knots = quantile_function(profile, np.asarray(profile.knots))
            assert np.allclose(knots, profile.scores, atol=1e-9)

    def test_linear_route_monotone_too(self):
        for _ in range(50):
            profile = random_profile(RNG)
            u = np.linspace(0.0, 1.0, 257)
            values = quantile_function(profile, u, method="linear")
            assert np.all(np.diff(values) >= -1e-12)


class TestShareInvariants:
    def test_thousand_random_models_sum_to_one(self):
        for _ in range(1000):
            model = random_model(RNG)
            p = float(RNG.uniform(1.0, 2.0))
            try:
                shares = ri(model, p)
            except Exception:
                # all-zero weights are rejected, not silently normalized
                assert all(q.weight == 0.0 for q in model.predictors)
                continue
            assert abs(sum(shares.values()) - 1.0) <= 1e-9
            assert all(s >= 0.0 for s in shares.values())

    def test_rescaling_weights_leaves_shares_unchanged(self):
        for _ in range(200):
            k = int(RNG.integers(1, 8))
            weights = RNG.uniform(0.01, 20.0, size=k)
            p = float(RNG.uniform(1.0, 2.0))
            scale = float(RNG.uniform(0.1, 50.0))
            base = weight_shares([(f"w{i}", float(w)) for i, w in enumerate(weights)], p)
            scaled = weight_shares(
                [(f"w{i}", float(w * scale)) for i, w in enumerate(weights)], p
            )
            for name in base:
                assert base[name] == pytest.approx(scaled[name], abs=1e-12)

    def test_band_edges_are_the_endpoint_shares(self):
        for _ in range(200):
            model = random_model(RNG)
            p = float(RNG.uniform(1.0, 2.0))
            report = ri_bounds(model, p_point=p)
            at_one = ri(model, 1.0)
            at_two = ri(model, 2.0)
            for row in report.rows:
                assert row.lower == pytest.approx(min(at_one[row.name], at_two[row.name]))
                assert row.upper == pytest.approx(max(at_one[row.name], at_two[row.name]))

    def test_extreme_weights_stay_inside_their_band(self):
        # share(p) is monotone in p only for the largest and smallest weight;
        # middle-ranked predictors may poke slightly outside the endpoint band
        for _ in range(200):
            model = random_model(RNG)
            p = float(RNG.uniform(1.0, 2.0))
            report = ri_bounds(model, p_point=p)
            weights = {q.name: q.weight for q in model.predictors}
            for name in (max(weights, key=weights.get), min(weights, key=weights.get)):
                row = next(r for r in report.rows if r.name == name)
                assert row.lower - 1e-12 <= row.point <= row.upper + 1e-12

    def test_sd_bounds_ordering(self):
        # first element is the perfectly-correlated sum, second the quadrature
        for _ in range(200):
            model = random_model(RNG)
            sd_l1, sd_l2 = sd_bounds(model)
            assert 0.0 <= sd_l2 <= sd_l1 + 1e-12


class TestClesProperties:
    def test_antisymmetry_within_monte_carlo_noise(self):
        n = 20_000
        tolerance = 3.0 / math.sqrt(n)
        for trial in range(10):
            a = random_profile(RNG)
            b = random_profile(RNG)
            forward = cles_mc(a, b, n, seed=trial)
            backward = cles_mc(b, a, n, seed=1000 + trial)
            assert abs(forward + backward - 1.0) <= tolerance

    def test_self_comparison_near_half(self):
        for trial in range(5):
            profile = random_profile(RNG)
            twin = QuantileProfile(label="twin", points=profile.points)
            value = cles_mc(profile, twin, 20_000, seed=trial)
            assert abs(value - 0.5) <= 3.0 / math.sqrt(20_000)

    def test_normal_route_antisymmetry_exact(self):
        for d in np.linspace(-4.0, 4.0, 33):
            assert cles_normal(d) + cles_normal(-d) == pytest.approx(1.0, abs=1e-15)


class TestOddsProperties:
    @given(st.floats(min_value=1e-3, max_value=1.0 - 1e-3))
    def test_transpose(self, p):
        numerator, denominator = odds(p)
        flipped = odds(1.0 - p)
        assert (numerator, denominator) == (flipped[1], flipped[0])

    @given(st.floats(min_value=0.5, max_value=1.0 - 1e-3))
    def test_upper_half_reads_left_heavy(self, p):
        numerator, denominator = odds(p)
        assert denominator == 1
        assert numerator >= 1


class TestWathenProperties:
    @given(
        st.floats(min_value=0.0, max_value=1000.0),
        st.integers(min_value=1, max_value=30),
    )
    def test_estimate_at_least_the_weight(self, weight, reps):
        assert wathen_1rm(weight, reps) >= weight - 1e-9

    @given(
        st.floats(min_value=1.0, max_value=500.0),
        st.integers(min_value=1, max_value=29),
    )
    def test_monotone_in_reps(self, weight, reps):
        assert wathen_1rm(weight, reps + 1) > wathen_1rm(weight, reps)


class TestBetaProperties:
    @settings(deadline=None)
    @given(
        st.floats(min_value=0.5, max_value=50.0),
        st.floats(min_value=0.5, max_value=50.0),
        st.floats(min_value=1e-6, max_value=1.0 - 1e-6),
    )
    def test_complement_identity(self, a, b, x):
        left = regularized_incomplete_beta(a, b, x)
        right = 1.0 - regularized_incomplete_beta(b, a, 1.0 - x)
        assert left == pytest.approx(right, abs=1e-10)

    @settings(deadline=None)
    @given(
        st.floats(min_value=0.5, max_value=20.0),
        st.floats(min_value=0.5, max_value=20.0),
    )
    def test_bounded_and_anchored(self, a, b):
        assert regularized_incomplete_beta(a, b, 0.0) == 0.0
        assert regularized_incomplete_beta(a, b, 1.0) == 1.0
        mid = regularized_incomplete_beta(a, b, 0.5)
        assert 0.0 <= mid <= 1.0


class TestDensityNormalization:
    def test_random_profiles_integrate_to_one(self):
        for trial in range(20):
            profile = random_profile(RNG)
            if profile.scores[0] == profile.scores[-1]:
                continue  # totally flat profile has no density to speak of
            draws = sample(profile, 2000, seed=trial)
            try:
                curve = density(draws)
            except DegenerateError:
                continue
            integral = float(np.trapezoid(curve.density, curve.grid))
            assert abs(integral - 1.0) <= 0.01


class TestPredictionAffinity:
    def test_prediction_linear_along_any_ray(self):
        for _ in range(100):
            model = random_model(RNG)
            base = model.means()
            delta = {name: float(RNG.normal()) for name in model.names}

            def at(t):
                return predict(
                    model, {name: base[name] + t * delta[name] for name in model.names}
                )

            y0, y1, y2 = at(0.0), at(1.0), at(2.0)
            assert y2 - y1 == pytest.approx(y1 - y0, rel=1e-9, abs=1e-9)
