# Copyright 2026 The knorm Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Smoke tests of the Python bindings."""

import math

import numpy as np
import pytest
from scipy import stats

import knorm


def test_sensitivities_and_volumes():
    assert knorm.quadratic_pair_sensitivity(1.0) == pytest.approx(3.125, abs=1e-8)
    assert knorm.quadratic_pair_sensitivity(2.0) == pytest.approx(
        0.25 * math.sqrt(71 + 8 * math.sqrt(2)), abs=1e-8)
    assert knorm.quadratic_pair_sensitivity(math.inf) == pytest.approx(2.0)
    assert knorm.volume_lp(1.0, 2, 3.125) == pytest.approx(19.53125)
    assert knorm.volume_lp(math.inf, 2, 2.0) == pytest.approx(16.0)
    est, se = knorm.volume_monte_carlo("k2", 2, 1.0, 200000, 3)
    assert abs(est - 40.0 / 3.0) <= 4 * se


def test_membership_and_gauge():
    assert knorm.k2_member([1.0, 2.0])
    assert not knorm.k2_member([1.1, 2.0])
    assert knorm.k3_member([2.0, 2.0, 0.0])
    assert not knorm.kt_member([2.0, 0.1, 0.0, 0.0], 1)
    assert knorm.gauge("l1", [1.0, -2.0]) == pytest.approx(3.0)
    assert knorm.lp_norm([3.0, 4.0], 2.0) == pytest.approx(5.0)


def test_gamma_functions_match_scipy():
    for shape, rate, x in [(2, 1.0, 1.5), (7, 0.125, 40.0)]:
        assert knorm.gamma_cdf(x, shape, rate) == pytest.approx(
            stats.gamma.cdf(x, shape, scale=1 / rate), abs=1e-12)
    assert knorm.gamma_quantile(0.5, 2, 1.0) == pytest.approx(
        stats.gamma.ppf(0.5, 2), rel=1e-10)


def test_sample_gauge_follows_gamma():
    draws = knorm.sample("linf", 3, 2.0, 0.5, 5000, 11)
    assert draws.shape == (5000, 3)
    gauge = np.abs(draws).max(axis=1)
    p_value = stats.kstest(gauge, stats.gamma(3, scale=2.0 / 0.5).cdf).pvalue
    assert p_value > 0.01
    again = knorm.sample("linf", 3, 2.0, 0.5, 5000, 11)
    np.testing.assert_array_equal(draws, again)


def test_entropy_orders_mechanisms():
    h_inf = knorm.entropy("linf", 2, 2.0, 1.0)
    h_1 = knorm.entropy("l1", 2, 3.125, 1.0)
    assert h_inf < h_1
    assert knorm.conditional_variance("linf", 2.0, 1.0, [1.0, 0.0]) == \
        pytest.approx(8.0)


def test_regression_statistic_round_trip():
    rng = np.random.default_rng(5)
    n, p = 300, 3
    design = np.hstack([np.ones((n, 1)), rng.uniform(-1, 1, (n, p))])
    response = rng.uniform(-1, 1, n)
    values = knorm.build_statistic(design, response)
    assert len(values) == knorm.statistic_length(p) == 13
    assert knorm.statistic_layout(1) == ["sum_x1", "2sum_x1^2", "sum_y",
                                         "sum_x1y"]
    ols = np.linalg.lstsq(design, response, rcond=None)[0]
    np.testing.assert_allclose(knorm.dp_estimate(values, p, n), ols,
                               atol=1e-10)
    noisy = knorm.sanitize_statistic(values, p, "kt", 1e9, 3)
    np.testing.assert_allclose(noisy, values, atol=1e-6)


def test_invalid_input_raises():
    with pytest.raises(ValueError):
        knorm.build_statistic(np.ones((2, 2)) * 2.0, np.zeros(2))
    with pytest.raises(ValueError):
        knorm.sanitize_statistic([0.0] * 4, 1, "l2", 1.0, 1)
    with pytest.raises(ValueError):
        knorm.simulate_logistic([1.0], n=100, reps=0)


def test_simulations_and_diagnostics():
    out = knorm.simulate_logistic([1.0], n=500, reps=3, seed=4)
    assert out["echo"]["seed"] == "4"
    assert len(out["rows"]) == 3 * 3 + 2 * 3
    cov = knorm.simulate_coverage([1.0], n=1000, reps=3, p=2, seed=4)
    assert cov["echo"]["predictors"] == "2"
    passed, entries = knorm.run_diagnostics(["l1"], draws=4000)
    assert passed and entries
    failed, _ = knorm.run_diagnostics(["l1"], draws=10000, inject_fault=True)
    assert not failed
    assert knorm.run_diagnostics([])[1] == []
