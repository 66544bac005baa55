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
"""K-norm differential privacy mechanisms (bindings to the C++ library)."""

from knorm._knorm import (
    build_statistic,
    conditional_variance,
    dp_estimate,
    entropy,
    gamma_cdf,
    gamma_quantile,
    gauge,
    k2_member,
    k3_member,
    kt_member,
    logistic_sensitivity,
    lp_norm,
    objective_perturbation_gamma,
    quadratic_pair_sensitivity,
    run_diagnostics,
    sample,
    sanitize_statistic,
    simulate_coverage,
    simulate_logistic,
    statistic_layout,
    statistic_length,
    volume_lp,
    volume_monte_carlo,
)

__all__ = [
    "build_statistic",
    "conditional_variance",
    "dp_estimate",
    "entropy",
    "gamma_cdf",
    "gamma_quantile",
    "gauge",
    "k2_member",
    "k3_member",
    "kt_member",
    "logistic_sensitivity",
    "lp_norm",
    "objective_perturbation_gamma",
    "quadratic_pair_sensitivity",
    "run_diagnostics",
    "sample",
    "sanitize_statistic",
    "simulate_coverage",
    "simulate_logistic",
    "statistic_layout",
    "statistic_length",
    "volume_lp",
    "volume_monte_carlo",
]
