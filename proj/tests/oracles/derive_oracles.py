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
"""Independent oracles for the frozen constants in oracle_values.h.

Every value is computed here without touching the C++ library, using
mpmath (arbitrary precision), scipy.special, or brute-force numpy scans.
Run `python3 derive_oracles.py > oracle_values.h` to regenerate.
"""

import math

import mpmath as mp
import numpy as np
from scipy import special, stats

mp.mp.dps = 40


def brute_gauge_k2(x, steps=2_000_001):
    # Smallest t on a fine grid with x / t inside K2.
    ts = np.linspace(1e-6, 4.0, steps)
    u1 = np.abs(x[0] / ts)
    u2 = np.abs(x[1] / ts)
    cap = np.where(u1 > 1, 2 - 2 * (u1 - 1) ** 2, 2.0)
    inside = (u1 <= 2) & (u2 <= 2) & (u2 <= cap)
    return ts[np.argmax(inside)]


def quadratic_pair_sensitivity(p, steps=20_000_001):
    u1 = np.linspace(0.0, 2.0, steps)
    u2 = np.where(u1 <= 1, 2.0, 2 - 2 * (u1 - 1) ** 2)
    if math.isinf(p):
        return float(np.max(np.maximum(u1, u2)))
    return float(np.max((u1 ** p + u2 ** p) ** (1.0 / p)))


def emit(name, value, comment):
    print(f"// {comment}")
    print(f"inline constexpr double {name} = {value!r};")


def main():
    print("// Generated by tests/oracles/derive_oracles.py; do not edit.")
    print("#ifndef KNORM_TESTS_ORACLE_VALUES_H_")
    print("#define KNORM_TESTS_ORACLE_VALUES_H_")
    print()
    print("namespace knorm::oracle {")
    print()

    delta2 = mp.sqrt(71 + 8 * mp.sqrt(2)) / 4
    emit("kDelta1", float(quadratic_pair_sensitivity(1.0)),
         "Dense grid maximum of |u1| + |u2| over the boundary of the pair "
         "space.")
    emit("kDelta2Closed", float(delta2), "Closed form (1/4) sqrt(71 + 8 sqrt 2).")
    emit("kDelta2Grid", quadratic_pair_sensitivity(2.0),
         "Dense grid maximum of the l2 norm on the same boundary.")
    emit("kDeltaInf", quadratic_pair_sensitivity(math.inf),
         "Dense grid maximum of the l-inf norm.")
    emit("kVolumeL2Exact", float(mp.pi * delta2 ** 2),
         "Area of the l2 disk of radius kDelta2Closed.")
    emit("kVolumeL1Exact", float(2 * mp.mpf("3.125") ** 2),
         "Area of the l1 diamond of radius 3.125.")

    k2_area = 4 * mp.quad(lambda u: 2 if u <= 1 else 2 - 2 * (u - 1) ** 2,
                          [0, 1, 2])
    emit("kK2Volume", float(k2_area), "Quadrature of the K2 hull area.")
    k3_vol = 64 - 8 * mp.mpf(2) ** 3 / 6
    emit("kK3Volume", float(k3_vol),
         "Cube of side 4 minus eight corner simplices of volume 8/6.")
    emit("kK2Acceptance", float(k2_area / 16), "K2 area over its box area.")
    emit("kK3Acceptance", float(k3_vol / 64), "K3 volume over its box volume.")

    emit("kK2GaugeVertex", float(brute_gauge_k2((1.0, 2.0))),
         "Grid-scan gauge of (1, 2) in K2; grid step 2e-6.")
    emit("kK2GaugeHalf", float(brute_gauge_k2((0.5, 1.0))),
         "Grid-scan gauge of (0.5, 1) in K2; grid step 2e-6.")

    emit("kGammaMedianShape2", float(mp.findroot(
        lambda t: mp.gammainc(2, 0, t, regularized=True) - mp.mpf(1) / 2, 1.7)),
         "Root of the Gamma(2, 1) CDF at 1/2.")
    emit("kGammaMedianShape2Scipy", float(special.gammaincinv(2, 0.5)),
         "Same quantile from scipy.special.gammaincinv.")

    emit("kLaplaceEntropy", float(mp.log(2 * mp.e)),
         "Differential entropy of Laplace(1): 1 + log 2.")
    emit("kLinfEntropyM2", float(mp.log(32 * mp.e ** 2)),
         "log((2e)^2 * 2! * 4) for the l-inf ball, delta 2, epsilon 1.")

    beta = [0, -1, -0.5, -0.25, 0, 0.75, 1.5]
    emit("kLogisticTruthNorm", float(mp.sqrt(sum(mp.mpf(b) ** 2 for b in beta))),
         "l2 norm of the logistic simulation coefficients.")

    emit("kStudentT975Df9994", float(stats.t.ppf(0.975, 9994)),
         "Two-sided 95% t critical value with n - p - 1 = 9994 dof.")

    # Gamma CDF goldens: (shape, rate, x, cdf).
    print()
    print("struct GammaCdfGolden {")
    print("  double shape;")
    print("  double rate;")
    print("  double x;")
    print("  double cdf;")
    print("};")
    print()
    print("// mpmath regularized lower incomplete gamma at 40 digits.")
    print("inline constexpr GammaCdfGolden kGammaCdfGoldens[] = {")
    for shape in (1, 2, 3, 7, 8, 26, 27):
        for rate in (0.125, 1.0, 2.0):
            for mult in (0.05, 0.5, 1.0, 1.5, 3.0):
                x = mult * shape / rate
                cdf = mp.gammainc(shape, 0, x * rate, regularized=True)
                print(f"    {{{shape}, {rate!r}, {x!r}, {float(cdf)!r}}},")
    print("};")
    print()
    print("}  // namespace knorm::oracle")
    print()
    print("#endif  // KNORM_TESTS_ORACLE_VALUES_H_")


if __name__ == "__main__":
    main()
