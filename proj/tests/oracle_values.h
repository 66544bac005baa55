// Copyright 2026 The knorm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Generated by tests/oracles/derive_oracles.py; do not edit.
#ifndef KNORM_TESTS_ORACLE_VALUES_H_
#define KNORM_TESTS_ORACLE_VALUES_H_

namespace knorm::oracle {

// Dense grid maximum of |u1| + |u2| over the boundary of the pair space.
inline constexpr double kDelta1 = 3.125;
// Closed form (1/4) sqrt(71 + 8 sqrt 2).
inline constexpr double kDelta2Closed = 2.268172564243415;
// Dense grid maximum of the l2 norm on the same boundary.
inline constexpr double kDelta2Grid = 2.2681725642434145;
// Dense grid maximum of the l-inf norm.
inline constexpr double kDeltaInf = 2.0;
// Area of the l2 disk of radius kDelta2Closed.
inline constexpr double kVolumeL2Exact = 16.16225886938389;
// Area of the l1 diamond of radius 3.125.
inline constexpr double kVolumeL1Exact = 19.53125;
// Quadrature of the K2 hull area.
inline constexpr double kK2Volume = 13.333333333333334;
// Cube of side 4 minus eight corner simplices of volume 8/6.
inline constexpr double kK3Volume = 53.333333333333336;
// K2 area over its box area.
inline constexpr double kK2Acceptance = 0.8333333333333334;
// K3 volume over its box volume.
inline constexpr double kK3Acceptance = 0.8333333333333334;
// Grid-scan gauge of (1, 2) in K2; grid step 2e-6.
inline constexpr double kK2GaugeVertex = 1.0000007499999999;
// Grid-scan gauge of (0.5, 1) in K2; grid step 2e-6.
inline constexpr double kK2GaugeHalf = 0.5000008749999999;
// Root of the Gamma(2, 1) CDF at 1/2.
inline constexpr double kGammaMedianShape2 = 1.6783469900166605;
// Same quantile from scipy.special.gammaincinv.
inline constexpr double kGammaMedianShape2Scipy = 1.6783469900166612;
// Differential entropy of Laplace(1): 1 + log 2.
inline constexpr double kLaplaceEntropy = 1.6931471805599454;
// log((2e)^2 * 2! * 4) for the l-inf ball, delta 2, epsilon 1.
inline constexpr double kLinfEntropyM2 = 5.465735902799727;
// l2 norm of the logistic simulation coefficients.
inline constexpr double kLogisticTruthNorm = 2.03100960115899;
// Two-sided 95% t critical value with n - p - 1 = 9994 dof.
inline constexpr double kStudentT975Df9994 = 1.9602013823462576;

struct GammaCdfGolden {
  double shape;
  double rate;
  double x;
  double cdf;
};

// mpmath regularized lower incomplete gamma at 40 digits.
inline constexpr GammaCdfGolden kGammaCdfGoldens[] = {
    {1, 0.125, 0.4, 0.04877057549928599},
    {1, 0.125, 4.0, 0.3934693402873666},
    {1, 0.125, 8.0, 0.6321205588285577},
    {1, 0.125, 12.0, 0.7768698398515702},
    {1, 0.125, 24.0, 0.950212931632136},
    {1, 1.0, 0.05, 0.04877057549928599},
    {1, 1.0, 0.5, 0.3934693402873666},
    {1, 1.0, 1.0, 0.6321205588285577},
    {1, 1.0, 1.5, 0.7768698398515702},
    {1, 1.0, 3.0, 0.950212931632136},
    {1, 2.0, 0.025, 0.04877057549928599},
    {1, 2.0, 0.25, 0.3934693402873666},
    {1, 2.0, 0.5, 0.6321205588285577},
    {1, 2.0, 0.75, 0.7768698398515702},
    {1, 2.0, 1.5, 0.950212931632136},
    {2, 0.125, 0.8, 0.00467884016044447},
    {2, 0.125, 8.0, 0.26424111765711533},
    {2, 0.125, 16.0, 0.5939941502901619},
    {2, 0.125, 24.0, 0.8008517265285442},
    {2, 0.125, 48.0, 0.9826487347633355},
    {2, 1.0, 0.1, 0.00467884016044447},
    {2, 1.0, 1.0, 0.26424111765711533},
    {2, 1.0, 2.0, 0.5939941502901619},
    {2, 1.0, 3.0, 0.8008517265285442},
    {2, 1.0, 6.0, 0.9826487347633355},
    {2, 2.0, 0.05, 0.00467884016044447},
    {2, 2.0, 0.5, 0.26424111765711533},
    {2, 2.0, 1.0, 0.5939941502901619},
    {2, 2.0, 1.5, 0.8008517265285442},
    {2, 2.0, 3.0, 0.9826487347633355},
    {3, 0.125, 1.2000000000000002, 0.0005028623764016215},
    {3, 0.125, 12.0, 0.19115316946194186},
    {3, 0.125, 24.0, 0.5768099188731565},
    {3, 0.125, 36.0, 0.8264219290899639},
    {3, 0.125, 72.0, 0.9937678048936227},
    {3, 1.0, 0.15000000000000002, 0.0005028623764016215},
    {3, 1.0, 1.5, 0.19115316946194186},
    {3, 1.0, 3.0, 0.5768099188731565},
    {3, 1.0, 4.5, 0.8264219290899639},
    {3, 1.0, 9.0, 0.9937678048936227},
    {3, 2.0, 0.07500000000000001, 0.0005028623764016215},
    {3, 2.0, 0.75, 0.19115316946194186},
    {3, 2.0, 1.5, 0.5768099188731565},
    {3, 2.0, 2.25, 0.8264219290899639},
    {3, 2.0, 4.5, 0.9937678048936227},
    {7, 0.125, 2.8000000000000003, 9.405287952995834e-08},
    {7, 0.125, 28.0, 0.06528809702895369},
    {7, 0.125, 56.0, 0.5502889441513011},
    {7, 0.125, 84.0, 0.898367499283443},
    {7, 0.125, 168.0, 0.9998763715367985},
    {7, 1.0, 0.35000000000000003, 9.405287952995834e-08},
    {7, 1.0, 3.5, 0.06528809702895369},
    {7, 1.0, 7.0, 0.5502889441513011},
    {7, 1.0, 10.5, 0.898367499283443},
    {7, 1.0, 21.0, 0.9998763715367985},
    {7, 2.0, 0.17500000000000002, 9.405287952995834e-08},
    {7, 2.0, 1.75, 0.06528809702895369},
    {7, 2.0, 3.5, 0.5502889441513011},
    {7, 2.0, 5.25, 0.898367499283443},
    {7, 2.0, 10.5, 0.9998763715367985},
    {8, 0.125, 3.2, 1.139969710234254e-08},
    {8, 0.125, 32.0, 0.05113361579284734},
    {8, 0.125, 64.0, 0.5470391905130055},
    {8, 0.125, 96.0, 0.9104955031598242},
    {8, 0.125, 192.0, 0.9999525000804005},
    {8, 1.0, 0.4, 1.139969710234254e-08},
    {8, 1.0, 4.0, 0.05113361579284734},
    {8, 1.0, 8.0, 0.5470391905130055},
    {8, 1.0, 12.0, 0.9104955031598242},
    {8, 1.0, 24.0, 0.9999525000804005},
    {8, 2.0, 0.2, 1.139969710234254e-08},
    {8, 2.0, 2.0, 0.05113361579284734},
    {8, 2.0, 4.0, 0.5470391905130055},
    {8, 2.0, 6.0, 0.9104955031598242},
    {8, 2.0, 12.0, 0.9999525000804005},
    {26, 0.125, 10.4, 6.512032254011388e-25},
    {26, 0.125, 104.0, 0.0009660347335227605},
    {26, 0.125, 208.0, 0.5260847641483836},
    {26, 0.125, 312.0, 0.9887028930938118},
    {26, 0.125, 624.0, 0.9999999999974828},
    {26, 1.0, 1.3, 6.512032254011388e-25},
    {26, 1.0, 13.0, 0.0009660347335227605},
    {26, 1.0, 26.0, 0.5260847641483836},
    {26, 1.0, 39.0, 0.9887028930938118},
    {26, 1.0, 78.0, 0.9999999999974828},
    {26, 2.0, 0.65, 6.512032254011388e-25},
    {26, 2.0, 6.5, 0.0009660347335227605},
    {26, 2.0, 13.0, 0.5260847641483836},
    {26, 2.0, 19.5, 0.9887028930938118},
    {26, 2.0, 39.0, 0.9999999999974828},
    {27, 0.125, 10.8, 8.263310300006829e-26},
    {27, 0.125, 108.0, 0.0007830804545343962},
    {27, 0.125, 216.0, 0.5255969873491676},
    {27, 0.125, 324.0, 0.9898641704651541},
    {27, 0.125, 648.0, 0.999999999998996},
    {27, 1.0, 1.35, 8.263310300006829e-26},
    {27, 1.0, 13.5, 0.0007830804545343962},
    {27, 1.0, 27.0, 0.5255969873491676},
    {27, 1.0, 40.5, 0.9898641704651541},
    {27, 1.0, 81.0, 0.999999999998996},
    {27, 2.0, 0.675, 8.263310300006829e-26},
    {27, 2.0, 6.75, 0.0007830804545343962},
    {27, 2.0, 13.5, 0.5255969873491676},
    {27, 2.0, 20.25, 0.9898641704651541},
    {27, 2.0, 40.5, 0.999999999998996},
};

}  // namespace knorm::oracle

#endif  // KNORM_TESTS_ORACLE_VALUES_H_
