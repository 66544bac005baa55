//
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
//

#ifndef KNORM_GAMMA_DISTRIBUTION_H_
#define KNORM_GAMMA_DISTRIBUTION_H_

namespace knorm {

// Regularized lower incomplete gamma P(a, x). Series expansion below
// x = a + 1, Lentz continued fraction for Q(a, x) above; absolute accuracy
// about 1e-12 or better.
double RegularizedGammaP(double a, double x);

// CDF of Gamma(shape, rate) (mean shape / rate).
double GammaCdf(double x, double shape, double rate);

// The alpha-quantile of Gamma(shape, rate), alpha in (0, 1).
double GammaQuantile(double alpha, double shape, double rate);

}  // namespace knorm

#endif  // KNORM_GAMMA_DISTRIBUTION_H_
