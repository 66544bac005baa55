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

#ifndef KNORM_SAMPLING_H_
#define KNORM_SAMPLING_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

#include "knorm/geometry.h"
#include "knorm/rng.h"

namespace knorm {

// A K-norm mechanism: noise density proportional to
// exp(-(epsilon / delta) ||v||_K), where ||.||_K is the gauge of `ball`.
class MechanismConfig {
 public:
  // Throws std::invalid_argument unless epsilon and delta are finite and
  // positive.
  MechanismConfig(double epsilon, double delta, NormBall ball);

  double epsilon() const { return epsilon_; }
  double delta() const { return delta_; }
  const NormBall& ball() const { return ball_; }
  int dimension() const { return ball_.dimension(); }
  // Rate epsilon / delta of the Gamma law of ||V||_K.
  double rate() const { return epsilon_ / delta_; }
  ScaledBall scaled_ball() const { return {ball_, delta_}; }

  // log f(v) given the unit-ball volume lambda(K).
  double LogDensity(std::span<const double> v, double unit_volume) const;

 private:
  double epsilon_;
  double delta_;
  NormBall ball_;
};

// Raised when the rejection sampler exhausts its attempt budget.
class SamplerError : public std::runtime_error {
 public:
  SamplerError(const std::string& what, double acceptance_rate)
      : std::runtime_error(what), acceptance_rate_(acceptance_rate) {}
  double acceptance_rate() const { return acceptance_rate_; }

 private:
  double acceptance_rate_;
};

// Gamma(shape, rate) for integer shape, as a sum of exponentials.
double SampleGammaInt(int shape, double rate, RngStream& rng);

// Laplace(0, scale) by inverse CDF of a uniform deviate u in (0, 1).
double LaplaceFromUniform(double u, double scale);

// T + V with V_j iid Laplace(delta1 / epsilon).
Vector SampleL1Mechanism(std::span<const double> t, double delta1,
                         double epsilon, RngStream& rng);

// T + r Z / ||Z||_2 with Z standard normal and r ~ Gamma(m, epsilon/delta2).
Vector SampleL2Mechanism(std::span<const double> t, double delta2,
                         double epsilon, RngStream& rng);

// T + r (U_1, ..., U_m) with U_j ~ U(-1, 1), r ~ Gamma(m + 1,
// epsilon/delta_inf).
Vector SampleLinfMechanism(std::span<const double> t, double delta_inf,
                           double epsilon, RngStream& rng);

inline constexpr int64_t kDefaultMaxAttempts = 1'000'000;

// T + r U with U uniform on the unit body (rejection from its bounding box)
// and r ~ Gamma(m + 1, epsilon / delta). Throws SamplerError after
// max_attempts consecutive rejections.
Vector SampleKMechanismRejection(std::span<const double> t,
                                 const NormBall& ball, double delta,
                                 double epsilon, RngStream& rng,
                                 int64_t max_attempts = kDefaultMaxAttempts);

// Uniform point of the unit body by rejection; `attempts` receives the
// number of box draws used.
Vector SampleUniformInBall(const NormBall& ball, RngStream& rng,
                           int64_t max_attempts, int64_t* attempts = nullptr);

// Noise vector V for `config`, dispatching to the closed-form sampler for
// l1, l2 and l-infinity balls and to rejection otherwise.
Vector SampleNoise(const MechanismConfig& config, RngStream& rng);

}  // namespace knorm

#endif  // KNORM_SAMPLING_H_
