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

#include "knorm/sampling.h"

#include <cmath>
#include <sstream>

namespace knorm {
namespace {

void CheckBudget(double delta, double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("epsilon must be finite and positive");
  }
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument("sensitivity must be finite and positive");
  }
}

}  // namespace

MechanismConfig::MechanismConfig(double epsilon, double delta, NormBall ball)
    : epsilon_(epsilon), delta_(delta), ball_(std::move(ball)) {
  CheckBudget(delta, epsilon);
}

double MechanismConfig::LogDensity(std::span<const double> v,
                                   double unit_volume) const {
  const int m = dimension();
  return m * std::log(rate()) - rate() * ball_.Gauge(v) -
         std::lgamma(m + 1.0) - std::log(unit_volume);
}

double SampleGammaInt(int shape, double rate, RngStream& rng) {
  if (shape <= 0) throw std::invalid_argument("gamma shape must be >= 1");
  if (!(rate > 0.0)) throw std::invalid_argument("gamma rate must be > 0");
  double sum = 0.0;
  for (int i = 0; i < shape; ++i) sum += rng.Exponential(rate);
  return sum;
}

double LaplaceFromUniform(double u, double scale) {
  if (u < 0.5) return scale * std::log(2.0 * u);
  return -scale * std::log(2.0 * (1.0 - u));
}

Vector SampleL1Mechanism(std::span<const double> t, double delta1,
                         double epsilon, RngStream& rng) {
  CheckBudget(delta1, epsilon);
  const double scale = delta1 / epsilon;
  Vector out(t.begin(), t.end());
  for (double& x : out) x += LaplaceFromUniform(rng.Uniform01(), scale);
  return out;
}

Vector SampleL2Mechanism(std::span<const double> t, double delta2,
                         double epsilon, RngStream& rng) {
  CheckBudget(delta2, epsilon);
  const int m = static_cast<int>(t.size());
  Vector z(m);
  double norm = 0.0;
  do {
    for (double& zi : z) zi = rng.StandardNormal();
    norm = LpNorm(z, 2.0);
  } while (norm == 0.0);
  const double r = SampleGammaInt(m, epsilon / delta2, rng);
  Vector out(t.begin(), t.end());
  for (int i = 0; i < m; ++i) out[i] += r * z[i] / norm;
  return out;
}

Vector SampleLinfMechanism(std::span<const double> t, double delta_inf,
                           double epsilon, RngStream& rng) {
  CheckBudget(delta_inf, epsilon);
  const int m = static_cast<int>(t.size());
  Vector u(m);
  for (double& ui : u) ui = rng.Uniform(-1.0, 1.0);
  const double r = SampleGammaInt(m + 1, epsilon / delta_inf, rng);
  Vector out(t.begin(), t.end());
  for (int i = 0; i < m; ++i) out[i] += r * u[i];
  return out;
}

Vector SampleUniformInBall(const NormBall& ball, RngStream& rng,
                           int64_t max_attempts, int64_t* attempts) {
  const double b = ball.bound();
  Vector u(ball.dimension());
  for (int64_t k = 1; k <= max_attempts; ++k) {
    for (double& ui : u) ui = rng.Uniform(-b, b);
    if (ball.Contains(u)) {
      if (attempts) *attempts = k;
      return u;
    }
  }
  if (attempts) *attempts = max_attempts;
  std::ostringstream msg;
  msg << "rejection sampler for '" << ball.name() << "' accepted nothing in "
      << max_attempts << " attempts (acceptance rate < " << 1.0 / max_attempts
      << ")";
  throw SamplerError(msg.str(), 0.0);
}

Vector SampleKMechanismRejection(std::span<const double> t,
                                 const NormBall& ball, double delta,
                                 double epsilon, RngStream& rng,
                                 int64_t max_attempts) {
  CheckBudget(delta, epsilon);
  if (static_cast<int>(t.size()) != ball.dimension()) {
    throw std::invalid_argument("statistic and ball dimensions differ");
  }
  if (max_attempts < 1) throw std::invalid_argument("max_attempts must be >= 1");
  const int m = ball.dimension();
  const double r = SampleGammaInt(m + 1, epsilon / delta, rng);
  const Vector u = SampleUniformInBall(ball, rng, max_attempts);
  Vector out(t.begin(), t.end());
  for (int i = 0; i < m; ++i) out[i] += r * u[i];
  return out;
}

Vector SampleNoise(const MechanismConfig& config, RngStream& rng) {
  const NormBall& ball = config.ball();
  const Vector zero(config.dimension(), 0.0);
  if (ball.is_lp()) {
    // ||v||_K = ||v||_p / radius, so the lp sensitivity is delta * radius.
    const double delta_p = config.delta() * ball.radius();
    if (ball.p() == 1.0) {
      return SampleL1Mechanism(zero, delta_p, config.epsilon(), rng);
    }
    if (ball.p() == 2.0) {
      return SampleL2Mechanism(zero, delta_p, config.epsilon(), rng);
    }
    if (std::isinf(ball.p())) {
      return SampleLinfMechanism(zero, delta_p, config.epsilon(), rng);
    }
  }
  return SampleKMechanismRejection(zero, ball, config.delta(),
                                   config.epsilon(), rng);
}

}  // namespace knorm
