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

#include "knorm/erm.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "knorm/sampling.h"

namespace knorm {
namespace {

void CheckLogisticExample(const Eigen::VectorXd& x, double y) {
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (!(std::abs(x[j]) <= 1.0)) {
      throw std::domain_error("logistic features must lie in [-1, 1]");
    }
  }
  if (y != 0.0 && y != 1.0) {
    throw std::domain_error("logistic labels must be 0 or 1");
  }
}

// log(1 + e^z) without overflow.
double Softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double Sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

struct Evaluation {
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
};

double ObjectiveValue(const LossSpec& loss, std::span<const Example> data,
                      double gamma, const Eigen::VectorXd& noise,
                      const Eigen::VectorXd& theta) {
  const double n = static_cast<double>(data.size());
  double sum = 0.0;
  for (const Example& e : data) sum += loss.loss(theta, e);
  return (sum + 0.5 * gamma * theta.squaredNorm() + noise.dot(theta)) / n;
}

Evaluation Evaluate(const LossSpec& loss, std::span<const Example> data,
                    double gamma, const Eigen::VectorXd& noise,
                    const Eigen::VectorXd& theta) {
  const int m = static_cast<int>(theta.size());
  const double n = static_cast<double>(data.size());
  Evaluation ev;
  ev.gradient = Eigen::VectorXd::Zero(m);
  ev.hessian = Eigen::MatrixXd::Zero(m, m);
  for (const Example& e : data) {
    ev.value += loss.loss(theta, e);
    ev.gradient += loss.gradient(theta, e);
    ev.hessian += loss.hessian(theta, e);
  }
  ev.value = (ev.value + 0.5 * gamma * theta.squaredNorm() + noise.dot(theta)) / n;
  ev.gradient = (ev.gradient + gamma * theta + noise) / n;
  ev.hessian.diagonal().array() += gamma;
  ev.hessian /= n;
  return ev;
}

}  // namespace

LossParts LogisticLossParts(const Eigen::VectorXd& theta,
                            const Eigen::VectorXd& x, double y) {
  if (theta.size() != x.size()) {
    throw std::invalid_argument("theta and x dimensions differ");
  }
  CheckLogisticExample(x, y);
  const double z = theta.dot(x);
  const double s = Sigmoid(z);
  return {Softplus(z) - y * z, (s - y) * x, s * (1.0 - s) * x * x.transpose()};
}

double LogisticSensitivity(int m, double p) {
  if (m < 1) throw std::invalid_argument("dimension must be >= 1");
  if (std::isinf(p)) return 2.0;
  if (p == 2.0) return 2.0 * std::sqrt(static_cast<double>(m));
  if (p == 1.0) return 2.0 * m;
  throw std::invalid_argument("logistic sensitivity known for p in {1, 2, inf}");
}

LossSpec LogisticLoss(int m, double p) {
  LossSpec spec;
  spec.dimension = m;
  spec.eigen_bound = m / 4.0;
  spec.gradient_ball = NormBall::Lp(p, 1.0, m);
  spec.gradient_sensitivity = LogisticSensitivity(m, p);
  // Unchecked hot path; LogisticLossParts carries the range checks.
  spec.loss = [](const Eigen::VectorXd& theta, const Example& e) {
    const double z = theta.dot(e.x);
    return Softplus(z) - e.y * z;
  };
  spec.gradient = [](const Eigen::VectorXd& theta, const Example& e) {
    return Eigen::VectorXd((Sigmoid(theta.dot(e.x)) - e.y) * e.x);
  };
  spec.hessian = [](const Eigen::VectorXd& theta, const Example& e) {
    const double s = Sigmoid(theta.dot(e.x));
    return Eigen::MatrixXd(s * (1.0 - s) * e.x * e.x.transpose());
  };
  return spec;
}

double ObjPertGamma(double lambda, double epsilon, double q) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("q must lie in (0, 1)");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  return lambda / std::expm1(epsilon * (1.0 - q));
}

NewtonResult MinimizePerturbedObjective(const LossSpec& loss,
                                        std::span<const Example> data,
                                        double gamma,
                                        const Eigen::VectorXd& noise,
                                        const NewtonOptions& options,
                                        std::optional<Eigen::VectorXd> start) {
  if (data.empty()) throw std::invalid_argument("need at least one example");
  const int m = loss.dimension;
  if (noise.size() != m) throw std::invalid_argument("noise dimension mismatch");
  NewtonResult result;
  result.theta = start ? *start : Eigen::VectorXd::Zero(m);
  if (result.theta.size() != m) {
    throw std::invalid_argument("start point dimension mismatch");
  }

  for (int iter = 0; iter <= options.max_iterations; ++iter) {
    const Evaluation ev = Evaluate(loss, data, gamma, noise, result.theta);
    result.iterations = iter;
    result.gradient_norm = ev.gradient.norm();
    if (result.gradient_norm <= options.gradient_tolerance) return result;
    if (iter == options.max_iterations) break;

    Eigen::VectorXd direction;
    Eigen::LLT<Eigen::MatrixXd> llt(ev.hessian);
    if (llt.info() == Eigen::Success) direction = -llt.solve(ev.gradient);
    double slope = direction.size() ? ev.gradient.dot(direction) : 0.0;
    if (!direction.allFinite() || !(slope < 0.0)) {
      direction = -ev.gradient;
      slope = -ev.gradient.squaredNorm();
    }

    double step = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 60; ++halving) {
      const Eigen::VectorXd candidate = result.theta + step * direction;
      const double value = ObjectiveValue(loss, data, gamma, noise, candidate);
      if (value <= ev.value + options.armijo * step * slope) {
        result.theta = candidate;
        accepted = true;
        break;
      }
      // Near the optimum the predicted decrease falls below the rounding
      // level of the objective; judge the full step by the gradient instead.
      const double noise_floor =
          64.0 * std::numeric_limits<double>::epsilon() *
          std::max(1.0, std::abs(ev.value));
      if (halving == 0 && std::abs(value - ev.value) <= noise_floor &&
          Evaluate(loss, data, gamma, noise, candidate).gradient.norm() <
              result.gradient_norm) {
        result.theta = candidate;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // Take the full Newton step when rounding hides any decrease.
      result.theta += direction;
    }
  }
  std::ostringstream msg;
  msg << "Newton solver did not converge in " << options.max_iterations
      << " iterations (gradient norm " << result.gradient_norm << ")";
  throw OptimizerError(msg.str());
}

Eigen::VectorXd ObjectivePerturbation(const ObjPertConfig& config,
                                      std::span<const Example> data,
                                      RngStream& rng) {
  if (data.empty()) throw std::invalid_argument("need at least one example");
  const LossSpec& loss = config.loss;
  const double gamma =
      ObjPertGamma(loss.eigen_bound, config.epsilon, config.q);
  if (!std::isfinite(gamma)) throw std::invalid_argument("gamma is not finite");
  for (const Example& e : data) {
    if (e.x.size() != loss.dimension) {
      throw std::invalid_argument("example dimension mismatch");
    }
  }
  const MechanismConfig noise_law(config.epsilon * config.q,
                                  loss.gradient_sensitivity,
                                  loss.gradient_ball);
  const Vector v = SampleNoise(noise_law, rng);
  const Eigen::VectorXd noise = Eigen::Map<const Eigen::VectorXd>(
      v.data(), static_cast<Eigen::Index>(v.size()));
  return MinimizePerturbedObjective(loss, data, gamma, noise).theta;
}

}  // namespace knorm
