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

#ifndef KNORM_ERM_H_
#define KNORM_ERM_H_

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "knorm/geometry.h"
#include "knorm/rng.h"

namespace knorm {

struct Example {
  Eigen::VectorXd x;
  double y = 0.0;
};

// A per-example convex loss with the constants objective perturbation
// needs: an upper bound on Hessian eigenvalues and a bound on
// ||grad l(theta; x) - grad l(theta; x')||_K over examples and parameters.
struct LossSpec {
  std::function<double(const Eigen::VectorXd&, const Example&)> loss;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Example&)>
      gradient;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&, const Example&)>
      hessian;
  double eigen_bound = 0.0;
  NormBall gradient_ball = NormBall::Lp(kInfinity, 1.0, 1);
  double gradient_sensitivity = 0.0;
  int dimension = 0;
};

struct LossParts {
  double loss = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
};

// Logistic negative log-likelihood log(1 + e^z) - y z with z = theta'x.
// Throws std::domain_error unless every x_j lies in [-1, 1] and y in {0, 1}.
LossParts LogisticLossParts(const Eigen::VectorXd& theta,
                            const Eigen::VectorXd& x, double y);

// Gradient sensitivity of the logistic loss: 2, 2 sqrt(m) or 2m for p = inf,
// 2 or 1.
double LogisticSensitivity(int m, double p);

// Logistic LossSpec in dimension m whose noise uses the lp ball.
LossSpec LogisticLoss(int m, double p);

// gamma = lambda / (exp(epsilon (1 - q)) - 1).
double ObjPertGamma(double lambda, double epsilon, double q);

struct ObjPertConfig {
  double epsilon = 1.0;
  double q = 0.5;
  LossSpec loss;
};

struct NewtonOptions {
  double gradient_tolerance = 1e-8;
  int max_iterations = 500;
  double armijo = 1e-4;
};

struct NewtonResult {
  Eigen::VectorXd theta;
  int iterations = 0;
  double gradient_norm = 0.0;
};

class OptimizerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Minimizes (1/n) sum l(theta; x_i) + gamma/(2n) |theta|^2 + noise'theta/n
// by damped Newton with backtracking, stopping at gradient l2-norm
// <= gradient_tolerance. Throws OptimizerError at the iteration cap.
NewtonResult MinimizePerturbedObjective(
    const LossSpec& loss, std::span<const Example> data, double gamma,
    const Eigen::VectorXd& noise, const NewtonOptions& options = {},
    std::optional<Eigen::VectorXd> start = std::nullopt);

// Extended objective perturbation: sets gamma, draws V with density
// proportional to exp(-(epsilon q / delta) ||V||_K) and returns the
// minimizer of the perturbed objective.
Eigen::VectorXd ObjectivePerturbation(const ObjPertConfig& config,
                                      std::span<const Example> data,
                                      RngStream& rng);

}  // namespace knorm

#endif  // KNORM_ERM_H_
