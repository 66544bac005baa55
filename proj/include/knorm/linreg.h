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

#ifndef KNORM_LINREG_H_
#define KNORM_LINREG_H_

#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "knorm/geometry.h"
#include "knorm/rng.h"

namespace knorm {

// Number of unique non-constant entries of X'X and X'Y for p predictors
// plus an intercept column: [(p+1)(p+2)/2 - 1] + [p + 1].
int StatisticLength(int predictors);

// Response and predictors already in [-1, 1]. The first design column is the
// intercept (all ones).
class RegressionDataset {
 public:
  // Throws std::invalid_argument on shape errors and std::domain_error when
  // an entry falls outside [-1, 1] or the intercept column is not all ones.
  RegressionDataset(Eigen::MatrixXd design, Eigen::VectorXd response,
                    std::vector<std::string> predictor_names = {});

  const Eigen::MatrixXd& design() const { return design_; }
  const Eigen::VectorXd& response() const { return response_; }
  const std::vector<std::string>& predictor_names() const { return names_; }
  int predictors() const { return static_cast<int>(design_.cols()) - 1; }
  int64_t rows() const { return design_.rows(); }

 private:
  Eigen::MatrixXd design_;
  Eigen::VectorXd response_;
  std::vector<std::string> names_;
};

enum class SlotKind {
  kColumnSum,     // sum x_j
  kSquareSum,     // 2 sum x_j^2
  kCrossSum,      // sum x_j x_k, j < k
  kResponseSum,   // sum y
  kResponseCross  // sum x_j y
};

struct StatisticSlot {
  SlotKind kind;
  int j = 0;  // 1-based predictor indices; 0 when unused
  int k = 0;
  bool doubled = false;
  std::string name;
};

// Fixed slot order: column sums; the upper triangle of X'X column by column
// (slot (j, k) for k = 1..p, j = 1..k) with doubled diagonals; sum y; then
// sum x_j y.
std::vector<StatisticSlot> StatisticLayout(int predictors);

struct StatisticVector {
  int predictors = 0;
  Vector values;

  std::vector<StatisticSlot> layout() const {
    return StatisticLayout(predictors);
  }
};

StatisticVector BuildStatistic(const RegressionDataset& data);

// Same slots from raw arrays, skipping the [-1, 1] range checks. Simulations
// with unbounded Gaussian responses use this; the privacy guarantee then
// only holds for data that respect the ranges.
StatisticVector BuildStatisticUnchecked(const Eigen::MatrixXd& design,
                                        const Eigen::VectorXd& response);

// Membership in the conservative hull K_T: every coordinate in [-2, 2],
// every (sum x_j, 2 sum x_j^2) pair in K2, and every triple
// (sum x_j, sum x_k, sum x_j x_k) and (sum x_j, sum y, sum x_j y) in K3.
bool KtMember(std::span<const double> u, int predictors);

// K_T as an oracle ball with l-infinity bound 2.
NormBall MakeKtHull(int predictors);

enum class LinregMechanism { kL1, kLinf, kOptimalKt };

const char* LinregMechanismName(LinregMechanism mech);
// Accepts "l1", "linf", "kt".
LinregMechanism ParseLinregMechanism(const std::string& name);

// Adds l1 noise (delta = 2d), l-infinity noise (delta = 2) or K_T noise
// (delta = 1) to every slot.
StatisticVector SanitizeStatistic(const StatisticVector& t,
                                  LinregMechanism mech, double epsilon,
                                  RngStream& rng);

// Moore-Penrose solve; singular values below rel_tol * sigma_max count as 0.
Eigen::VectorXd PseudoInverseSolve(const Eigen::MatrixXd& a,
                                   const Eigen::VectorXd& b, double rel_tol);

// Rebuilds (X'X)* and (X'Y)* (halving doubled slots, restoring n) and
// returns [(X'X)*]^+ (X'Y)* with cutoff (p+1) * machine epsilon.
Eigen::VectorXd DpEstimate(const StatisticVector& sanitized, int64_t n);

// Columns of numbers with a header row.
struct Table {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;

  int64_t rows() const {
    return columns.empty() ? 0 : static_cast<int64_t>(columns[0].size());
  }
  const std::vector<double>& column(const std::string& name) const;
};

// Reads a header row and numeric records. Throws std::invalid_argument
// naming the offending row and column.
Table ReadCsvTable(std::istream& in);

struct PreprocessConfig {
  std::string response;
  std::vector<std::string> log_columns;
  double lower_q = 0.0001;
  double upper_q = 0.9999;
};

// Clamps a column to its empirical [lower_q, upper_q] quantiles.
std::vector<double> ClampToQuantiles(std::span<const double> column,
                                     double lower_q, double upper_q);

// Log-transforms the configured columns, clamps every column to its
// quantiles, maps each clamped column affinely onto [-1, 1] and prepends the
// intercept.
RegressionDataset Preprocess(const Table& raw, const PreprocessConfig& config);

}  // namespace knorm

#endif  // KNORM_LINREG_H_
