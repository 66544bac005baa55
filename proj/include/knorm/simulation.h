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

#ifndef KNORM_SIMULATION_H_
#define KNORM_SIMULATION_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "knorm/linreg.h"

namespace knorm {

struct SimulationConfig {
  int64_t n = 10000;
  int predictors = 5;  // coverage simulation
  std::vector<double> epsilons;
  int replicates = 100;
  std::vector<std::string> mechanisms;
  double q = 0.5;
  uint64_t seed = 1;
  int threads = 0;  // 0: hardware concurrency
};

// Long-form results (epsilon, mechanism, replicate, metric, value) plus a
// per-(epsilon, mechanism, metric) summary. Every writer starts with config
// echo lines of the form "# key=value".
struct ResultTable {
  struct Row {
    double epsilon = 0.0;
    std::string mechanism;
    int replicate = 0;
    std::string metric;
    double value = 0.0;
  };
  struct SummaryRow {
    double epsilon = 0.0;
    std::string mechanism;
    std::string metric;
    std::string statistic;  // "median" or "mean"
    double value = 0.0;
  };

  std::vector<std::pair<std::string, std::string>> echo;
  std::vector<Row> rows;
  std::vector<SummaryRow> summary;

  void WriteLong(std::ostream& out) const;
  void WriteSummary(std::ostream& out) const;
  // Summary value for (epsilon, mechanism, metric), if present.
  std::optional<double> Summary(double epsilon, const std::string& mechanism,
                                const std::string& metric) const;
  std::optional<std::string> Echo(const std::string& key) const;
};

// Unit ball named by "l1", "l2", "linf" (dimension m), "k2", "k3",
// "kt:<p>" (p predictors; "kt" means p = 1) or a ball record.
NormBall MechanismBall(const std::string& name, int m);

// Runs fn(i) for i in [0, count) on up to `threads` workers.
void ParallelFor(int64_t count, int threads,
                 const std::function<void(int64_t)>& fn);

// Coefficients of the logistic simulation, m = 7.
Eigen::VectorXd LogisticTruth();

// Logistic regression through extended objective perturbation. Mechanisms
// from {l1, l2, linf}; records l2_error = ||beta_dp - beta|| per replicate,
// plus the MLE ("mle") and the zero vector ("zero") as baselines, and
// reports medians (lower median for even counts).
ResultTable SimulateLogistic(const SimulationConfig& config);

// Linear-regression CI coverage. Mechanisms from {l1, linf, kt}; records
// the fraction of the last p DP coefficients inside the non-private 95%
// t-intervals, plus "mle" (fraction of the true beta covered); reports
// means.
ResultTable SimulateCoverage(const SimulationConfig& config);

struct OlsFit {
  Eigen::VectorXd beta;
  Eigen::VectorXd standard_errors;
  double residual_variance = 0.0;
};

OlsFit FitOls(const Eigen::MatrixXd& design, const Eigen::VectorXd& response);

// Preprocesses a table, fits the MLE and records ||beta_dp - beta_mle||
// for each (epsilon, mechanism, replicate). The zero-vector baseline
// ||beta_mle|| is echoed in the header.
ResultTable RunRegression(const SimulationConfig& config, const Table& raw,
                          const PreprocessConfig& preprocess);

struct DiagnosticsConfig {
  std::vector<std::string> mechanisms{"l1", "l2", "linf", "k2"};
  uint64_t seed = 20190101;
  int draws = 10000;
  double level = 0.01;
  // Runs the l1 sampler with half the declared sensitivity.
  bool inject_fault = false;
};

struct DiagnosticEntry {
  std::string test;
  std::string mechanism;
  std::string setting;
  double statistic = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct DiagnosticsReport {
  std::vector<DiagnosticEntry> entries;

  bool AllPassed() const;
  void Write(std::ostream& out) const;
};

// Statistical self-tests of the samplers: Gamma-marginal KS of ||V||_K
// (Bonferroni-corrected across KS tests), unbiasedness of each coordinate,
// the Laplace histogram ratio check (with l1) and the rejection acceptance
// rate (with k2). Mechanisms from {l1, l2, linf, k2, k3, kt}.
DiagnosticsReport RunDiagnostics(const DiagnosticsConfig& config);

struct DpRatioResult {
  int bins_checked = 0;
  // max over bins of observed ratio / allowed ratio; <= 1 passes.
  double worst_ratio = 0.0;
  bool passed = false;
};

// Histograms 1-D Laplace(1/epsilon) releases of T = 0 and T = 1 and checks
// count ratios against e^epsilon (1 + 5 combined relative SE) on bins with
// at least 100 counts in both histograms.
DpRatioResult LaplaceDpRatioCheck(double epsilon, int64_t draws,
                                  uint64_t seed);

}  // namespace knorm

#endif  // KNORM_SIMULATION_H_
