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

#include "knorm/linreg.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "knorm/sampling.h"
#include "knorm/statistics.h"

namespace knorm {
namespace {

// 0-based offsets into the statistic vector; predictor indices are 1-based.
int ColumnSumIndex(int j) { return j - 1; }
int ProductIndex(int p, int j, int k) { return p + (k - 1) * k / 2 + (j - 1); }
int ResponseSumIndex(int p) { return p + p * (p + 1) / 2; }
int ResponseCrossIndex(int p, int j) { return ResponseSumIndex(p) + j; }

std::string Trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\"");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\"");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(Trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

}  // namespace

int StatisticLength(int predictors) {
  if (predictors < 1) throw std::invalid_argument("need at least 1 predictor");
  const int p = predictors;
  return (p + 1) * (p + 2) / 2 - 1 + (p + 1);
}

RegressionDataset::RegressionDataset(Eigen::MatrixXd design,
                                     Eigen::VectorXd response,
                                     std::vector<std::string> predictor_names)
    : design_(std::move(design)),
      response_(std::move(response)),
      names_(std::move(predictor_names)) {
  if (design_.cols() < 2) {
    throw std::invalid_argument("design needs an intercept and a predictor");
  }
  if (design_.rows() != response_.size() || design_.rows() == 0) {
    throw std::invalid_argument("design and response row counts differ");
  }
  if (names_.empty()) {
    for (int j = 1; j < design_.cols(); ++j) {
      names_.push_back("x" + std::to_string(j));
    }
  }
  if (static_cast<Eigen::Index>(names_.size()) != design_.cols() - 1) {
    throw std::invalid_argument("one name per predictor expected");
  }
  for (Eigen::Index i = 0; i < design_.rows(); ++i) {
    if (design_(i, 0) != 1.0) {
      throw std::domain_error("first design column must be all ones (row " +
                              std::to_string(i) + ")");
    }
    for (Eigen::Index j = 1; j < design_.cols(); ++j) {
      if (!(std::abs(design_(i, j)) <= 1.0)) {
        throw std::domain_error("design entry outside [-1, 1] at row " +
                                std::to_string(i) + ", column " +
                                std::to_string(j));
      }
    }
    if (!(std::abs(response_[i]) <= 1.0)) {
      throw std::domain_error("response outside [-1, 1] at row " +
                              std::to_string(i));
    }
  }
}

std::vector<StatisticSlot> StatisticLayout(int predictors) {
  const int p = predictors;
  std::vector<StatisticSlot> layout(StatisticLength(p));
  for (int j = 1; j <= p; ++j) {
    layout[ColumnSumIndex(j)] = {SlotKind::kColumnSum, j, 0, false,
                                 "sum_x" + std::to_string(j)};
  }
  for (int k = 1; k <= p; ++k) {
    for (int j = 1; j <= k; ++j) {
      if (j == k) {
        layout[ProductIndex(p, j, k)] = {SlotKind::kSquareSum, j, k, true,
                                         "2sum_x" + std::to_string(j) + "^2"};
      } else {
        layout[ProductIndex(p, j, k)] = {
            SlotKind::kCrossSum, j, k, false,
            "sum_x" + std::to_string(j) + "x" + std::to_string(k)};
      }
    }
  }
  layout[ResponseSumIndex(p)] = {SlotKind::kResponseSum, 0, 0, false, "sum_y"};
  for (int j = 1; j <= p; ++j) {
    layout[ResponseCrossIndex(p, j)] = {SlotKind::kResponseCross, j, 0, false,
                                        "sum_x" + std::to_string(j) + "y"};
  }
  return layout;
}

StatisticVector BuildStatistic(const RegressionDataset& data) {
  return BuildStatisticUnchecked(data.design(), data.response());
}

StatisticVector BuildStatisticUnchecked(const Eigen::MatrixXd& x,
                                        const Eigen::VectorXd& y) {
  const int p = static_cast<int>(x.cols()) - 1;
  const Eigen::MatrixXd xtx = x.transpose() * x;
  const Eigen::VectorXd xty = x.transpose() * y;
  StatisticVector t;
  t.predictors = p;
  t.values.assign(StatisticLength(p), 0.0);
  for (int j = 1; j <= p; ++j) t.values[ColumnSumIndex(j)] = xtx(0, j);
  for (int k = 1; k <= p; ++k) {
    for (int j = 1; j <= k; ++j) {
      t.values[ProductIndex(p, j, k)] = (j == k ? 2.0 : 1.0) * xtx(j, k);
    }
  }
  t.values[ResponseSumIndex(p)] = xty(0);
  for (int j = 1; j <= p; ++j) t.values[ResponseCrossIndex(p, j)] = xty(j);
  return t;
}

bool KtMember(std::span<const double> u, int predictors) {
  const int p = predictors;
  if (static_cast<int>(u.size()) != StatisticLength(p)) {
    throw std::invalid_argument("K_T membership: length mismatch");
  }
  for (double v : u) {
    if (!(std::abs(v) <= 2.0)) return false;
  }
  for (int j = 1; j <= p; ++j) {
    const double pair[2] = {u[ColumnSumIndex(j)], u[ProductIndex(p, j, j)]};
    if (!K2Member(pair)) return false;
  }
  for (int k = 2; k <= p; ++k) {
    for (int j = 1; j < k; ++j) {
      const double triple[3] = {u[ColumnSumIndex(j)], u[ColumnSumIndex(k)],
                                u[ProductIndex(p, j, k)]};
      if (!K3Member(triple)) return false;
    }
  }
  for (int j = 1; j <= p; ++j) {
    const double triple[3] = {u[ColumnSumIndex(j)], u[ResponseSumIndex(p)],
                              u[ResponseCrossIndex(p, j)]};
    if (!K3Member(triple)) return false;
  }
  return true;
}

NormBall MakeKtHull(int predictors) {
  return NormBall::Oracle(
      "kt",
      [predictors](std::span<const double> u) {
        return KtMember(u, predictors);
      },
      2.0, StatisticLength(predictors));
}

const char* LinregMechanismName(LinregMechanism mech) {
  switch (mech) {
    case LinregMechanism::kL1:
      return "l1";
    case LinregMechanism::kLinf:
      return "linf";
    case LinregMechanism::kOptimalKt:
      return "kt";
  }
  return "l1";
}

LinregMechanism ParseLinregMechanism(const std::string& name) {
  if (name == "l1") return LinregMechanism::kL1;
  if (name == "linf") return LinregMechanism::kLinf;
  if (name == "kt") return LinregMechanism::kOptimalKt;
  throw std::invalid_argument("unknown regression mechanism '" + name +
                              "' (expected l1, linf or kt)");
}

StatisticVector SanitizeStatistic(const StatisticVector& t,
                                  LinregMechanism mech, double epsilon,
                                  RngStream& rng) {
  const int d = static_cast<int>(t.values.size());
  if (d != StatisticLength(t.predictors)) {
    throw std::invalid_argument("statistic length does not match layout");
  }
  StatisticVector out;
  out.predictors = t.predictors;
  switch (mech) {
    case LinregMechanism::kL1:
      out.values = SampleL1Mechanism(t.values, 2.0 * d, epsilon, rng);
      break;
    case LinregMechanism::kLinf:
      out.values = SampleLinfMechanism(t.values, 2.0, epsilon, rng);
      break;
    case LinregMechanism::kOptimalKt:
      out.values = SampleKMechanismRejection(
          t.values, MakeKtHull(t.predictors), 1.0, epsilon, rng);
      break;
  }
  return out;
}

Eigen::VectorXd PseudoInverseSolve(const Eigen::MatrixXd& a,
                                   const Eigen::VectorXd& b, double rel_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double cutoff = sigma.size() ? rel_tol * sigma[0] : 0.0;
  Eigen::VectorXd coeffs = svd.matrixU().transpose() * b;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    coeffs[i] = sigma[i] > cutoff && sigma[i] > 0.0 ? coeffs[i] / sigma[i] : 0.0;
  }
  return svd.matrixV() * coeffs;
}

Eigen::VectorXd DpEstimate(const StatisticVector& sanitized, int64_t n) {
  const int p = sanitized.predictors;
  const std::vector<double>& v = sanitized.values;
  if (static_cast<int>(v.size()) != StatisticLength(p)) {
    throw std::invalid_argument("statistic length does not match layout");
  }
  Eigen::MatrixXd xtx(p + 1, p + 1);
  Eigen::VectorXd xty(p + 1);
  xtx(0, 0) = static_cast<double>(n);
  for (int j = 1; j <= p; ++j) {
    xtx(0, j) = xtx(j, 0) = v[ColumnSumIndex(j)];
    for (int k = j; k <= p; ++k) {
      const double s = v[ProductIndex(p, j, k)];
      xtx(j, k) = xtx(k, j) = j == k ? s / 2.0 : s;
    }
    xty(j) = v[ResponseCrossIndex(p, j)];
  }
  xty(0) = v[ResponseSumIndex(p)];
  return PseudoInverseSolve(
      xtx, xty, (p + 1) * std::numeric_limits<double>::epsilon());
}

const std::vector<double>& Table::column(const std::string& name) const {
  for (size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return columns[i];
  }
  throw std::invalid_argument("no column named '" + name + "'");
}

Table ReadCsvTable(std::istream& in) {
  Table table;
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty CSV input");
  table.names = SplitCsvLine(line);
  for (const auto& name : table.names) {
    if (name.empty()) throw std::invalid_argument("CSV header has an empty name");
  }
  table.columns.resize(table.names.size());
  int64_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (Trim(line).empty()) continue;
    const auto fields = SplitCsvLine(line);
    if (fields.size() != table.names.size()) {
      throw std::invalid_argument(
          "CSV row " + std::to_string(row) + " has " +
          std::to_string(fields.size()) + " fields, expected " +
          std::to_string(table.names.size()));
    }
    for (size_t c = 0; c < fields.size(); ++c) {
      size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(fields[c], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != fields[c].size() || !std::isfinite(value)) {
        throw std::invalid_argument("CSV row " + std::to_string(row) +
                                    ", column '" + table.names[c] +
                                    "': not a finite number: '" + fields[c] +
                                    "'");
      }
      table.columns[c].push_back(value);
    }
  }
  if (table.rows() == 0) throw std::invalid_argument("CSV has no data rows");
  return table;
}

std::vector<double> ClampToQuantiles(std::span<const double> column,
                                     double lower_q, double upper_q) {
  if (!(lower_q >= 0.0 && lower_q < upper_q && upper_q <= 1.0)) {
    throw std::invalid_argument("need 0 <= lower_q < upper_q <= 1");
  }
  std::vector<double> sorted(column.begin(), column.end());
  std::sort(sorted.begin(), sorted.end());
  const double lo = EmpiricalQuantile(sorted, lower_q);
  const double hi = EmpiricalQuantile(sorted, upper_q);
  std::vector<double> out(column.begin(), column.end());
  for (double& x : out) x = std::clamp(x, lo, hi);
  return out;
}

RegressionDataset Preprocess(const Table& raw, const PreprocessConfig& config) {
  const int64_t n = raw.rows();
  if (n == 0) throw std::invalid_argument("no rows to preprocess");
  for (const auto& name : config.log_columns) raw.column(name);
  raw.column(config.response);

  auto transform = [&](size_t c) {
    const std::string& name = raw.names[c];
    std::vector<double> col = raw.columns[c];
    if (std::find(config.log_columns.begin(), config.log_columns.end(), name) !=
        config.log_columns.end()) {
      for (double& x : col) {
        if (!(x > 0.0)) {
          throw std::domain_error("log column '" + name +
                                  "' has a non-positive value");
        }
        x = std::log(x);
      }
    }
    col = ClampToQuantiles(col, config.lower_q, config.upper_q);
    const auto [min_it, max_it] = std::minmax_element(col.begin(), col.end());
    const double lo = *min_it;
    const double hi = *max_it;
    if (!(hi > lo)) {
      throw std::invalid_argument("column '" + name +
                                  "' is constant after clamping");
    }
    for (double& x : col) {
      x = std::clamp(2.0 * (x - lo) / (hi - lo) - 1.0, -1.0, 1.0);
    }
    return col;
  };

  std::vector<std::string> predictor_names;
  std::vector<std::vector<double>> predictors;
  Eigen::VectorXd response(n);
  for (size_t c = 0; c < raw.names.size(); ++c) {
    std::vector<double> col = transform(c);
    if (raw.names[c] == config.response) {
      for (int64_t i = 0; i < n; ++i) response[i] = col[i];
    } else {
      predictor_names.push_back(raw.names[c]);
      predictors.push_back(std::move(col));
    }
  }
  Eigen::MatrixXd design(n, predictors.size() + 1);
  design.col(0).setOnes();
  for (size_t j = 0; j < predictors.size(); ++j) {
    for (int64_t i = 0; i < n; ++i) design(i, j + 1) = predictors[j][i];
  }
  return RegressionDataset(std::move(design), std::move(response),
                           std::move(predictor_names));
}

}  // namespace knorm
