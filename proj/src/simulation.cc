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

#include "knorm/simulation.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <boost/math/distributions/students_t.hpp>

#include "knorm/erm.h"
#include "knorm/gamma_distribution.h"
#include "knorm/geometry.h"
#include "knorm/sampling.h"
#include "knorm/statistics.h"

namespace knorm {
namespace {

constexpr uint64_t kNoiseStreamBase = uint64_t{1} << 40;
constexpr uint64_t kMaxEpsilons = 4096;
constexpr uint64_t kMaxMechanisms = 64;

uint64_t NoiseStream(int replicate, size_t eps_index, size_t mech_index) {
  return kNoiseStreamBase +
         (static_cast<uint64_t>(replicate) * kMaxEpsilons + eps_index) *
             kMaxMechanisms +
         mech_index;
}

std::string FormatDouble(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return ec == std::errc() ? std::string(buf, end) : std::to_string(x);
}

std::string JoinDoubles(const std::vector<double>& xs) {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ";";
    out += FormatDouble(xs[i]);
  }
  return out;
}

std::string JoinStrings(const std::vector<std::string>& xs) {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ";";
    out += xs[i];
  }
  return out;
}

void ValidateCommon(const SimulationConfig& config,
                    const std::set<std::string>& allowed) {
  if (config.replicates < 1) throw std::invalid_argument("replicates must be >= 1");
  if (config.n < 2) throw std::invalid_argument("n must be >= 2");
  if (config.epsilons.empty()) throw std::invalid_argument("no epsilon values");
  if (config.epsilons.size() > kMaxEpsilons) {
    throw std::invalid_argument("too many epsilon values");
  }
  for (double e : config.epsilons) {
    if (!(e > 0.0) || !std::isfinite(e)) {
      throw std::invalid_argument("epsilon values must be finite and > 0");
    }
  }
  if (config.mechanisms.empty()) throw std::invalid_argument("no mechanisms");
  for (const auto& m : config.mechanisms) {
    if (!allowed.count(m)) {
      throw std::invalid_argument("mechanism '" + m +
                                  "' is not offered for this experiment");
    }
  }
}

std::vector<std::pair<std::string, std::string>> EchoConfig(
    const std::string& experiment, const SimulationConfig& config) {
  return {{"experiment", experiment},
          {"seed", std::to_string(config.seed)},
          {"n", std::to_string(config.n)},
          {"epsilons", JoinDoubles(config.epsilons)},
          {"mechanisms", JoinStrings(config.mechanisms)},
          {"replicates", std::to_string(config.replicates)},
          {"q", FormatDouble(config.q)}};
}

double PNormOf(const std::string& mech) {
  if (mech == "l1") return 1.0;
  if (mech == "l2") return 2.0;
  return kInfinity;
}

// Fills rows in (epsilon, mechanism, replicate) order and summarizes.
void EmitGrid(ResultTable& table, const SimulationConfig& config,
              const std::string& metric, const std::string& statistic,
              const std::vector<double>& values) {
  const size_t n_eps = config.epsilons.size();
  const size_t n_mech = config.mechanisms.size();
  const int reps = config.replicates;
  for (size_t e = 0; e < n_eps; ++e) {
    for (size_t k = 0; k < n_mech; ++k) {
      std::vector<double> cell;
      for (int r = 0; r < reps; ++r) {
        const double v = values[(r * n_eps + e) * n_mech + k];
        cell.push_back(v);
        table.rows.push_back(
            {config.epsilons[e], config.mechanisms[k], r, metric, v});
      }
      const double s = statistic == "median" ? LowerMedian(cell) : Mean(cell);
      table.summary.push_back(
          {config.epsilons[e], config.mechanisms[k], metric, statistic, s});
    }
  }
}

void EmitBaseline(ResultTable& table, const std::string& mechanism,
                  const std::string& metric, const std::string& statistic,
                  const std::vector<double>& values) {
  for (size_t r = 0; r < values.size(); ++r) {
    table.rows.push_back({0.0, mechanism, static_cast<int>(r), metric, values[r]});
  }
  const double s =
      statistic == "median" ? LowerMedian(values) : Mean(values);
  table.summary.push_back({0.0, mechanism, metric, statistic, s});
}

double TQuantile975(double df) {
  boost::math::students_t_distribution<double> dist(df);
  return boost::math::quantile(dist, 0.975);
}

}  // namespace

void ResultTable::WriteLong(std::ostream& out) const {
  for (const auto& [k, v] : echo) out << "# " << k << "=" << v << "\n";
  out << "epsilon,mechanism,replicate,metric,value\n";
  for (const Row& row : rows) {
    out << FormatDouble(row.epsilon) << "," << row.mechanism << ","
        << row.replicate << "," << row.metric << "," << FormatDouble(row.value)
        << "\n";
  }
}

void ResultTable::WriteSummary(std::ostream& out) const {
  for (const auto& [k, v] : echo) out << "# " << k << "=" << v << "\n";
  out << "epsilon,mechanism,metric,statistic,value\n";
  for (const SummaryRow& row : summary) {
    out << FormatDouble(row.epsilon) << "," << row.mechanism << ","
        << row.metric << "," << row.statistic << "," << FormatDouble(row.value)
        << "\n";
  }
}

std::optional<double> ResultTable::Summary(double epsilon,
                                           const std::string& mechanism,
                                           const std::string& metric) const {
  for (const SummaryRow& row : summary) {
    if (row.epsilon == epsilon && row.mechanism == mechanism &&
        row.metric == metric) {
      return row.value;
    }
  }
  return std::nullopt;
}

std::optional<std::string> ResultTable::Echo(const std::string& key) const {
  for (const auto& [k, v] : echo) {
    if (k == key) return v;
  }
  return std::nullopt;
}

NormBall MechanismBall(const std::string& name, int m) {
  if (name == "l1") return NormBall::Lp(1.0, 1.0, m);
  if (name == "l2") return NormBall::Lp(2.0, 1.0, m);
  if (name == "linf") return NormBall::Lp(kInfinity, 1.0, m);
  if (name == "k2") return MakeK2Hull();
  if (name == "k3") return MakeK3Hull();
  if (name == "kt") return MakeKtHull(1);
  if (name.rfind("kt:", 0) == 0) {
    size_t used = 0;
    const int p = std::stoi(name.substr(3), &used);
    if (used != name.size() - 3) {
      throw std::invalid_argument("bad predictor count in '" + name + "'");
    }
    return MakeKtHull(p);
  }
  return NormBall::FromRecord(name);
}

void ParallelFor(int64_t count, int threads,
                 const std::function<void(int64_t)>& fn) {
  if (count <= 0) return;
  int workers = threads > 0 ? threads
                            : static_cast<int>(std::thread::hardware_concurrency());
  workers = static_cast<int>(std::clamp<int64_t>(workers, 1, count));
  if (workers == 1) {
    for (int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int64_t> next{0};
  std::mutex error_mutex;
  int64_t error_index = count;
  std::exception_ptr error;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int64_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (i < error_index) {
            error_index = i;
            error = std::current_exception();
          }
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

Eigen::VectorXd LogisticTruth() {
  Eigen::VectorXd beta(7);
  beta << 0.0, -1.0, -0.5, -0.25, 0.0, 0.75, 1.5;
  return beta;
}

ResultTable SimulateLogistic(const SimulationConfig& config) {
  ValidateCommon(config, {"l1", "l2", "linf"});
  if (!(config.q > 0.0 && config.q < 1.0)) {
    throw std::invalid_argument("q must lie in (0, 1)");
  }
  const int m = 7;
  const Eigen::VectorXd beta = LogisticTruth();
  const size_t n_eps = config.epsilons.size();
  const size_t n_mech = config.mechanisms.size();
  std::vector<double> errors(config.replicates * n_eps * n_mech);
  std::vector<double> mle_errors(config.replicates);

  ParallelFor(config.replicates, config.threads, [&](int64_t r) {
    RngStream data_rng(config.seed, static_cast<uint64_t>(r));
    std::vector<Example> data(config.n);
    for (Example& e : data) {
      e.x.resize(m);
      for (int j = 0; j < m; ++j) e.x[j] = data_rng.Uniform(-1.0, 1.0);
      const double z = e.x.dot(beta);
      e.y = data_rng.Uniform01() < 1.0 / (1.0 + std::exp(-z)) ? 1.0 : 0.0;
    }
    const LossSpec mle_loss = LogisticLoss(m, kInfinity);
    const Eigen::VectorXd mle =
        MinimizePerturbedObjective(mle_loss, data, 0.0,
                                   Eigen::VectorXd::Zero(m))
            .theta;
    mle_errors[r] = (mle - beta).norm();
    for (size_t e = 0; e < n_eps; ++e) {
      for (size_t k = 0; k < n_mech; ++k) {
        ObjPertConfig op{config.epsilons[e], config.q,
                         LogisticLoss(m, PNormOf(config.mechanisms[k]))};
        RngStream noise_rng(config.seed, NoiseStream(static_cast<int>(r), e, k));
        const Eigen::VectorXd theta = ObjectivePerturbation(op, data, noise_rng);
        errors[(r * n_eps + e) * n_mech + k] = (theta - beta).norm();
      }
    }
  });

  ResultTable table;
  table.echo = EchoConfig("simulate-logistic", config);
  table.echo.push_back({"m", std::to_string(m)});
  EmitGrid(table, config, "l2_error", "median", errors);
  EmitBaseline(table, "mle", "l2_error", "median", mle_errors);
  EmitBaseline(table, "zero", "l2_error", "median",
               std::vector<double>(config.replicates, beta.norm()));
  return table;
}

OlsFit FitOls(const Eigen::MatrixXd& design, const Eigen::VectorXd& response) {
  const int64_t n = design.rows();
  const int64_t k = design.cols();
  if (n <= k) throw std::invalid_argument("OLS needs more rows than columns");
  OlsFit fit;
  const Eigen::MatrixXd gram = design.transpose() * design;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  if (ldlt.info() != Eigen::Success) {
    throw std::runtime_error("design matrix is singular");
  }
  fit.beta = ldlt.solve(design.transpose() * response);
  const Eigen::VectorXd residual = response - design * fit.beta;
  fit.residual_variance = residual.squaredNorm() / static_cast<double>(n - k);
  const Eigen::MatrixXd inverse =
      ldlt.solve(Eigen::MatrixXd::Identity(k, k));
  fit.standard_errors =
      (fit.residual_variance * inverse.diagonal()).array().sqrt();
  return fit;
}

ResultTable SimulateCoverage(const SimulationConfig& config) {
  ValidateCommon(config, {"l1", "linf", "kt"});
  const int p = config.predictors;
  if (p < 1) throw std::invalid_argument("need at least one predictor");
  Eigen::VectorXd beta(p + 1);
  beta[0] = 0.0;
  for (int j = 1; j <= p; ++j) {
    beta[j] = p == 1 ? 1.5 : -1.5 + 3.0 * (j - 1) / (p - 1);
  }
  const size_t n_eps = config.epsilons.size();
  const size_t n_mech = config.mechanisms.size();
  std::vector<LinregMechanism> mechs;
  for (const auto& name : config.mechanisms) {
    mechs.push_back(ParseLinregMechanism(name));
  }
  const double t_crit = TQuantile975(static_cast<double>(config.n - p - 1));
  std::vector<double> coverage(config.replicates * n_eps * n_mech);
  std::vector<double> mle_coverage(config.replicates);

  ParallelFor(config.replicates, config.threads, [&](int64_t r) {
    RngStream data_rng(config.seed, static_cast<uint64_t>(r));
    Eigen::MatrixXd x(config.n, p + 1);
    Eigen::VectorXd y(config.n);
    for (int64_t i = 0; i < config.n; ++i) {
      x(i, 0) = 1.0;
      for (int j = 1; j <= p; ++j) x(i, j) = data_rng.Uniform(-1.0, 1.0);
      y[i] = x.row(i).dot(beta) + data_rng.StandardNormal();
    }
    const OlsFit fit = FitOls(x, y);
    auto covered = [&](const Eigen::VectorXd& estimate) {
      int inside = 0;
      for (int j = 1; j <= p; ++j) {
        if (std::abs(estimate[j] - fit.beta[j]) <=
            t_crit * fit.standard_errors[j]) {
          ++inside;
        }
      }
      return static_cast<double>(inside) / p;
    };
    mle_coverage[r] = covered(beta);
    const StatisticVector t = BuildStatisticUnchecked(x, y);
    for (size_t e = 0; e < n_eps; ++e) {
      for (size_t k = 0; k < n_mech; ++k) {
        RngStream noise_rng(config.seed, NoiseStream(static_cast<int>(r), e, k));
        const StatisticVector noisy =
            SanitizeStatistic(t, mechs[k], config.epsilons[e], noise_rng);
        coverage[(r * n_eps + e) * n_mech + k] =
            covered(DpEstimate(noisy, config.n));
      }
    }
  });

  ResultTable table;
  table.echo = EchoConfig("simulate-coverage", config);
  table.echo.push_back({"predictors", std::to_string(p)});
  EmitGrid(table, config, "coverage", "mean", coverage);
  EmitBaseline(table, "mle", "coverage", "mean", mle_coverage);
  return table;
}

ResultTable RunRegression(const SimulationConfig& config, const Table& raw,
                          const PreprocessConfig& preprocess) {
  SimulationConfig checked = config;
  checked.n = std::max<int64_t>(raw.rows(), 2);
  ValidateCommon(checked, {"l1", "linf", "kt"});
  const RegressionDataset data = Preprocess(raw, preprocess);
  const OlsFit mle = FitOls(data.design(), data.response());
  const StatisticVector t = BuildStatistic(data);
  const size_t n_eps = config.epsilons.size();
  const size_t n_mech = config.mechanisms.size();
  std::vector<LinregMechanism> mechs;
  for (const auto& name : config.mechanisms) {
    mechs.push_back(ParseLinregMechanism(name));
  }
  std::vector<double> distance(config.replicates * n_eps * n_mech);
  ParallelFor(static_cast<int64_t>(distance.size()), config.threads,
              [&](int64_t flat) {
                const size_t k = flat % n_mech;
                const size_t e = (flat / n_mech) % n_eps;
                const int r = static_cast<int>(flat / (n_mech * n_eps));
                RngStream rng(config.seed, NoiseStream(r, e, k));
                const StatisticVector noisy =
                    SanitizeStatistic(t, mechs[k], config.epsilons[e], rng);
                distance[flat] =
                    (DpEstimate(noisy, data.rows()) - mle.beta).norm();
              });

  ResultTable table;
  SimulationConfig echoed = config;
  echoed.n = data.rows();
  table.echo = EchoConfig("run-regression", echoed);
  table.echo.push_back({"predictors", std::to_string(data.predictors())});
  table.echo.push_back({"response", preprocess.response});
  table.echo.push_back({"log_columns", JoinStrings(preprocess.log_columns)});
  table.echo.push_back({"baseline_zero_distance", FormatDouble(mle.beta.norm())});
  std::string coefficients;
  for (Eigen::Index j = 0; j < mle.beta.size(); ++j) {
    if (j) coefficients += ";";
    coefficients +=
        (j == 0 ? std::string("intercept") : data.predictor_names()[j - 1]) +
        ":" + FormatDouble(mle.beta[j]);
  }
  table.echo.push_back({"mle", coefficients});
  EmitGrid(table, config, "l2_distance_to_mle", "median", distance);
  return table;
}

bool DiagnosticsReport::AllPassed() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const DiagnosticEntry& e) { return e.passed; });
}

void DiagnosticsReport::Write(std::ostream& out) const {
  out << "test,mechanism,setting,statistic,threshold,verdict\n";
  for (const auto& e : entries) {
    out << e.test << "," << e.mechanism << "," << e.setting << ","
        << FormatDouble(e.statistic) << "," << FormatDouble(e.threshold) << ","
        << (e.passed ? "pass" : "FAIL") << "\n";
  }
}

DpRatioResult LaplaceDpRatioCheck(double epsilon, int64_t draws,
                                  uint64_t seed) {
  const double scale = 1.0 / epsilon;
  constexpr double kLo = -20.0;
  constexpr double kWidth = 0.25;
  constexpr int kBins = 168;
  std::vector<int64_t> h0(kBins, 0), h1(kBins, 0);
  RngStream rng0(seed, 0), rng1(seed, 1);
  auto bin = [&](double x) {
    const int b = static_cast<int>(std::floor((x - kLo) / kWidth));
    return std::clamp(b, 0, kBins - 1);
  };
  for (int64_t i = 0; i < draws; ++i) {
    ++h0[bin(LaplaceFromUniform(rng0.Uniform01(), scale))];
    ++h1[bin(1.0 + LaplaceFromUniform(rng1.Uniform01(), scale))];
  }
  DpRatioResult result;
  for (int b = 1; b + 1 < kBins; ++b) {
    if (h0[b] < 100 || h1[b] < 100) continue;
    ++result.bins_checked;
    const double c0 = static_cast<double>(h0[b]);
    const double c1 = static_cast<double>(h1[b]);
    const double allowed =
        std::exp(epsilon) * (1.0 + 5.0 * std::sqrt(1.0 / c0 + 1.0 / c1));
    result.worst_ratio =
        std::max({result.worst_ratio, c0 / c1 / allowed, c1 / c0 / allowed});
  }
  result.passed = result.bins_checked > 0 && result.worst_ratio <= 1.0;
  return result;
}

namespace {

struct DiagnosticCase {
  std::string mechanism;
  std::string setting;
  NormBall ball;
  double delta;
  double epsilon;
};

std::vector<DiagnosticCase> CasesFor(const std::string& mech) {
  std::vector<DiagnosticCase> cases;
  auto add_lp = [&](double p) {
    cases.push_back({mech, "m=2 delta=1 eps=1", NormBall::Lp(p, 1.0, 2), 1.0, 1.0});
    cases.push_back({mech, "m=7 delta=2 eps=0.25", NormBall::Lp(p, 1.0, 7), 2.0, 0.25});
  };
  auto add_oracle = [&](const NormBall& ball) {
    const std::string m = "m=" + std::to_string(ball.dimension());
    cases.push_back({mech, m + " delta=1 eps=1", ball, 1.0, 1.0});
    cases.push_back({mech, m + " delta=2 eps=0.25", ball, 2.0, 0.25});
  };
  if (mech == "l1") {
    add_lp(1.0);
  } else if (mech == "l2") {
    add_lp(2.0);
  } else if (mech == "linf") {
    add_lp(kInfinity);
  } else if (mech == "k2") {
    add_oracle(MakeK2Hull());
  } else if (mech == "k3") {
    add_oracle(MakeK3Hull());
  } else if (mech == "kt") {
    add_oracle(MakeKtHull(1));
  } else {
    throw std::invalid_argument("unknown diagnostics mechanism '" + mech + "'");
  }
  return cases;
}

Vector DrawNoise(const DiagnosticCase& c, bool inject_fault, RngStream& rng) {
  const Vector zero(c.ball.dimension(), 0.0);
  if (c.ball.is_lp()) {
    if (c.ball.p() == 1.0) {
      const double delta = inject_fault ? c.delta / 2.0 : c.delta;
      return SampleL1Mechanism(zero, delta, c.epsilon, rng);
    }
    if (c.ball.p() == 2.0) return SampleL2Mechanism(zero, c.delta, c.epsilon, rng);
    return SampleLinfMechanism(zero, c.delta, c.epsilon, rng);
  }
  return SampleKMechanismRejection(zero, c.ball, c.delta, c.epsilon, rng);
}

}  // namespace

DiagnosticsReport RunDiagnostics(const DiagnosticsConfig& config) {
  DiagnosticsReport report;
  std::vector<DiagnosticCase> cases;
  for (const auto& mech : config.mechanisms) {
    for (auto& c : CasesFor(mech)) cases.push_back(std::move(c));
  }
  if (cases.empty()) return report;
  const double ks_level = config.level / cases.size();
  uint64_t stream = 0;

  for (const DiagnosticCase& c : cases) {
    const int m = c.ball.dimension();
    RngStream rng(config.seed, stream++);
    std::vector<double> gauges(config.draws);
    for (double& g : gauges) g = c.ball.Gauge(DrawNoise(c, config.inject_fault, rng));
    const double rate = c.epsilon / c.delta;
    const KsResult ks = KsOneSample(
        gauges, [&](double x) { return GammaCdf(x, m, rate); });
    report.entries.push_back({"gamma_marginal_ks_pvalue", c.mechanism, c.setting,
                              ks.p_value, ks_level, ks.Passes(ks_level)});

    RngStream mean_rng(config.seed, stream++);
    const int mean_draws = 10 * config.draws;
    std::vector<std::vector<double>> coords(m, std::vector<double>(mean_draws));
    for (int i = 0; i < mean_draws; ++i) {
      const Vector v = DrawNoise(c, config.inject_fault, mean_rng);
      for (int j = 0; j < m; ++j) coords[j][i] = v[j];
    }
    double worst = 0.0;
    for (const auto& col : coords) {
      worst = std::max(worst, std::abs(Mean(col)) / StandardError(col));
    }
    report.entries.push_back(
        {"unbiased_max_abs_z", c.mechanism, c.setting, worst, 4.0, worst <= 4.0});
  }

  const auto has = [&](const std::string& name) {
    return std::find(config.mechanisms.begin(), config.mechanisms.end(), name) !=
           config.mechanisms.end();
  };
  if (has("l1")) {
    const DpRatioResult ratio =
        LaplaceDpRatioCheck(1.0, 1'000'000, config.seed + 1);
    report.entries.push_back({"dp_histogram_worst_ratio", "l1",
                              "m=1 delta=1 eps=1 bins=" +
                                  std::to_string(ratio.bins_checked),
                              ratio.worst_ratio, 1.0, ratio.passed});
  }
  for (const std::string name : {"k2", "k3"}) {
    if (!has(name)) continue;
    const NormBall ball = name == "k2" ? MakeK2Hull() : MakeK3Hull();
    RngStream rng(config.seed, stream++);
    int64_t attempts_total = 0;
    for (int i = 0; i < config.draws; ++i) {
      int64_t attempts = 0;
      SampleUniformInBall(ball, rng, kDefaultMaxAttempts, &attempts);
      attempts_total += attempts;
    }
    const double rate = static_cast<double>(config.draws) / attempts_total;
    constexpr double kExpected = 5.0 / 6.0;
    const double se =
        std::sqrt(kExpected * (1.0 - kExpected) / attempts_total);
    const double z = std::abs(rate - kExpected) / se;
    report.entries.push_back({"acceptance_rate_abs_z", name,
                              "expected=5/6 observed=" + FormatDouble(rate), z,
                              4.0, z <= 4.0});
  }
  return report;
}

}  // namespace knorm
