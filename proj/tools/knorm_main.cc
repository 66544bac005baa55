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

// Command-line driver: simulations, mechanism comparison, raw sampling and
// sampler self-tests.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "knorm/geometry.h"
#include "knorm/linreg.h"
#include "knorm/ordering.h"
#include "knorm/sampling.h"
#include "knorm/simulation.h"

namespace {

using knorm::kInfinity;

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(' ');
    if (first == std::string::npos) continue;
    out.push_back(item.substr(first, item.find_last_not_of(' ') - first + 1));
  }
  return out;
}

// Accepts decimals and fractions such as "1/16".
double ParseReal(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    return ParseReal(text.substr(0, slash)) / ParseReal(text.substr(slash + 1));
  }
  if (text == "inf") return kInfinity;
  size_t used = 0;
  const double value = std::stod(text, &used);
  if (used != text.size()) throw std::invalid_argument("bad number: " + text);
  return value;
}

std::vector<double> ParseRealList(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : SplitList(text)) out.push_back(ParseReal(item));
  return out;
}

struct CommonFlags {
  std::string eps;
  int64_t n = 10000;
  int reps = 0;
  std::string mech;
  double q = 0.5;
  uint64_t seed = 1;
  std::string out;
  std::string summary;
  int threads = 0;
};

void AddCommon(CLI::App* cmd, CommonFlags& f, const std::string& eps_default,
               const std::string& mech_default, int reps_default) {
  f.eps = eps_default;
  f.mech = mech_default;
  f.reps = reps_default;
  cmd->add_option("--eps", f.eps, "comma list of privacy budgets")
      ->capture_default_str();
  cmd->add_option("--n", f.n, "rows per simulated dataset")->capture_default_str();
  cmd->add_option("--reps", f.reps, "replicates")->capture_default_str();
  cmd->add_option("--mech", f.mech, "comma list of mechanisms")
      ->capture_default_str();
  cmd->add_option("--q", f.q, "objective perturbation budget split")
      ->capture_default_str();
  cmd->add_option("--seed", f.seed, "random seed")->capture_default_str();
  cmd->add_option("--out", f.out, "long-form CSV path (default stdout)");
  cmd->add_option("--summary", f.summary,
                  "summary CSV path (default <out>.summary.csv)");
  cmd->add_option("--threads", f.threads, "worker threads (0 = all cores)");
}

knorm::SimulationConfig ToConfig(const CommonFlags& f) {
  knorm::SimulationConfig c;
  c.n = f.n;
  c.epsilons = ParseRealList(f.eps);
  c.replicates = f.reps;
  c.mechanisms = SplitList(f.mech);
  c.q = f.q;
  c.seed = f.seed;
  c.threads = f.threads;
  return c;
}

void WriteTable(const knorm::ResultTable& table, const CommonFlags& f) {
  if (f.out.empty()) {
    table.WriteSummary(std::cout);
    return;
  }
  std::ofstream out(f.out);
  if (!out) throw std::runtime_error("cannot write " + f.out);
  table.WriteLong(out);
  const std::string summary_path =
      f.summary.empty() ? f.out + ".summary.csv" : f.summary;
  std::ofstream summary(summary_path);
  if (!summary) throw std::runtime_error("cannot write " + summary_path);
  table.WriteSummary(summary);
  table.WriteSummary(std::cout);
}

void RunCompareOne(const knorm::MechanismConfig& a,
                   const knorm::MechanismConfig& b, uint64_t seed,
                   const knorm::CompareOptions& options, std::ostream* csv) {
  const knorm::ComparisonReport report = knorm::Compare(a, b, seed, options);
  std::cout << report.ToKeyValue();
  std::cout << knorm::ComparisonReport::CsvHeader() << "\n"
            << report.ToCsvRow() << "\n\n";
  if (csv) *csv << report.ToCsvRow() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"K-norm mechanism toolkit"};
  app.require_subcommand(1);

  CommonFlags logistic_flags;
  auto* logistic = app.add_subcommand(
      "simulate-logistic", "objective-perturbation logistic regression study");
  AddCommon(logistic, logistic_flags,
            "1/64,1/32,1/16,1/8,1/4,1/2,1,2", "l1,l2,linf", 100);

  CommonFlags coverage_flags;
  int coverage_p = 5;
  auto* coverage = app.add_subcommand(
      "simulate-coverage", "linear-regression confidence-interval coverage");
  AddCommon(coverage, coverage_flags, "1/16,1/8,1/4,1/2,1,2,4", "l1,linf,kt",
            200);
  coverage->add_option("--p", coverage_p, "predictors")->capture_default_str();

  CommonFlags regression_flags;
  std::string csv_path, response, log_cols;
  double lower_q = 0.0001, upper_q = 0.9999;
  auto* regression = app.add_subcommand(
      "run-regression", "private linear regression on a CSV file");
  AddCommon(regression, regression_flags, "1/16,1/8,1/4,1/2,1", "l1,linf,kt",
            1000);
  regression->add_option("--csv", csv_path, "input CSV with header")->required();
  regression->add_option("--response", response, "response column")->required();
  regression->add_option("--log-cols", log_cols, "comma list of columns to log");
  regression->add_option("--lower-q", lower_q)->capture_default_str();
  regression->add_option("--upper-q", upper_q)->capture_default_str();

  std::string a_ball, b_ball, preset, compare_out, compare_eps = "1";
  double a_delta = 1.0, b_delta = 1.0;
  uint64_t compare_seed = 1;
  knorm::CompareOptions compare_options;
  auto* compare = app.add_subcommand("compare", "compare two K-norm mechanisms");
  compare->add_option("--a", a_ball, "ball record, e.g. \"kind=lp p=inf radius=1 dim=2\"");
  compare->add_option("--delta-a", a_delta)->capture_default_str();
  compare->add_option("--b", b_ball, "ball record");
  compare->add_option("--delta-b", b_delta)->capture_default_str();
  compare->add_option("--preset", preset,
                      "exact | approx: the (sum x, 2 sum x^2) example balls");
  compare->add_option("--eps", compare_eps)->capture_default_str();
  compare->add_option("--seed", compare_seed)->capture_default_str();
  compare->add_option("--samples", compare_options.volume_samples,
                      "Monte-Carlo volume samples")->capture_default_str();
  compare->add_option("--directions", compare_options.n_directions,
                      "boundary probes for oracle containment")
      ->capture_default_str();
  compare->add_option("--out", compare_out, "CSV output path");

  std::string sample_mech = "l1", sample_out;
  double sample_delta = 1.0, sample_eps = 1.0;
  int sample_m = 2, sample_reps = 10;
  uint64_t sample_seed = 1;
  auto* sample = app.add_subcommand("sample", "draw K-norm mechanism noise");
  sample->add_option("--mech", sample_mech,
                     "l1 | l2 | linf | k2 | k3 | kt:<p> | ball record")
      ->capture_default_str();
  sample->add_option("--delta", sample_delta)->capture_default_str();
  sample->add_option("--eps", sample_eps)->capture_default_str();
  sample->add_option("--m", sample_m, "dimension for lp mechanisms")
      ->capture_default_str();
  sample->add_option("--reps", sample_reps, "number of draws")->capture_default_str();
  sample->add_option("--seed", sample_seed)->capture_default_str();
  sample->add_option("--out", sample_out, "CSV output path (default stdout)");

  knorm::DiagnosticsConfig diag;
  std::string diag_mech = "l1,l2,linf,k2";
  auto* diagnostics =
      app.add_subcommand("diagnostics", "statistical self-tests of the samplers");
  diagnostics->add_option("--mech", diag_mech, "comma list, or none")
      ->capture_default_str();
  diagnostics->add_option("--seed", diag.seed)->capture_default_str();
  diagnostics->add_option("--draws", diag.draws)->capture_default_str();
  diagnostics->add_flag("--inject-fault", diag.inject_fault,
                        "run the l1 sampler with half its sensitivity");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*logistic) {
      WriteTable(knorm::SimulateLogistic(ToConfig(logistic_flags)),
                 logistic_flags);
    } else if (*coverage) {
      auto config = ToConfig(coverage_flags);
      config.predictors = coverage_p;
      WriteTable(knorm::SimulateCoverage(config), coverage_flags);
    } else if (*regression) {
      std::ifstream in(csv_path);
      if (!in) throw std::runtime_error("cannot read " + csv_path);
      const knorm::Table table = knorm::ReadCsvTable(in);
      knorm::PreprocessConfig pre{response, SplitList(log_cols), lower_q,
                                  upper_q};
      WriteTable(knorm::RunRegression(ToConfig(regression_flags), table, pre),
                 regression_flags);
    } else if (*compare) {
      const double eps = ParseReal(compare_eps);
      std::unique_ptr<std::ofstream> csv;
      if (!compare_out.empty()) {
        csv = std::make_unique<std::ofstream>(compare_out);
        *csv << "# seed=" << compare_seed << "\n"
             << knorm::ComparisonReport::CsvHeader() << "\n";
      }
      if (!preset.empty()) {
        std::vector<knorm::MechanismConfig> mechs;
        if (preset == "exact") {
          mechs.emplace_back(eps, knorm::QuadraticPairSensitivity(1.0),
                             knorm::NormBall::Lp(1.0, 1.0, 2));
          mechs.emplace_back(eps, knorm::QuadraticPairSensitivity(2.0),
                             knorm::NormBall::Lp(2.0, 1.0, 2));
          mechs.emplace_back(eps, knorm::QuadraticPairSensitivity(kInfinity),
                             knorm::NormBall::Lp(kInfinity, 1.0, 2));
          mechs.emplace_back(eps, 1.0, knorm::MakeK2Hull());
        } else if (preset == "approx") {
          mechs.emplace_back(eps, 4.0, knorm::NormBall::Lp(1.0, 1.0, 2));
          mechs.emplace_back(eps, std::sqrt(8.0), knorm::NormBall::Lp(2.0, 1.0, 2));
          mechs.emplace_back(eps, 2.0, knorm::NormBall::Lp(kInfinity, 1.0, 2));
        } else {
          throw std::invalid_argument("unknown preset '" + preset + "'");
        }
        for (size_t i = 0; i < mechs.size(); ++i) {
          for (size_t j = i + 1; j < mechs.size(); ++j) {
            RunCompareOne(mechs[i], mechs[j], compare_seed, compare_options,
                          csv.get());
          }
        }
      } else {
        if (a_ball.empty() || b_ball.empty()) {
          throw std::invalid_argument("compare needs --a and --b, or --preset");
        }
        knorm::MechanismConfig a(eps, a_delta, knorm::NormBall::FromRecord(a_ball));
        knorm::MechanismConfig b(eps, b_delta, knorm::NormBall::FromRecord(b_ball));
        RunCompareOne(a, b, compare_seed, compare_options, csv.get());
      }
    } else if (*sample) {
      const knorm::NormBall ball = knorm::MechanismBall(sample_mech, sample_m);
      const knorm::MechanismConfig config(sample_eps, sample_delta, ball);
      std::ofstream file;
      std::ostream* out = &std::cout;
      if (!sample_out.empty()) {
        file.open(sample_out);
        if (!file) throw std::runtime_error("cannot write " + sample_out);
        out = &file;
      }
      *out << "# seed=" << sample_seed << "\n# mechanism=" << ball.ToRecord()
           << "\n# delta=" << sample_delta << "\n# eps=" << sample_eps << "\n";
      *out << "replicate";
      for (int j = 1; j <= ball.dimension(); ++j) *out << ",v" << j;
      *out << ",gauge\n";
      out->precision(17);
      for (int r = 0; r < sample_reps; ++r) {
        knorm::RngStream rng(sample_seed, static_cast<uint64_t>(r));
        const knorm::Vector v = knorm::SampleNoise(config, rng);
        *out << r;
        for (double x : v) *out << "," << x;
        *out << "," << ball.Gauge(v) << "\n";
      }
    } else if (*diagnostics) {
      diag.mechanisms = diag_mech == "none" ? std::vector<std::string>{}
                                            : SplitList(diag_mech);
      const knorm::DiagnosticsReport report = knorm::RunDiagnostics(diag);
      report.Write(std::cout);
      if (!report.AllPassed()) {
        std::cerr << "diagnostics: at least one self-test failed\n";
        return 2;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "knorm: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
