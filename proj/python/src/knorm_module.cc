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

// Python bindings for the knorm library.

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "knorm/erm.h"
#include "knorm/gamma_distribution.h"
#include "knorm/geometry.h"
#include "knorm/linreg.h"
#include "knorm/ordering.h"
#include "knorm/rng.h"
#include "knorm/sampling.h"
#include "knorm/simulation.h"

namespace py = pybind11;

namespace knorm {
namespace {

MechanismConfig Mechanism(const std::string& mech, int m, double delta,
                          double eps) {
  return MechanismConfig(eps, delta, MechanismBall(mech, m));
}

StatisticVector Statistic(const std::vector<double>& values, int predictors) {
  StatisticVector t;
  t.predictors = predictors;
  t.values = values;
  return t;
}

py::dict TableToDict(const ResultTable& table) {
  py::dict echo;
  for (const auto& [key, value] : table.echo) echo[py::str(key)] = value;
  py::list rows;
  for (const auto& r : table.rows) {
    rows.append(py::make_tuple(r.epsilon, r.mechanism, r.replicate, r.metric,
                               r.value));
  }
  py::list summary;
  for (const auto& s : table.summary) {
    summary.append(
        py::make_tuple(s.epsilon, s.mechanism, s.metric, s.statistic, s.value));
  }
  py::dict out;
  out["echo"] = echo;
  out["rows"] = rows;
  out["summary"] = summary;
  return out;
}

SimulationConfig MakeConfig(const std::vector<double>& eps, int64_t n,
                            int reps, const std::vector<std::string>& mechs,
                            double q, uint64_t seed, int threads) {
  SimulationConfig config;
  config.epsilons = eps;
  config.n = n;
  config.replicates = reps;
  config.mechanisms = mechs;
  config.q = q;
  config.seed = seed;
  config.threads = threads;
  return config;
}

}  // namespace
}  // namespace knorm

PYBIND11_MODULE(_knorm, m) {
  using namespace knorm;
  m.doc() = "K-norm differential privacy mechanisms";

  m.def("lp_norm", [](const std::vector<double>& x, double p) {
    return LpNorm(x, p);
  }, py::arg("x"), py::arg("p"));
  m.def("gauge", [](const std::string& ball, const std::vector<double>& x) {
    return MechanismBall(ball, static_cast<int>(x.size())).Gauge(x);
  }, py::arg("ball"), py::arg("x"));
  m.def("k2_member", [](const std::vector<double>& u) { return K2Member(u); });
  m.def("k3_member", [](const std::vector<double>& u) { return K3Member(u); });
  m.def("kt_member", [](const std::vector<double>& u, int predictors) {
    return KtMember(u, predictors);
  }, py::arg("u"), py::arg("predictors"));
  m.def("quadratic_pair_sensitivity", &QuadraticPairSensitivity, py::arg("p"));
  m.def("volume_lp", &VolumeLp, py::arg("p"), py::arg("m"), py::arg("r"));
  m.def("volume_monte_carlo",
        [](const std::string& ball, int dim, double scale, int64_t samples,
           uint64_t seed) {
          const VolumeEstimate v =
              VolumeMonteCarlo(MechanismBall(ball, dim), scale, samples, seed);
          return py::make_tuple(v.estimate, v.standard_error);
        },
        py::arg("ball"), py::arg("m"), py::arg("scale"), py::arg("samples"),
        py::arg("seed"));

  m.def("gamma_cdf", &GammaCdf, py::arg("x"), py::arg("shape"),
        py::arg("rate"));
  m.def("gamma_quantile", &GammaQuantile, py::arg("alpha"), py::arg("shape"),
        py::arg("rate"));

  m.def("sample",
        [](const std::string& mech, int dim, double delta, double eps,
           int reps, uint64_t seed) {
          const MechanismConfig config = Mechanism(mech, dim, delta, eps);
          Eigen::MatrixXd out(reps, config.dimension());
          for (int r = 0; r < reps; ++r) {
            RngStream rng(seed, static_cast<uint64_t>(r));
            const Vector v = SampleNoise(config, rng);
            for (int j = 0; j < config.dimension(); ++j) out(r, j) = v[j];
          }
          return out;
        },
        py::arg("mech"), py::arg("m"), py::arg("delta"), py::arg("eps"),
        py::arg("reps"), py::arg("seed"));
  m.def("entropy",
        [](const std::string& mech, int dim, double delta, double eps) {
          return Entropy(Mechanism(mech, dim, delta, eps));
        },
        py::arg("mech"), py::arg("m"), py::arg("delta"), py::arg("eps"));
  m.def("conditional_variance",
        [](const std::string& mech, double delta, double eps,
           const std::vector<double>& e) {
          return ConditionalVariance(
              Mechanism(mech, static_cast<int>(e.size()), delta, eps), e);
        },
        py::arg("mech"), py::arg("delta"), py::arg("eps"), py::arg("e"));

  m.def("logistic_sensitivity", &LogisticSensitivity, py::arg("m"),
        py::arg("p"));
  m.def("objective_perturbation_gamma", &ObjPertGamma, py::arg("lam"),
        py::arg("eps"), py::arg("q"));

  m.def("statistic_length", &StatisticLength, py::arg("predictors"));
  m.def("statistic_layout", [](int predictors) {
    std::vector<std::string> names;
    for (const auto& slot : StatisticLayout(predictors)) names.push_back(slot.name);
    return names;
  }, py::arg("predictors"));
  m.def("build_statistic",
        [](const Eigen::MatrixXd& design, const Eigen::VectorXd& response) {
          return BuildStatistic(RegressionDataset(design, response)).values;
        },
        py::arg("design"), py::arg("response"));
  m.def("sanitize_statistic",
        [](const std::vector<double>& values, int predictors,
           const std::string& mech, double eps, uint64_t seed) {
          RngStream rng(seed, 0);
          return SanitizeStatistic(Statistic(values, predictors),
                                   ParseLinregMechanism(mech), eps, rng)
              .values;
        },
        py::arg("values"), py::arg("predictors"), py::arg("mech"),
        py::arg("eps"), py::arg("seed"));
  m.def("dp_estimate",
        [](const std::vector<double>& values, int predictors, int64_t n) {
          return DpEstimate(Statistic(values, predictors), n);
        },
        py::arg("values"), py::arg("predictors"), py::arg("n"));

  m.def("simulate_logistic",
        [](const std::vector<double>& eps, int64_t n, int reps,
           const std::vector<std::string>& mechs, double q, uint64_t seed,
           int threads) {
          return TableToDict(SimulateLogistic(
              MakeConfig(eps, n, reps, mechs, q, seed, threads)));
        },
        py::arg("eps"), py::arg("n") = 10000, py::arg("reps") = 100,
        py::arg("mechs") = std::vector<std::string>{"l1", "l2", "linf"},
        py::arg("q") = 0.5, py::arg("seed") = 1, py::arg("threads") = 0);
  m.def("simulate_coverage",
        [](const std::vector<double>& eps, int64_t n, int reps,
           const std::vector<std::string>& mechs, int predictors,
           uint64_t seed, int threads) {
          SimulationConfig config =
              MakeConfig(eps, n, reps, mechs, 0.5, seed, threads);
          config.predictors = predictors;
          return TableToDict(SimulateCoverage(config));
        },
        py::arg("eps"), py::arg("n") = 10000, py::arg("reps") = 200,
        py::arg("mechs") = std::vector<std::string>{"l1", "linf", "kt"},
        py::arg("p") = 5, py::arg("seed") = 1, py::arg("threads") = 0);
  m.def("run_diagnostics",
        [](const std::vector<std::string>& mechs, uint64_t seed, int draws,
           bool inject_fault) {
          DiagnosticsConfig config;
          config.mechanisms = mechs;
          config.seed = seed;
          config.draws = draws;
          config.inject_fault = inject_fault;
          const DiagnosticsReport report = RunDiagnostics(config);
          py::list entries;
          for (const auto& e : report.entries) {
            py::dict d;
            d["test"] = e.test;
            d["mechanism"] = e.mechanism;
            d["setting"] = e.setting;
            d["statistic"] = e.statistic;
            d["threshold"] = e.threshold;
            d["passed"] = e.passed;
            entries.append(d);
          }
          return py::make_tuple(report.AllPassed(), entries);
        },
        py::arg("mechs") =
            std::vector<std::string>{"l1", "l2", "linf", "k2"},
        py::arg("seed") = 20190101, py::arg("draws") = 10000,
        py::arg("inject_fault") = false);
}
