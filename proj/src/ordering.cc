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

#include "knorm/ordering.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "knorm/gamma_distribution.h"

namespace knorm {
namespace {

void CheckComparable(const MechanismConfig& a, const MechanismConfig& b) {
  if (a.dimension() != b.dimension()) {
    throw std::invalid_argument("mechanisms have different dimensions");
  }
  if (std::abs(a.epsilon() - b.epsilon()) >
      1e-12 * std::max(a.epsilon(), b.epsilon())) {
    throw std::invalid_argument(
        "mechanisms can only be compared at equal epsilon");
  }
}

std::string MechanismLabel(const MechanismConfig& c) {
  std::ostringstream out;
  out.precision(6);
  out << c.ball().name() << "(delta=" << c.delta() << ")";
  return out.str();
}

}  // namespace

double Entropy(const MechanismConfig& config,
               std::optional<double> unit_volume) {
  if (!unit_volume) unit_volume = config.ball().AnalyticVolume();
  if (!unit_volume) {
    throw std::invalid_argument("entropy needs the volume of '" +
                                config.ball().name() + "'");
  }
  if (!(*unit_volume > 0.0)) throw std::invalid_argument("volume must be > 0");
  const int m = config.dimension();
  return m * (std::log(config.delta() / config.epsilon()) + 1.0) +
         std::lgamma(m + 1.0) + std::log(*unit_volume);
}

double ConcentrationRadius(const MechanismConfig& config, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("alpha must lie in (0, 1)");
  }
  return GammaQuantile(alpha, config.dimension(), config.rate());
}

const char* TightnessName(Tightness t) {
  switch (t) {
    case Tightness::kFirstTighter:
      return "a_tighter";
    case Tightness::kSecondTighter:
      return "b_tighter";
    case Tightness::kTie:
      return "tie";
    case Tightness::kIncomparable:
      return "incomparable";
    case Tightness::kUndetermined:
      return "undetermined";
  }
  return "undetermined";
}

namespace {

Tightness FromVerdicts(Containment a_in_b, Containment b_in_a) {
  const bool ab = a_in_b == Containment::kContained;
  const bool ba = b_in_a == Containment::kContained;
  if (ab && ba) return Tightness::kTie;
  if (ab) return Tightness::kFirstTighter;
  if (ba) return Tightness::kSecondTighter;
  if (a_in_b == Containment::kNotContained &&
      b_in_a == Containment::kNotContained) {
    return Tightness::kIncomparable;
  }
  return Tightness::kUndetermined;
}

}  // namespace

Tightness StochasticTightness(const MechanismConfig& a,
                              const MechanismConfig& b, int n_directions,
                              uint64_t seed) {
  CheckComparable(a, b);
  const auto ab =
      BallContainment(a.scaled_ball(), b.scaled_ball(), n_directions, seed);
  const auto ba =
      BallContainment(b.scaled_ball(), a.scaled_ball(), n_directions, seed);
  return FromVerdicts(ab.verdict, ba.verdict);
}

double Depth(const MechanismConfig& config, std::span<const double> v) {
  return 1.0 - GammaCdf(config.ball().Gauge(v), config.dimension(),
                        config.rate());
}

double ConditionalVariance(const MechanismConfig& config,
                           std::span<const double> e) {
  const double norm = LpNorm(e, 2.0);
  if (norm == 0.0) throw std::invalid_argument("zero direction");
  if (std::abs(norm - 1.0) > 1e-10) {
    throw std::invalid_argument("direction must be an l2 unit vector");
  }
  const double g = config.ball().Gauge(e);
  return config.dimension() * config.delta() * config.delta() /
         (config.epsilon() * config.epsilon() * g * g);
}

ComparisonReport Compare(const MechanismConfig& a, const MechanismConfig& b,
                         uint64_t seed, const CompareOptions& options) {
  CheckComparable(a, b);
  ComparisonReport report;
  report.name_a = MechanismLabel(a);
  report.name_b = MechanismLabel(b);
  report.a_in_b = BallContainment(a.scaled_ball(), b.scaled_ball(),
                                  options.n_directions, seed);
  report.b_in_a = BallContainment(b.scaled_ball(), a.scaled_ball(),
                                  options.n_directions, seed + 1);
  report.tightness = FromVerdicts(report.a_in_b.verdict, report.b_in_a.verdict);
  switch (report.tightness) {
    case Tightness::kFirstTighter:
      report.preferred_by_containment = "a";
      break;
    case Tightness::kSecondTighter:
      report.preferred_by_containment = "b";
      break;
    case Tightness::kTie:
      report.preferred_by_containment = "tie";
      break;
    case Tightness::kIncomparable:
      report.preferred_by_containment = "incomparable";
      break;
    case Tightness::kUndetermined:
      report.preferred_by_containment = "undetermined";
      break;
  }

  report.volume_a =
      ScaledVolume(a.scaled_ball(), options.volume_samples, seed + 2);
  report.volume_b =
      ScaledVolume(b.scaled_ball(), options.volume_samples, seed + 3);
  const int m = a.dimension();
  report.entropy_a =
      Entropy(a, report.volume_a.estimate / std::pow(a.delta(), m));
  report.entropy_b =
      Entropy(b, report.volume_b.estimate / std::pow(b.delta(), m));

  const double va = report.volume_a.estimate;
  const double vb = report.volume_b.estimate;
  if (std::abs(va - vb) <= 1e-12 * std::max(va, vb)) {
    report.preferred_by_volume = "tie";
  } else {
    report.preferred_by_volume = va < vb ? "a" : "b";
  }
  return report;
}

std::string ComparisonReport::ToKeyValue() const {
  std::ostringstream out;
  out.precision(10);
  out << "mechanism_a=" << name_a << "\n"
      << "mechanism_b=" << name_b << "\n"
      << "a_in_b=" << ContainmentName(a_in_b.verdict) << "\n"
      << "b_in_a=" << ContainmentName(b_in_a.verdict) << "\n"
      << "tightness=" << TightnessName(tightness) << "\n"
      << "volume_a=" << volume_a.estimate << "\n"
      << "volume_a_se=" << volume_a.standard_error << "\n"
      << "volume_b=" << volume_b.estimate << "\n"
      << "volume_b_se=" << volume_b.standard_error << "\n"
      << "entropy_a=" << entropy_a << "\n"
      << "entropy_b=" << entropy_b << "\n"
      << "preferred_by_containment=" << preferred_by_containment << "\n"
      << "preferred_by_volume=" << preferred_by_volume << "\n";
  return out.str();
}

std::string ComparisonReport::CsvHeader() {
  return "mechanism_a,mechanism_b,a_in_b,b_in_a,tightness,volume_a,"
         "volume_a_se,volume_b,volume_b_se,entropy_a,entropy_b,"
         "preferred_by_containment,preferred_by_volume";
}

std::string ComparisonReport::ToCsvRow() const {
  std::ostringstream out;
  out.precision(10);
  out << name_a << "," << name_b << "," << ContainmentName(a_in_b.verdict)
      << "," << ContainmentName(b_in_a.verdict) << ","
      << TightnessName(tightness) << "," << volume_a.estimate << ","
      << volume_a.standard_error << "," << volume_b.estimate << ","
      << volume_b.standard_error << "," << entropy_a << "," << entropy_b << ","
      << preferred_by_containment << "," << preferred_by_volume;
  return out.str();
}

}  // namespace knorm
