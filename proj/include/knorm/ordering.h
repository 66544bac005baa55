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

#ifndef KNORM_ORDERING_H_
#define KNORM_ORDERING_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "knorm/geometry.h"
#include "knorm/sampling.h"

namespace knorm {

// Differential entropy log((delta e / epsilon)^m m! lambda(K)). The unit
// volume lambda(K) defaults to the closed form; oracle bodies must pass it.
// Throws std::invalid_argument when no volume is known.
double Entropy(const MechanismConfig& config,
               std::optional<double> unit_volume = std::nullopt);

// Radius t of the alpha-concentration set t K: the alpha-quantile of
// Gamma(m, epsilon / delta).
double ConcentrationRadius(const MechanismConfig& config, double alpha);

enum class Tightness {
  kFirstTighter,
  kSecondTighter,
  kTie,
  kIncomparable,
  kUndetermined,
};

const char* TightnessName(Tightness t);

// Stochastic tightness of a relative to b, decided through containment of
// delta_a K_a and delta_b K_b. Requires equal dimension and epsilon.
Tightness StochasticTightness(const MechanismConfig& a,
                              const MechanismConfig& b, int n_directions,
                              uint64_t seed);

// 1 - F(||v||_K), F the Gamma(m, epsilon / delta) CDF.
double Depth(const MechanismConfig& config, std::span<const double> v);

// Variance of |V'e| given V in span(e): m delta^2 / (epsilon^2 ||e||_K^2).
// `e` must be an l2 unit vector.
double ConditionalVariance(const MechanismConfig& config,
                           std::span<const double> e);

struct ComparisonReport {
  std::string name_a;
  std::string name_b;
  ContainmentVerdict a_in_b;
  ContainmentVerdict b_in_a;
  Tightness tightness = Tightness::kUndetermined;
  VolumeEstimate volume_a;
  VolumeEstimate volume_b;
  double entropy_a = 0.0;
  double entropy_b = 0.0;
  // "a", "b", "tie", "incomparable" or "undetermined".
  std::string preferred_by_containment;
  // "a", "b" or "tie"; never "incomparable".
  std::string preferred_by_volume;

  std::string ToKeyValue() const;
  static std::string CsvHeader();
  std::string ToCsvRow() const;
};

struct CompareOptions {
  int n_directions = 2000;
  int64_t volume_samples = 1'000'000;
};

// Fills every field of the report. Volumes use the closed form when
// available and Monte-Carlo otherwise; entropies use those volumes.
ComparisonReport Compare(const MechanismConfig& a, const MechanismConfig& b,
                         uint64_t seed, const CompareOptions& options = {});

}  // namespace knorm

#endif  // KNORM_ORDERING_H_
