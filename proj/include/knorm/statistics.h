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

#ifndef KNORM_STATISTICS_H_
#define KNORM_STATISTICS_H_

#include <functional>
#include <span>
#include <vector>

namespace knorm {

double Mean(std::span<const double> x);
// Unbiased sample variance.
double SampleVariance(std::span<const double> x);
// Standard error of the sample mean.
double StandardError(std::span<const double> x);

// Lower median: element (n - 1) / 2 of the sorted sample.
double LowerMedian(std::vector<double> x);

// Empirical q-quantile by linear interpolation between order statistics
// (position q (n - 1) in the sorted sample).
double EmpiricalQuantile(std::span<const double> sorted, double q);

// Sample Pearson correlation.
double Correlation(std::span<const double> x, std::span<const double> y);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;

  bool Passes(double level) const { return p_value >= level; }
};

// Survival function of the Kolmogorov distribution, P(K > lambda).
double KolmogorovSurvival(double lambda);

// One-sample Kolmogorov-Smirnov test against a continuous CDF.
KsResult KsOneSample(std::vector<double> sample,
                     const std::function<double(double)>& cdf);

// Two-sample Kolmogorov-Smirnov test.
KsResult KsTwoSample(std::vector<double> a, std::vector<double> b);

}  // namespace knorm

#endif  // KNORM_STATISTICS_H_
