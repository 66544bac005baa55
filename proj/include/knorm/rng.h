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

#ifndef KNORM_RNG_H_
#define KNORM_RNG_H_

#include <cstdint>
#include <random>

namespace knorm {

// A reproducible random stream identified by (seed, stream id). Two streams
// built from the same pair produce the same sequence bit-for-bit; parallel
// replicates must use distinct stream ids.
class RngStream {
 public:
  RngStream(uint64_t seed, uint64_t stream_id);

  uint64_t seed() const { return seed_; }
  uint64_t stream_id() const { return stream_id_; }

  // Uniform on the open interval (0, 1), 53 bits of resolution.
  double Uniform01();
  // Uniform on (lo, hi).
  double Uniform(double lo, double hi);
  double StandardNormal();
  // Exponential with the given rate (mean 1/rate).
  double Exponential(double rate);

  std::mt19937_64& engine() { return engine_; }

 private:
  uint64_t seed_;
  uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

}  // namespace knorm

#endif  // KNORM_RNG_H_
