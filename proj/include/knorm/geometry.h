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

#ifndef KNORM_GEOMETRY_H_
#define KNORM_GEOMETRY_H_

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace knorm {

using Vector = std::vector<double>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Returns the lp norm of `x`; p may be kInfinity. Throws std::domain_error on
// an empty vector or p < 1.
double LpNorm(std::span<const double> x, double p);

// Membership predicate for a body at unit scale.
using MembershipFn = std::function<bool(std::span<const double>)>;

enum class BallKind { kLp, kOracle };

// A convex, bounded, absorbing body symmetric about the origin. Either an lp
// ball of some radius, or a membership oracle together with an l-infinity
// bounding radius. Immutable after construction and cheap to copy.
class NormBall {
 public:
  static NormBall Lp(double p, double radius, int dimension);

  // `bound` must satisfy ||u||_inf <= bound for every member u of the unit
  // body. Optional `vertices` (at unit scale) make containment checks exact
  // for polytopes. `radius` dilates the oracle body.
  static NormBall Oracle(std::string name, MembershipFn member, double bound,
                         int dimension, double radius = 1.0,
                         std::vector<Vector> vertices = {});

  // Parses a record such as "kind=lp p=inf radius=2 dim=2" or
  // "kind=oracle name=k2 radius=1 dim=2 bound=2". Recognized oracle names:
  // k2, k3, kt (needs predictors=<p>), l1, l2, linf.
  static NormBall FromRecord(std::string_view record);
  std::string ToRecord() const;

  BallKind kind() const { return kind_; }
  int dimension() const { return dimension_; }
  double p() const { return p_; }
  double radius() const { return radius_; }
  // l-infinity bounding radius of the body, radius included.
  double bound() const { return bound_ * radius_; }
  const std::string& name() const { return name_; }
  const std::vector<Vector>& vertices() const { return vertices_; }
  bool is_lp() const { return kind_ == BallKind::kLp; }

  bool Contains(std::span<const double> x) const;

  // Minkowski gauge inf{c >= 0 : x in c K}. Oracle bodies use bisection
  // along the ray through x to relative tolerance 1e-10.
  double Gauge(std::span<const double> x) const;

  // Lebesgue volume if it has a closed form (lp balls only).
  std::optional<double> AnalyticVolume() const;

 private:
  NormBall() = default;

  BallKind kind_ = BallKind::kLp;
  int dimension_ = 0;
  double p_ = 2.0;
  double radius_ = 1.0;
  double bound_ = 1.0;  // at radius 1
  std::string name_;
  std::shared_ptr<const MembershipFn> member_;
  std::vector<Vector> vertices_;
};

// A body dilated by a sensitivity: scale * K.
struct ScaledBall {
  NormBall ball;
  double scale = 1.0;

  double Gauge(std::span<const double> x) const {
    return ball.Gauge(x) / scale;
  }
};

// Hull of the sensitivity space of (sum x, 2 sum x^2) over x in [-1, 1].
bool K2Member(std::span<const double> u);
// Hull of the sensitivity space of (sum x, sum y, sum xy) over x, y in [-1, 1].
bool K3Member(std::span<const double> u);

NormBall MakeK2Hull();
NormBall MakeK3Hull();
// An lp ball exposed only through its membership predicate. Used to
// exercise the oracle code paths against closed forms.
NormBall MakeLpOracle(double p, int dimension, double radius = 1.0);

// Volume of the lp ball of radius r in R^m.
double VolumeLp(double p, int m, double r);

struct VolumeEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
};

// Hit-or-miss estimate of the volume of scale * ball over the box
// [-scale b, scale b]^m. Requires n_samples >= 1000.
VolumeEstimate VolumeMonteCarlo(const NormBall& ball, double scale,
                                int64_t n_samples, uint64_t seed);

// Volume of a scaled ball: closed form when available, Monte-Carlo
// otherwise (standard error zero in the closed-form case).
VolumeEstimate ScaledVolume(const ScaledBall& body, int64_t n_samples,
                            uint64_t seed);

enum class Containment { kContained, kNotContained, kUndetermined };

struct ContainmentVerdict {
  Containment verdict = Containment::kUndetermined;
  // A point of `a` outside `b` when verdict is kNotContained.
  Vector witness;
};

const char* ContainmentName(Containment c);

// Decides a subset-of b. Pairs of lp balls are decided in closed form; a
// body with a known vertex list is decided exactly by vertex checks;
// otherwise n_directions boundary points of a are probed and the absence of
// a violation yields kUndetermined. Throws std::invalid_argument on a
// dimension mismatch.
ContainmentVerdict BallContainment(const ScaledBall& a, const ScaledBall& b,
                                   int n_directions, uint64_t seed);

// Delta_p(T) for T(X) = (sum x_i, 2 sum x_i^2) over [-1, 1]^n: the largest
// lp norm on the upper boundary u2 = h(u1), u1 in [0, 2], of the hull.
double QuadraticPairSensitivity(double p);

}  // namespace knorm

#endif  // KNORM_GEOMETRY_H_
