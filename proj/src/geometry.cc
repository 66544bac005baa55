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

#include "knorm/geometry.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "knorm/linreg.h"
#include "knorm/rng.h"

namespace knorm {
namespace {

constexpr double kGaugeRelativeTolerance = 1e-10;
constexpr double kContainmentSlack = 1e-9;

std::string FormatP(double p) {
  if (std::isinf(p)) return "inf";
  std::ostringstream out;
  out.precision(17);
  out << p;
  return out.str();
}

double ParseNumber(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "infinity") return kInfinity;
  size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) {
    throw std::invalid_argument("not a number in ball record: '" + text + "'");
  }
  return value;
}

std::vector<Vector> LpVertices(double p, int m, double radius) {
  std::vector<Vector> vertices;
  if (p == 1.0) {
    for (int i = 0; i < m; ++i) {
      for (double sign : {1.0, -1.0}) {
        Vector v(m, 0.0);
        v[i] = sign * radius;
        vertices.push_back(std::move(v));
      }
    }
  } else if (std::isinf(p) && m <= 16) {
    for (uint32_t mask = 0; mask < (1u << m); ++mask) {
      Vector v(m);
      for (int i = 0; i < m; ++i) v[i] = (mask >> i) & 1u ? radius : -radius;
      vertices.push_back(std::move(v));
    }
  }
  return vertices;
}

void CheckFinite(std::span<const double> x) {
  for (double xi : x) {
    if (!std::isfinite(xi)) throw std::domain_error("non-finite coordinate");
  }
}

}  // namespace

double LpNorm(std::span<const double> x, double p) {
  if (x.empty()) throw std::domain_error("lp norm of an empty vector");
  if (!(p >= 1.0)) throw std::domain_error("lp norm needs p >= 1");
  double max_abs = 0.0;
  for (double xi : x) max_abs = std::max(max_abs, std::abs(xi));
  if (std::isinf(p) || max_abs == 0.0 || !std::isfinite(max_abs)) {
    return max_abs;
  }
  if (p == 1.0) {
    double sum = 0.0;
    for (double xi : x) sum += std::abs(xi);
    return sum;
  }
  double sum = 0.0;
  for (double xi : x) sum += std::pow(std::abs(xi) / max_abs, p);
  return max_abs * std::pow(sum, 1.0 / p);
}

NormBall NormBall::Lp(double p, double radius, int dimension) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp ball needs p >= 1");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("lp ball needs a finite positive radius");
  }
  if (dimension < 1) throw std::invalid_argument("dimension must be >= 1");
  NormBall ball;
  ball.kind_ = BallKind::kLp;
  ball.dimension_ = dimension;
  ball.p_ = p;
  ball.radius_ = radius;
  ball.bound_ = 1.0;
  ball.name_ = "l" + FormatP(p);
  ball.vertices_ = LpVertices(p, dimension, radius);
  return ball;
}

NormBall NormBall::Oracle(std::string name, MembershipFn member, double bound,
                          int dimension, double radius,
                          std::vector<Vector> vertices) {
  if (!(bound > 0.0) || !std::isfinite(bound)) {
    throw std::domain_error("oracle ball needs a positive bounding radius");
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("oracle ball needs a finite positive radius");
  }
  if (dimension < 1) throw std::invalid_argument("dimension must be >= 1");
  if (!member) throw std::invalid_argument("oracle ball needs a predicate");
  for (const Vector& v : vertices) {
    if (static_cast<int>(v.size()) != dimension) {
      throw std::invalid_argument("vertex dimension mismatch");
    }
  }
  NormBall ball;
  ball.kind_ = BallKind::kOracle;
  ball.dimension_ = dimension;
  ball.p_ = 0.0;
  ball.radius_ = radius;
  ball.bound_ = bound;
  ball.name_ = std::move(name);
  ball.member_ = std::make_shared<const MembershipFn>(std::move(member));
  for (Vector& v : vertices) {
    for (double& vi : v) vi *= radius;
  }
  ball.vertices_ = std::move(vertices);
  return ball;
}

NormBall NormBall::FromRecord(std::string_view record) {
  std::string text(record);
  std::replace(text.begin(), text.end(), ',', ' ');
  std::istringstream in(text);
  std::map<std::string, std::string> fields;
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw std::invalid_argument("malformed ball record field: '" + token +
                                  "'");
    }
    fields[token.substr(0, eq)] = token.substr(eq + 1);
  }
  auto get = [&](const std::string& key) -> const std::string& {
    auto it = fields.find(key);
    if (it == fields.end()) {
      throw std::invalid_argument("ball record missing '" + key + "'");
    }
    return it->second;
  };
  auto get_or = [&](const std::string& key, double fallback) {
    auto it = fields.find(key);
    return it == fields.end() ? fallback : ParseNumber(it->second);
  };

  const std::string& kind = get("kind");
  const double radius = get_or("radius", 1.0);
  if (kind == "lp") {
    return Lp(ParseNumber(get("p")), radius,
              static_cast<int>(ParseNumber(get("dim"))));
  }
  if (kind != "oracle") {
    throw std::invalid_argument("unknown ball kind '" + kind + "'");
  }
  const std::string& name = get("name");
  NormBall ball = [&] {
    if (name == "k2") return MakeK2Hull();
    if (name == "k3") return MakeK3Hull();
    if (name == "kt") {
      return MakeKtHull(static_cast<int>(ParseNumber(get("predictors"))));
    }
    const int dim = static_cast<int>(ParseNumber(get("dim")));
    if (name == "l1") return MakeLpOracle(1.0, dim);
    if (name == "l2") return MakeLpOracle(2.0, dim);
    if (name == "linf") return MakeLpOracle(kInfinity, dim);
    throw std::invalid_argument("unknown oracle name '" + name + "'");
  }();
  if (fields.count("dim") &&
      static_cast<int>(ParseNumber(fields["dim"])) != ball.dimension()) {
    throw std::invalid_argument("ball record dimension does not match oracle");
  }
  if (fields.count("bound") &&
      std::abs(ParseNumber(fields["bound"]) - ball.bound_) > 1e-12) {
    throw std::invalid_argument("ball record bound does not match oracle");
  }
  if (radius != 1.0) {
    std::vector<Vector> unit_vertices = ball.vertices_;
    ball = Oracle(ball.name_, *ball.member_, ball.bound_, ball.dimension_,
                  radius, std::move(unit_vertices));
  }
  return ball;
}

std::string NormBall::ToRecord() const {
  std::ostringstream out;
  out.precision(17);
  if (kind_ == BallKind::kLp) {
    out << "kind=lp p=" << FormatP(p_) << " radius=" << radius_
        << " dim=" << dimension_;
    return out.str();
  }
  out << "kind=oracle name=" << name_;
  if (name_ == "kt") {
    int predictors = 1;
    while (StatisticLength(predictors) < dimension_) ++predictors;
    out << " predictors=" << predictors;
  }
  out << " radius=" << radius_ << " dim=" << dimension_ << " bound=" << bound_;
  return out.str();
}

bool NormBall::Contains(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dimension_) {
    throw std::invalid_argument("membership query dimension mismatch");
  }
  if (kind_ == BallKind::kLp) return LpNorm(x, p_) <= radius_;
  if (radius_ == 1.0) return (*member_)(x);
  Vector scaled(x.begin(), x.end());
  for (double& v : scaled) v /= radius_;
  return (*member_)(scaled);
}

double NormBall::Gauge(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dimension_) {
    throw std::invalid_argument("gauge query dimension mismatch");
  }
  CheckFinite(x);
  if (kind_ == BallKind::kLp) return LpNorm(x, p_) / radius_;

  const double max_abs = LpNorm(x, kInfinity);
  if (max_abs == 0.0) return 0.0;
  // Find t* = sup{t : t x in K}; the gauge is 1 / t*. Beyond `hi` the point
  // leaves the bounding box, so it is outside K.
  double lo = 0.0;
  double hi = 2.0 * bound() * std::sqrt(static_cast<double>(dimension_)) /
              max_abs;
  Vector probe(x.size());
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    for (size_t i = 0; i < x.size(); ++i) probe[i] = mid * x[i];
    if (Contains(probe)) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (lo > 0.0 && hi - lo <= kGaugeRelativeTolerance * lo) break;
  }
  return 2.0 / (lo + hi);
}

std::optional<double> NormBall::AnalyticVolume() const {
  if (kind_ != BallKind::kLp) return std::nullopt;
  return VolumeLp(p_, dimension_, radius_);
}

bool K2Member(std::span<const double> u) {
  if (u.size() != 2) throw std::invalid_argument("K2 lives in R^2");
  const double a = std::abs(u[0]);
  const double b = std::abs(u[1]);
  if (a > 2.0 || b > 2.0) return false;
  if (a > 1.0) return b <= 2.0 - 2.0 * (a - 1.0) * (a - 1.0);
  return true;
}

bool K3Member(std::span<const double> u) {
  if (u.size() != 3) throw std::invalid_argument("K3 lives in R^3");
  const double a = std::abs(u[0]);
  const double b = std::abs(u[1]);
  const double c = std::abs(u[2]);
  if (a > 2.0 || b > 2.0 || c > 2.0) return false;
  return a + b + c <= 4.0;
}

NormBall MakeK2Hull() {
  return NormBall::Oracle("k2", [](std::span<const double> u) {
    return K2Member(u);
  }, 2.0, 2);
}

NormBall MakeK3Hull() {
  // K3 is a polytope: the cube [-2, 2]^3 cut by |u1| + |u2| + |u3| <= 4.
  std::vector<Vector> vertices;
  for (int zero = 0; zero < 3; ++zero) {
    for (double s1 : {2.0, -2.0}) {
      for (double s2 : {2.0, -2.0}) {
        Vector v(3, 0.0);
        v[(zero + 1) % 3] = s1;
        v[(zero + 2) % 3] = s2;
        vertices.push_back(v);
      }
    }
  }
  return NormBall::Oracle("k3", [](std::span<const double> u) {
    return K3Member(u);
  }, 2.0, 3, 1.0, std::move(vertices));
}

NormBall MakeLpOracle(double p, int dimension, double radius) {
  NormBall reference = NormBall::Lp(p, 1.0, dimension);
  const std::string name = std::isinf(p) ? "linf" : "l" + FormatP(p);
  return NormBall::Oracle(
      name,
      [p](std::span<const double> u) { return LpNorm(u, p) <= 1.0; }, 1.0,
      dimension, radius, reference.vertices());
}

double VolumeLp(double p, int m, double r) {
  if (m < 1) throw std::invalid_argument("dimension must be >= 1");
  if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
  if (!(p >= 1.0)) throw std::invalid_argument("p must be >= 1");
  if (std::isinf(p)) return std::pow(2.0 * r, m);
  if (p == 1.0) return std::pow(2.0 * r, m) / std::tgamma(m + 1.0);
  const double log_volume = m * std::log(2.0 * r) +
                            m * std::lgamma(1.0 + 1.0 / p) -
                            std::lgamma(1.0 + m / p);
  return std::exp(log_volume);
}

VolumeEstimate VolumeMonteCarlo(const NormBall& ball, double scale,
                                int64_t n_samples, uint64_t seed) {
  if (n_samples < 1000) {
    throw std::invalid_argument("volume estimate needs at least 1000 samples");
  }
  if (!(scale > 0.0)) throw std::invalid_argument("scale must be positive");
  const double b = ball.bound();
  if (!(b > 0.0)) throw std::domain_error("degenerate bounding box");
  const int m = ball.dimension();
  RngStream rng(seed, 0);
  Vector point(m);
  int64_t hits = 0;
  for (int64_t i = 0; i < n_samples; ++i) {
    for (double& x : point) x = rng.Uniform(-b, b);
    if (ball.Contains(point)) ++hits;
  }
  const double box = std::pow(2.0 * b * scale, m);
  const double fraction = static_cast<double>(hits) / n_samples;
  return {box * fraction,
          box * std::sqrt(fraction * (1.0 - fraction) / n_samples)};
}

VolumeEstimate ScaledVolume(const ScaledBall& body, int64_t n_samples,
                            uint64_t seed) {
  if (auto v = body.ball.AnalyticVolume()) {
    return {*v * std::pow(body.scale, body.ball.dimension()), 0.0};
  }
  return VolumeMonteCarlo(body.ball, body.scale, n_samples, seed);
}

const char* ContainmentName(Containment c) {
  switch (c) {
    case Containment::kContained:
      return "contained";
    case Containment::kNotContained:
      return "not_contained";
    case Containment::kUndetermined:
      return "undetermined";
  }
  return "undetermined";
}

ContainmentVerdict BallContainment(const ScaledBall& a, const ScaledBall& b,
                                   int n_directions, uint64_t seed) {
  const int m = a.ball.dimension();
  if (m != b.ball.dimension()) {
    throw std::invalid_argument("containment needs equal dimensions");
  }
  if (!(a.scale > 0.0) || !(b.scale > 0.0)) {
    throw std::invalid_argument("scales must be positive");
  }

  if (a.ball.is_lp() && b.ball.is_lp()) {
    const double ra = a.scale * a.ball.radius();
    const double rb = b.scale * b.ball.radius();
    const double pa = a.ball.p();
    const double pb = b.ball.p();
    // sup of ||x||_pb over the unit pa-sphere.
    const double ratio =
        pa <= pb ? 1.0
                 : std::pow(static_cast<double>(m),
                            (std::isinf(pb) ? 0.0 : 1.0 / pb) -
                                (std::isinf(pa) ? 0.0 : 1.0 / pa));
    if (ra * ratio <= rb * (1.0 + 1e-12)) {
      return {Containment::kContained, {}};
    }
    Vector witness(m, 0.0);
    if (pa <= pb) {
      witness[0] = ra;
    } else {
      const double coord =
          std::isinf(pa) ? ra : ra / std::pow(static_cast<double>(m), 1.0 / pa);
      std::fill(witness.begin(), witness.end(), coord);
    }
    return {Containment::kNotContained, witness};
  }

  auto outside = [&](const Vector& point) {
    return b.Gauge(point) > 1.0 + kContainmentSlack;
  };

  if (!a.ball.vertices().empty()) {
    for (const Vector& v : a.ball.vertices()) {
      Vector point(v);
      for (double& x : point) x *= a.scale;
      if (outside(point)) return {Containment::kNotContained, point};
    }
    return {Containment::kContained, {}};
  }

  RngStream rng(seed, 1);
  Vector direction(m);
  auto probe = [&]() -> std::optional<Vector> {
    const double g = a.Gauge(direction);
    if (g == 0.0) return std::nullopt;
    Vector point(direction);
    for (double& x : point) x /= g;
    if (outside(point)) return point;
    return std::nullopt;
  };
  for (int i = 0; i < m; ++i) {
    std::fill(direction.begin(), direction.end(), 0.0);
    direction[i] = 1.0;
    if (auto w = probe()) return {Containment::kNotContained, *w};
  }
  for (int k = 0; k < n_directions; ++k) {
    for (double& x : direction) x = rng.StandardNormal();
    if (auto w = probe()) return {Containment::kNotContained, *w};
  }
  return {Containment::kUndetermined, {}};
}

double QuadraticPairSensitivity(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("p must be >= 1");
  auto height = [](double u1) {
    return u1 <= 1.0 ? 2.0 : 2.0 - 2.0 * (u1 - 1.0) * (u1 - 1.0);
  };
  auto objective = [&](double u1) {
    const double u[2] = {u1, height(u1)};
    return LpNorm(u, p);
  };

  // The objective need not be unimodal (p = inf has two maxima), so bracket
  // the best grid point before refining with golden-section search.
  constexpr int kGrid = 2000;
  int best = 0;
  double best_value = objective(0.0);
  for (int i = 1; i <= kGrid; ++i) {
    const double value = objective(2.0 * i / kGrid);
    if (value > best_value) {
      best_value = value;
      best = i;
    }
  }
  double lo = 2.0 * std::max(best - 1, 0) / kGrid;
  double hi = 2.0 * std::min(best + 1, kGrid) / kGrid;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (hi - lo > 1e-10) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = objective(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = objective(x1);
    }
  }
  return std::max({best_value, objective(0.5 * (lo + hi)), f1, f2});
}

}  // namespace knorm
