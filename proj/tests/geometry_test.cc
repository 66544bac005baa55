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

#include "knorm/geometry.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>
#include "knorm/rng.h"
#include "oracle_values.h"

namespace knorm {
namespace {

Vector RandomPoint(RngStream& rng, int m, double scale) {
  Vector x(m);
  for (double& v : x) v = rng.Uniform(-scale, scale);
  return x;
}

std::vector<NormBall> TestBalls() {
  return {NormBall::Lp(1.0, 1.0, 2),      NormBall::Lp(2.0, 1.5, 3),
          NormBall::Lp(kInfinity, 2.0, 2), NormBall::Lp(3.0, 1.0, 4),
          MakeK2Hull(),                   MakeK3Hull(),
          MakeLpOracle(2.0, 3),           MakeLpOracle(1.0, 2, 2.0)};
}

TEST(LpNormTest, Examples) {
  const Vector x{3.0, 4.0};
  EXPECT_DOUBLE_EQ(LpNorm(x, 1.0), 7.0);
  EXPECT_DOUBLE_EQ(LpNorm(x, 2.0), 5.0);
  EXPECT_DOUBLE_EQ(LpNorm(Vector{3.0, -4.0}, kInfinity), 4.0);
}

TEST(LpNormTest, RejectsBadInput) {
  EXPECT_THROW(LpNorm(Vector{}, 2.0), std::domain_error);
  EXPECT_THROW(LpNorm(Vector{1.0}, 0.5), std::domain_error);
}

TEST(K2MemberTest, Examples) {
  EXPECT_TRUE(K2Member(Vector{1.0, 2.0}));
  EXPECT_FALSE(K2Member(Vector{2.0, 0.1}));
  EXPECT_TRUE(K2Member(Vector{0.0, 0.0}));
  EXPECT_TRUE(K2Member(Vector{-1.5, -1.5}));
  EXPECT_FALSE(K2Member(Vector{-1.5, 1.51}));
}

TEST(K3MemberTest, Examples) {
  EXPECT_TRUE(K3Member(Vector{2.0, 2.0, 0.0}));
  EXPECT_FALSE(K3Member(Vector{2.0, 2.0, 1.0}));
  EXPECT_TRUE(K3Member(Vector{0.0, 0.0, 0.0}));
  EXPECT_FALSE(K3Member(Vector{2.1, 0.0, 0.0}));
}

TEST(GaugeTest, K2Examples) {
  const NormBall k2 = MakeK2Hull();
  EXPECT_EQ(k2.Gauge(Vector{0.0, 0.0}), 0.0);
  EXPECT_NEAR(k2.Gauge(Vector{1.0, 2.0}), 1.0, 1e-9);
  EXPECT_NEAR(k2.Gauge(Vector{0.5, 1.0}), 0.5, 1e-9);
  // Grid-scan oracle overshoots by at most one grid step.
  EXPECT_NEAR(k2.Gauge(Vector{1.0, 2.0}), oracle::kK2GaugeVertex, 2e-6);
  EXPECT_NEAR(k2.Gauge(Vector{0.5, 1.0}), oracle::kK2GaugeHalf, 2e-6);
  EXPECT_TRUE(K2Member(Vector{1.0 * (1 - 1e-6), 2.0 * (1 - 1e-6)}));
  EXPECT_FALSE(K2Member(Vector{1.0 * (1 + 1e-6), 2.0 * (1 + 1e-6)}));
}

TEST(GaugeTest, LpMatchesNormOverRadius) {
  const NormBall ball = NormBall::Lp(2.0, 2.0, 2);
  EXPECT_DOUBLE_EQ(ball.Gauge(Vector{3.0, 4.0}), 2.5);
  const NormBall oracle = MakeLpOracle(2.0, 2, 2.0);
  EXPECT_NEAR(oracle.Gauge(Vector{3.0, 4.0}), 2.5, 1e-9);
}

TEST(GaugeTest, RejectsNonFiniteAndWrongDimension) {
  const NormBall k2 = MakeK2Hull();
  EXPECT_THROW(k2.Gauge(Vector{NAN, 0.0}), std::domain_error);
  EXPECT_THROW(k2.Gauge(Vector{1.0, 0.0, 0.0}), std::invalid_argument);
}

TEST(GaugePropertyTest, PositiveHomogeneity) {
  RngStream rng(11, 0);
  for (const NormBall& ball : TestBalls()) {
    for (int i = 0; i < 1000; ++i) {
      const Vector x = RandomPoint(rng, ball.dimension(), 3.0);
      const double c = rng.Uniform(0.0, 5.0);
      Vector cx = x;
      for (double& v : cx) v *= c;
      const double gx = ball.Gauge(x);
      EXPECT_LE(std::abs(ball.Gauge(cx) - c * gx), 1e-8 * (1 + c * gx))
          << ball.ToRecord();
    }
  }
}

TEST(GaugePropertyTest, Symmetry) {
  RngStream rng(12, 0);
  for (const NormBall& ball : TestBalls()) {
    for (int i = 0; i < 500; ++i) {
      const Vector x = RandomPoint(rng, ball.dimension(), 3.0);
      Vector neg = x;
      for (double& v : neg) v = -v;
      EXPECT_NEAR(ball.Gauge(x), ball.Gauge(neg), 1e-10 * (1 + ball.Gauge(x)))
          << ball.ToRecord();
    }
  }
}

TEST(GaugePropertyTest, TriangleInequality) {
  RngStream rng(13, 0);
  for (const NormBall& ball : TestBalls()) {
    for (int i = 0; i < 500; ++i) {
      const Vector x = RandomPoint(rng, ball.dimension(), 3.0);
      const Vector y = RandomPoint(rng, ball.dimension(), 3.0);
      Vector s(x.size());
      for (size_t j = 0; j < x.size(); ++j) s[j] = x[j] + y[j];
      EXPECT_LE(ball.Gauge(s), ball.Gauge(x) + ball.Gauge(y) + 1e-8)
          << ball.ToRecord();
    }
  }
}

TEST(GaugePropertyTest, ZeroOnlyAtOrigin) {
  RngStream rng(14, 0);
  for (const NormBall& ball : TestBalls()) {
    EXPECT_EQ(ball.Gauge(Vector(ball.dimension(), 0.0)), 0.0);
    for (int i = 0; i < 100; ++i) {
      EXPECT_GT(ball.Gauge(RandomPoint(rng, ball.dimension(), 1e-3)), 0.0);
    }
  }
}

TEST(OracleBallPropertyTest, SymmetricStarShapedAndBounded) {
  RngStream rng(15, 0);
  for (const NormBall& ball : TestBalls()) {
    const double b = ball.bound();
    for (int i = 0; i < 2000; ++i) {
      const Vector x = RandomPoint(rng, ball.dimension(), 1.2 * b);
      if (!ball.Contains(x)) continue;
      Vector neg = x;
      Vector shrunk = x;
      for (double& v : neg) v = -v;
      const double c = rng.Uniform01();
      for (double& v : shrunk) v *= c;
      EXPECT_TRUE(ball.Contains(neg)) << ball.ToRecord();
      EXPECT_TRUE(ball.Contains(shrunk)) << ball.ToRecord();
      EXPECT_LE(LpNorm(x, kInfinity), b) << ball.ToRecord();
    }
  }
}

TEST(VolumeLpTest, Examples) {
  EXPECT_NEAR(VolumeLp(2.0, 2, 1.0), std::numbers::pi, 1e-14);
  EXPECT_DOUBLE_EQ(VolumeLp(kInfinity, 2, 2.0), 16.0);
  EXPECT_NEAR(VolumeLp(1.0, 2, 3.125), oracle::kVolumeL1Exact, 1e-12);
  EXPECT_NEAR(VolumeLp(2.0, 2, oracle::kDelta2Closed), oracle::kVolumeL2Exact,
              1e-12);
}

TEST(VolumeLpTest, SphereVolumes) {
  for (int m = 1; m <= 10; ++m) {
    const double expected =
        std::pow(std::numbers::pi, m / 2.0) / std::tgamma(1.0 + m / 2.0);
    EXPECT_NEAR(VolumeLp(2.0, m, 1.0), expected, 1e-10 * expected) << m;
  }
}

TEST(VolumeMonteCarloTest, Examples) {
  const VolumeEstimate k2 = VolumeMonteCarlo(MakeK2Hull(), 1.0, 1'000'000, 1);
  EXPECT_NEAR(k2.estimate, oracle::kK2Volume, 3 * k2.standard_error);
  const VolumeEstimate square =
      VolumeMonteCarlo(MakeLpOracle(kInfinity, 2), 2.0, 100'000, 2);
  EXPECT_NEAR(square.estimate, 16.0, 3 * square.standard_error + 1e-12);
  const VolumeEstimate disk =
      VolumeMonteCarlo(MakeLpOracle(2.0, 2), 1.0, 1'000'000, 3);
  EXPECT_NEAR(disk.estimate, std::numbers::pi, 3 * disk.standard_error);
}

TEST(VolumeMonteCarloTest, AgreesWithAnalyticVolume) {
  uint64_t seed = 100;
  for (double p : {1.0, 2.0, kInfinity}) {
    for (int m : {2, 3}) {
      const VolumeEstimate est =
          VolumeMonteCarlo(MakeLpOracle(p, m), 1.5, 200'000, ++seed);
      const double exact = VolumeLp(p, m, 1.5);
      EXPECT_NEAR(est.estimate, exact, 4 * est.standard_error + 1e-12)
          << "p=" << p << " m=" << m;
    }
  }
}

TEST(VolumeMonteCarloTest, ScaledVolumeIsPowerOfScale) {
  const NormBall k3 = MakeK3Hull();
  const VolumeEstimate unit = VolumeMonteCarlo(k3, 1.0, 400'000, 7);
  const VolumeEstimate scaled = ScaledVolume({k3, 2.0}, 400'000, 8);
  const double se = std::hypot(8 * unit.standard_error, scaled.standard_error);
  EXPECT_NEAR(scaled.estimate, 8 * unit.estimate, 4 * se);
  EXPECT_NEAR(unit.estimate, oracle::kK3Volume, 4 * unit.standard_error);
}

TEST(VolumeMonteCarloTest, RejectsTooFewSamples) {
  EXPECT_THROW(VolumeMonteCarlo(MakeK2Hull(), 1.0, 10, 1),
               std::invalid_argument);
}

TEST(BallContainmentTest, Examples) {
  const ScaledBall linf{NormBall::Lp(kInfinity, 1.0, 2), 2.0};
  const ScaledBall l2{NormBall::Lp(2.0, 1.0, 2), std::sqrt(8.0)};
  EXPECT_EQ(BallContainment(linf, l2, 100, 1).verdict,
            Containment::kContained);

  const ScaledBall l1{NormBall::Lp(1.0, 1.0, 2), 3.125};
  const ContainmentVerdict v = BallContainment(l1, linf, 100, 1);
  ASSERT_EQ(v.verdict, Containment::kNotContained);
  ASSERT_EQ(v.witness.size(), 2u);
  EXPECT_DOUBLE_EQ(v.witness[0], 3.125);
  EXPECT_DOUBLE_EQ(v.witness[1], 0.0);

  for (const NormBall& ball : TestBalls()) {
    const ScaledBall s{ball, 1.7};
    EXPECT_NE(BallContainment(s, s, 200, 3).verdict,
              Containment::kNotContained)
        << ball.ToRecord();
  }
  EXPECT_EQ(BallContainment(l2, l2, 10, 1).verdict, Containment::kContained);
}

TEST(BallContainmentTest, PolytopeVerticesAreExact) {
  const ScaledBall k2{MakeK2Hull(), 1.0};
  const ScaledBall k3{MakeK3Hull(), 1.0};
  const ScaledBall box3{NormBall::Lp(kInfinity, 2.0, 3), 1.0};
  EXPECT_EQ(BallContainment(k3, box3, 10, 1).verdict,
            Containment::kContained);
  EXPECT_EQ(BallContainment(box3, k3, 10, 1).verdict,
            Containment::kNotContained);
  const ScaledBall l1{NormBall::Lp(1.0, 1.0, 2), 3.125};
  EXPECT_EQ(BallContainment(l1, k2, 500, 1).verdict,
            Containment::kNotContained);
}

TEST(BallContainmentTest, DimensionMismatchThrows) {
  EXPECT_THROW(BallContainment({NormBall::Lp(2, 1, 2), 1.0},
                               {NormBall::Lp(2, 1, 3), 1.0}, 10, 1),
               std::invalid_argument);
}

TEST(BallContainmentPropertyTest, TransitivitySpotCheck) {
  RngStream rng(21, 0);
  const double ps[] = {1.0, 2.0, 3.0, kInfinity};
  int chains = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 2 + static_cast<int>(rng.Uniform01() * 3);
    std::vector<ScaledBall> balls;
    for (int i = 0; i < 3; ++i) {
      balls.push_back(
          {NormBall::Lp(ps[static_cast<int>(rng.Uniform01() * 4)], 1.0, m),
           rng.Uniform(0.5, 4.0)});
    }
    if (BallContainment(balls[0], balls[1], 0, 1).verdict !=
            Containment::kContained ||
        BallContainment(balls[1], balls[2], 0, 1).verdict !=
            Containment::kContained) {
      continue;
    }
    ++chains;
    const ScaledBall a_oracle{MakeLpOracle(balls[0].ball.p(), m),
                              balls[0].scale};
    const ScaledBall c_oracle{MakeLpOracle(balls[2].ball.p(), m),
                              balls[2].scale};
    EXPECT_NE(BallContainment(a_oracle, c_oracle, 300, trial).verdict,
              Containment::kNotContained);
  }
  EXPECT_GT(chains, 5);
}

TEST(QuadraticPairSensitivityTest, Examples) {
  EXPECT_NEAR(QuadraticPairSensitivity(1.0), oracle::kDelta1, 1e-8);
  EXPECT_NEAR(QuadraticPairSensitivity(2.0), oracle::kDelta2Closed, 1e-8);
  EXPECT_NEAR(QuadraticPairSensitivity(2.0), oracle::kDelta2Grid, 1e-8);
  EXPECT_NEAR(QuadraticPairSensitivity(kInfinity), oracle::kDeltaInf, 1e-8);
}

TEST(HullOptimalityTest, K2BeatsEveryLpBall) {
  const VolumeEstimate k2 = VolumeMonteCarlo(MakeK2Hull(), 1.0, 1'000'000, 5);
  for (double v : {oracle::kVolumeL1Exact, oracle::kVolumeL2Exact, 16.0}) {
    EXPECT_LT(k2.estimate + 4 * k2.standard_error, v);
  }
  const ScaledBall hull{MakeK2Hull(), 1.0};
  const ScaledBall lp[] = {{NormBall::Lp(1.0, 1.0, 2), oracle::kDelta1},
                           {NormBall::Lp(2.0, 1.0, 2), oracle::kDelta2Closed},
                           {NormBall::Lp(kInfinity, 1.0, 2), 2.0}};
  for (const ScaledBall& b : lp) {
    // K2 has a curved cap, so sampled probes can only fail to refute.
    EXPECT_EQ(BallContainment(hull, b, 2000, 9).verdict,
              Containment::kUndetermined)
        << b.ball.ToRecord();
  }
}

TEST(NormBallRecordTest, RoundTrip) {
  for (const char* rec : {"kind=lp p=inf radius=2 dim=2",
                          "kind=oracle name=k2 radius=1 dim=2",
                          "kind=oracle name=kt predictors=2 dim=8"}) {
    const NormBall ball = NormBall::FromRecord(rec);
    const NormBall again = NormBall::FromRecord(ball.ToRecord());
    EXPECT_EQ(again.ToRecord(), ball.ToRecord());
    EXPECT_EQ(again.dimension(), ball.dimension());
  }
  EXPECT_THROW(NormBall::FromRecord("kind=lp p=2"), std::invalid_argument);
  EXPECT_THROW(NormBall::FromRecord("kind=oracle name=nope dim=2"),
               std::invalid_argument);
}

}  // namespace
}  // namespace knorm
