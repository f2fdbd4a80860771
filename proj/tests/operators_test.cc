// Copyright 2026 The APECS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "apecs/common/error.h"
#include "apecs/common/random.h"
#include "apecs/operators/expert.h"
#include "apecs/operators/novice.h"
#include "apecs/sim/closed_loop.h"
#include "apecs/sim/course.h"

namespace apecs::operators {
namespace {

using sim::VehicleParams;
using sim::VehicleState;

TEST(PurePursuitTest, AlignedOnStraightGivesZero) {
  const sim::Course course = sim::StraightCourse(100.0);
  const VehicleState s{10.0, 0.0, 0.0, 5.0};
  EXPECT_EQ(PurePursuitSteer(s, course, ExpertConfig{}, VehicleParams{}), 0.0);
}

TEST(PurePursuitTest, SteersBackTowardCourse) {
  const sim::Course course = sim::StraightCourse(100.0);
  const VehicleState left{10.0, 1.5, 0.0, 5.0};
  const VehicleState right{10.0, -1.5, 0.0, 5.0};
  EXPECT_LT(PurePursuitSteer(left, course, ExpertConfig{}, VehicleParams{}), 0.0);
  EXPECT_GT(PurePursuitSteer(right, course, ExpertConfig{}, VehicleParams{}), 0.0);
}

TEST(PurePursuitTest, CircleSteadyStateMatchesGeometry) {
  const double radius = 20.0;
  const sim::Course course = sim::CircleCourse(radius, 0.05);
  ExpertConfig cfg;
  cfg.lookahead_base = 1.0;
  cfg.lookahead_gain = 0.0;
  const VehicleParams vehicle;
  const double expected = std::atan(vehicle.wheelbase / radius) / vehicle.max_steer;
  // Counterclockwise circle starting at (0, -R) heading +x.
  for (double phi : {-M_PI / 2, 0.3, 2.0}) {
    const VehicleState s{radius * std::cos(phi), radius * std::sin(phi),
                         phi + M_PI / 2, 5.0};
    const double steer = PurePursuitSteer(s, course, cfg, vehicle);
    EXPECT_NEAR(steer / expected, 1.0, 0.05) << "phi=" << phi;
  }
}

TEST(PurePursuitTest, OutputWithinUnitRange) {
  const sim::Course course = sim::BenchmarkCourse();
  Rng rng(41);
  for (int k = 0; k < 2000; ++k) {
    const VehicleState s{rng.uniform(-20, 150), rng.uniform(-20, 120),
                         rng.uniform(-M_PI, M_PI), rng.uniform(0, 10)};
    const double steer = PurePursuitSteer(s, course, ExpertConfig{}, VehicleParams{});
    EXPECT_LE(std::abs(steer), 1.0);
  }
}

TEST(PidSpeedTest, Examples) {
  ExpertConfig cfg;
  PidState state;
  EXPECT_EQ(PidSpeed(5.0, 5.0, state, 0.1, cfg), 0.0);
  cfg.kp = 0.5;
  cfg.ki = 0.0;
  cfg.kd = 0.0;
  PidState fresh;
  EXPECT_DOUBLE_EQ(PidSpeed(4.0, 5.0, fresh, 0.1, cfg), 0.5);
  EXPECT_THROW(PidSpeed(4.0, 5.0, fresh, 0.0, cfg), InvalidInputError);
}

TEST(PidSpeedTest, IntegralFollowsRecurrenceUntilClamp) {
  ExpertConfig cfg;
  cfg.kp = 0.0;
  cfg.ki = 0.1;
  cfg.kd = 0.0;
  cfg.integral_limit = 2.0;
  PidState state;
  double sum = 0.0;
  for (int k = 0; k < 60; ++k) {
    const double error = 1.0 + 0.01 * (k % 3);
    sum = std::min(sum + error * 0.1, cfg.integral_limit);
    const double u = PidSpeed(5.0 - error, 5.0, state, 0.1, cfg);
    EXPECT_NEAR(u, cfg.ki * sum, 1e-12) << "step " << k;
  }
  EXPECT_EQ(state.integral, cfg.integral_limit);
}

TEST(PidSpeedTest, DerivativeTerm) {
  ExpertConfig cfg;
  cfg.kp = 0.0;
  cfg.ki = 0.0;
  cfg.kd = 0.05;
  PidState state;
  EXPECT_EQ(PidSpeed(4.0, 5.0, state, 0.1, cfg), 0.0);
  EXPECT_NEAR(PidSpeed(4.5, 5.0, state, 0.1, cfg), 0.05 * (0.5 - 1.0) / 0.1, 1e-12);
}

TEST(ExpertConfigTest, Validation) {
  ExpertConfig cfg;
  cfg.lookahead_base = 0.0;
  EXPECT_THROW(cfg.Validate(), InvalidConfigError);
  cfg = ExpertConfig{};
  cfg.kd = std::nan("");
  EXPECT_THROW(cfg.Validate(), InvalidConfigError);
}

TEST(FuzzyMembershipsTest, PartitionOfUnity) {
  const NoviceConfig cfg;
  for (const auto& bp : {cfg.cte_breakpoints, cfg.heading_breakpoints}) {
    for (double v = -10.0; v <= 10.0; v += 0.001) {
      const auto mu = FuzzyMemberships(v, bp);
      ASSERT_EQ(mu.size(), bp.size());
      EXPECT_NEAR(std::accumulate(mu.begin(), mu.end(), 0.0), 1.0, 1e-12);
      for (double m : mu) {
        EXPECT_GE(m, 0.0);
        EXPECT_LE(m, 1.0);
      }
    }
  }
  const std::vector<double> uneven{-3.0, -1.0, 0.5, 4.0};
  for (double v = -6.0; v <= 6.0; v += 0.01) {
    const auto mu = FuzzyMemberships(v, uneven);
    EXPECT_NEAR(std::accumulate(mu.begin(), mu.end(), 0.0), 1.0, 1e-12);
  }
}

TEST(FuzzyMembershipsTest, PeaksAtBreakpoints) {
  const std::vector<double> bp{-2.0, 0.0, 2.0};
  EXPECT_EQ(FuzzyMemberships(0.0, bp), (std::vector<double>{0.0, 1.0, 0.0}));
  EXPECT_EQ(FuzzyMemberships(-5.0, bp), (std::vector<double>{1.0, 0.0, 0.0}));
  EXPECT_EQ(FuzzyMemberships(1.0, bp), (std::vector<double>{0.0, 0.5, 0.5}));
}

TEST(SugenoSteerTest, SymmetricRules) {
  const NoviceConfig cfg;
  EXPECT_EQ(SugenoSteer(0.0, 0.0, cfg), 0.0);
  Rng rng(3);
  for (int k = 0; k < 1000; ++k) {
    const double c = rng.uniform(-4, 4), h = rng.uniform(-1, 1);
    EXPECT_NEAR(SugenoSteer(c, h, cfg), -SugenoSteer(-c, -h, cfg), 1e-15);
    EXPECT_LE(std::abs(SugenoSteer(c, h, cfg)), 0.9);
  }
  // Left of the path steers right.
  EXPECT_LT(SugenoSteer(1.0, 0.0, cfg), 0.0);
}

TEST(NoviceConfigTest, Validation) {
  NoviceConfig cfg;
  cfg.gain_excess = 1.0;
  EXPECT_THROW(cfg.Validate(), InvalidConfigError);
  cfg = NoviceConfig{};
  cfg.reaction_delay = -1;
  EXPECT_THROW(cfg.Validate(), InvalidConfigError);
  cfg = NoviceConfig{};
  cfg.rule_steer.pop_back();
  EXPECT_THROW(cfg.Validate(), InvalidConfigError);
  cfg = NoviceConfig{};
  cfg.cte_breakpoints = {1.0, 0.0};
  EXPECT_THROW(cfg.Validate(), InvalidConfigError);
}

TEST(NoviceOperatorTest, ZeroErrorsGiveZeroSteer) {
  const sim::Course course = sim::StraightCourse(100.0);
  NoviceOperator novice{NoviceConfig{}};
  const sim::Command cmd = novice.Next({5.0, 0.0, 0.0, 5.0}, course);
  EXPECT_EQ(cmd.steer, 0.0);
  EXPECT_EQ(cmd.throttle, 0.0);
}

TEST(NoviceOperatorTest, ActsOnDelayedPerception) {
  const sim::Course course = sim::StraightCourse(100.0);
  NoviceConfig cfg;
  cfg.reaction_delay = 2;
  NoviceOperator novice{cfg};
  const VehicleState centered{5.0, 0.0, 0.0, 5.0};
  const VehicleState offset{5.0, 1.0, 0.0, 5.0};
  EXPECT_EQ(novice.Next(centered, course).steer, 0.0);
  EXPECT_EQ(novice.Next(offset, course).steer, 0.0);
  EXPECT_EQ(novice.Next(offset, course).steer, 0.0);
  EXPECT_NEAR(novice.Next(offset, course).steer,
              cfg.gain_excess * SugenoSteer(1.0, 0.0, cfg), 1e-12);
}

TEST(NoviceOperatorTest, ReplayIsBitwiseIdentical) {
  const sim::Course course = sim::BenchmarkCourse();
  Rng rng(77);
  std::vector<VehicleState> states;
  for (int k = 0; k < 500; ++k) {
    states.push_back({rng.uniform(0, 150), rng.uniform(-10, 100),
                      rng.uniform(-M_PI, M_PI), rng.uniform(0, 10)});
  }
  NoviceOperator a{NoviceConfig{}};
  NoviceOperator b{NoviceConfig{}};
  std::vector<sim::Command> first;
  for (const auto& s : states) first.push_back(a.Next(s, course));
  a.Reset();
  for (std::size_t k = 0; k < states.size(); ++k) {
    const sim::Command ca = a.Next(states[k], course);
    const sim::Command cb = b.Next(states[k], course);
    EXPECT_EQ(ca.steer, first[k].steer);
    EXPECT_EQ(ca.throttle, first[k].throttle);
    EXPECT_EQ(cb.steer, first[k].steer);
    EXPECT_LE(std::abs(ca.steer), 1.0);
    EXPECT_LE(std::abs(ca.throttle), 1.0);
  }
}

class BenchmarkRunTest : public ::testing::Test {
 protected:
  static sim::RunOptions Options(const sim::Course& course) {
    sim::RunOptions opts;
    opts.initial = sim::StartState(course, 0.0, 0.0);
    return opts;
  }
};

TEST_F(BenchmarkRunTest, NoviceOscillatesAndExpertTracks) {
  const sim::Course course = sim::BenchmarkCourse();
  NoviceOperator novice{NoviceConfig{}};
  ExpertOperator expert{ExpertConfig{}, VehicleParams{}};
  const sim::RunTrace tn = sim::RunClosedLoop(novice, course, Options(course));
  const sim::RunTrace te = sim::RunClosedLoop(expert, course, Options(course));
  ASSERT_FALSE(tn.aborted);
  ASSERT_FALSE(te.aborted);
  EXPECT_TRUE(te.completed);
  EXPECT_GE(sim::CrossTrackSignChanges(tn), 3);
  EXPECT_LE(sim::CrossTrackSignChanges(te), 1);
  EXPECT_LT(sim::Rmse(te), sim::Rmse(tn));
  for (const auto* t : {&tn, &te}) {
    for (const auto& row : t->rows) {
      EXPECT_LE(std::abs(row.command.steer), 1.0);
      EXPECT_LE(std::abs(row.command.throttle), 1.0);
    }
  }
}

}  // namespace
}  // namespace apecs::operators
