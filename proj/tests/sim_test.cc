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

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "apecs/common/error.h"
#include "apecs/common/random.h"
#include "apecs/operators/expert.h"
#include "apecs/sim/closed_loop.h"
#include "apecs/sim/course.h"
#include "apecs/sim/vehicle.h"

namespace apecs::sim {
namespace {

class ConstantSource : public CommandSource {
 public:
  explicit ConstantSource(Command cmd) : cmd_(cmd) {}
  Command Next(const VehicleState&, const Course&) override { return cmd_; }

 private:
  Command cmd_;
};

RunTrace TraceOf(const std::vector<double>& errors) {
  RunTrace t;
  for (std::size_t k = 0; k < errors.size(); ++k) {
    TraceRow row;
    row.t = 0.1 * double(k);
    row.cte = errors[k];
    t.rows.push_back(row);
  }
  return t;
}

TEST(StepVehicleTest, ZeroCommandAtRestIsFixedPoint) {
  const VehicleState s{1.0, -2.0, 0.4, 0.0};
  const VehicleState n = StepVehicle(s, Command{}, VehicleParams{});
  EXPECT_EQ(n.x, s.x);
  EXPECT_EQ(n.y, s.y);
  EXPECT_EQ(n.heading, s.heading);
  EXPECT_EQ(n.speed, s.speed);
}

TEST(StepVehicleTest, KinematicUpdate) {
  const VehicleParams p;
  const VehicleState s{0.0, 0.0, 0.5, 4.0};
  const VehicleState n = StepVehicle(s, Command{0.5, 0.25}, p);
  EXPECT_NEAR(n.x, 4.0 * std::cos(0.5) * 0.1, 1e-15);
  EXPECT_NEAR(n.y, 4.0 * std::sin(0.5) * 0.1, 1e-15);
  EXPECT_NEAR(n.heading, 0.5 + 4.0 / 2.9 * std::tan(0.3) * 0.1, 1e-15);
  EXPECT_NEAR(n.speed, 4.0 + 0.25 * 2.0 * 0.1, 1e-15);
}

TEST(StepVehicleTest, PositiveSteerTurnsLeft) {
  const VehicleState s{0.0, 0.0, 0.0, 5.0};
  VehicleState n = s;
  for (int k = 0; k < 10; ++k) n = StepVehicle(n, Command{0.3, 0.0}, VehicleParams{});
  EXPECT_GT(n.heading, 0.0);
  EXPECT_GT(n.y, 0.0);
}

TEST(StepVehicleTest, CoastingKeepsSpeedAndNoReverse) {
  Rng rng(5);
  for (int k = 0; k < 1000; ++k) {
    const VehicleState s{rng.uniform(-5, 5), rng.uniform(-5, 5),
                         rng.uniform(-M_PI, M_PI), rng.uniform(0, 10)};
    const VehicleState n = StepVehicle(s, Command{rng.uniform(-1, 1), 0.0}, VehicleParams{});
    EXPECT_NEAR(n.speed, s.speed, 1e-12);
    EXPECT_GT(n.heading, -M_PI);
    EXPECT_LE(n.heading, M_PI);
  }
  const VehicleState slow{0.0, 0.0, 0.0, 0.05};
  EXPECT_EQ(StepVehicle(slow, Command{0.0, -1.0}, VehicleParams{}).speed, 0.0);
}

TEST(StepVehicleTest, ConstantSteerTracesInscribedPolygon) {
  // Euler steps with constant turn rate w place every vertex on a circle of
  // radius v dt / (2 sin(w dt / 2)).
  const VehicleParams p;
  const double v = 3.0, steer = 0.4;
  const double w = v / p.wheelbase * std::tan(steer * p.max_steer);
  const double r = v * p.dt / (2.0 * std::sin(w * p.dt / 2.0));
  std::vector<VehicleState> pts{{0.0, 0.0, 0.0, v}};
  for (int k = 0; k < 400; ++k) pts.push_back(StepVehicle(pts.back(), {steer, 0.0}, p));
  const auto& a = pts[0];
  const auto& b = pts[1];
  const auto& c = pts[2];
  const double d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
  const double a2 = a.x * a.x + a.y * a.y, b2 = b.x * b.x + b.y * b.y,
               c2 = c.x * c.x + c.y * c.y;
  const double ux = (a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d;
  const double uy = (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d;
  for (const auto& q : pts) {
    EXPECT_NEAR(std::hypot(q.x - ux, q.y - uy), r, 1e-9);
  }
}

TEST(StepVehicleTest, RejectsBadTimestep) {
  VehicleParams p;
  p.dt = 0.0;
  EXPECT_THROW(StepVehicle(VehicleState{}, Command{}, p), InvalidInputError);
}

TEST(WrapAngleTest, HalfOpenInterval) {
  EXPECT_DOUBLE_EQ(WrapAngle(M_PI), M_PI);
  EXPECT_DOUBLE_EQ(WrapAngle(-M_PI), M_PI);
  EXPECT_NEAR(WrapAngle(3.0 * M_PI / 2.0), -M_PI / 2.0, 1e-15);
  EXPECT_NEAR(WrapAngle(7.0), 7.0 - 2.0 * M_PI, 1e-15);
}

TEST(CourseTest, RejectsDegenerateWaypoints) {
  EXPECT_THROW(Course({{0.0, 0.0}}), InvalidInputError);
  EXPECT_THROW(Course({{0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}), InvalidInputError);
}

TEST(CourseTest, BenchmarkGeometry) {
  const Course c = BenchmarkCourse();
  EXPECT_NEAR(c.length(), 140.0 + 2.0 * M_PI * 25.0, 0.5);
  EXPECT_NEAR(c.CurvatureAt(10.0), 0.0, 1e-12);
  EXPECT_NEAR(c.CurvatureAt(30.0 + 25.0 * M_PI / 4.0), 1.0 / 25.0, 1e-3);
  EXPECT_NEAR(c.CurvatureAt(30.0 + 25.0 * M_PI), -1.0 / 25.0, 1e-3);
}

TEST(CrossTrackErrorTest, Examples) {
  const Course course = StraightCourse(50.0);
  EXPECT_EQ(CrossTrackError({10.0, 0.0, 0.0, 0.0}, course), 0.0);
  EXPECT_DOUBLE_EQ(CrossTrackError({10.0, 2.0, 0.0, 0.0}, course), 2.0);
  EXPECT_DOUBLE_EQ(CrossTrackError({10.0, -2.0, 0.0, 0.0}, course), -2.0);
  const Course bench = BenchmarkCourse();
  for (const auto& w : bench.waypoints()) {
    EXPECT_EQ(CrossTrackError({w.x, w.y, 0.0, 0.0}, bench), 0.0);
  }
}

TEST(CrossTrackErrorTest, MatchesDenseResample) {
  const Course course = BenchmarkCourse();
  std::vector<Point2> dense;
  const auto& wp = course.waypoints();
  for (std::size_t i = 0; i + 1 < wp.size(); ++i) {
    const double len = std::hypot(wp[i + 1].x - wp[i].x, wp[i + 1].y - wp[i].y);
    const int n = int(std::ceil(len / 1e-3));
    for (int k = 0; k < n; ++k) {
      const double t = double(k) / n;
      dense.push_back({wp[i].x + t * (wp[i + 1].x - wp[i].x),
                       wp[i].y + t * (wp[i + 1].y - wp[i].y)});
    }
  }
  dense.push_back(wp.back());
  Rng rng(19);
  for (int k = 0; k < 40; ++k) {
    const double s = rng.uniform(0.0, course.length());
    const Point2 base = course.PointAt(s);
    const double h = course.HeadingAt(s);
    const double off = rng.uniform(-6.0, 6.0);
    const VehicleState st{base.x - off * std::sin(h), base.y + off * std::cos(h), 0, 0};
    double best = 1e300;
    for (const auto& q : dense) best = std::min(best, std::hypot(q.x - st.x, q.y - st.y));
    const double cte = CrossTrackError(st, course);
    EXPECT_NEAR(std::abs(cte), best, 2e-3) << "s=" << s;
  }
}

TEST(RmseTest, Examples) {
  EXPECT_EQ(Rmse(TraceOf({0.0, 0.0, 0.0})), 0.0);
  EXPECT_DOUBLE_EQ(Rmse(TraceOf({2.0, -2.0, 2.0})), 2.0);
  EXPECT_NEAR(Rmse(TraceOf({3.0, 4.0})), std::sqrt(12.5), 1e-15);
  EXPECT_NEAR(Rmse(TraceOf({3.0, 4.0})), 3.5355, 1e-4);
  EXPECT_THROW(Rmse(RunTrace{}), InvalidInputError);
}

TEST(RmseTest, InvariantUnderPermutation) {
  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> e(1 + rng.next() % 200);
    for (double& v : e) v = rng.uniform(-5, 5);
    const double base = Rmse(TraceOf(e));
    std::vector<double> rev(e.rbegin(), e.rend());
    EXPECT_NEAR(Rmse(TraceOf(rev)), base, 1e-12);
    for (std::size_t i = e.size() - 1; i > 0; --i) {
      std::swap(e[i], e[rng.next() % (i + 1)]);
    }
    EXPECT_NEAR(Rmse(TraceOf(e)), base, 1e-12);
  }
}

TEST(SignChangesTest, CountsWithDeadband) {
  EXPECT_EQ(CrossTrackSignChanges(TraceOf({1.0, -1.0, 0.01, 1.0, 2.0, -0.5})), 3);
  EXPECT_EQ(CrossTrackSignChanges(TraceOf({0.01, -0.01, 0.02})), 0);
}

TEST(ClosedLoopTest, ExpertConvergesOnStraight) {
  const Course course = StraightCourse(200.0);
  operators::ExpertOperator expert{operators::ExpertConfig{}, VehicleParams{}};
  RunOptions opts;
  opts.initial = StartState(course, 1.0, 0.0);
  const RunTrace t = RunClosedLoop(expert, course, opts);
  ASSERT_FALSE(t.rows.empty());
  EXPECT_TRUE(t.completed);
  EXPECT_LE(std::abs(t.rows.back().cte), 0.05);
}

TEST(ClosedLoopTest, ZeroCommandCoastsStraight) {
  const Course course = StraightCourse(1000.0);
  ConstantSource zero{Command{}};
  RunOptions opts;
  opts.max_steps = 100;
  opts.initial = StartState(course, 0.5, 2.0);
  const RunTrace t = RunClosedLoop(zero, course, opts);
  ASSERT_EQ(t.rows.size(), 100u);
  EXPECT_FALSE(t.aborted);
  EXPECT_FALSE(t.completed);
  for (std::size_t k = 0; k < t.rows.size(); ++k) {
    EXPECT_EQ(t.rows[k].state.y, 0.5);
    EXPECT_EQ(t.rows[k].state.heading, 0.0);
    EXPECT_NEAR(t.rows[k].state.x, 0.2 * double(k), 1e-9);
    EXPECT_NEAR(t.rows[k].t, 0.1 * double(k), 1e-12);
  }
}

TEST(ClosedLoopTest, DivergenceAbortsRun) {
  const Course course = StraightCourse(1000.0);
  ConstantSource turn{Command{1.0, 1.0}};
  RunOptions opts;
  opts.initial = StartState(course, 0.0, 5.0);
  opts.divergence_limit = 5.0;
  const RunTrace t = RunClosedLoop(turn, course, opts);
  EXPECT_TRUE(t.aborted);
  EXPECT_LT(t.rows.size(), std::size_t(opts.max_steps));
  EXPECT_THROW(RunClosedLoop(turn, course, RunOptions{.max_steps = 0}), InvalidInputError);
}

TEST(ClosedLoopTest, TransformIsAppliedAndClamped) {
  const Course course = StraightCourse(100.0);
  ConstantSource src{Command{0.2, 0.5}};
  RunOptions opts;
  opts.max_steps = 5;
  opts.initial = StartState(course);
  const RunTrace t = RunClosedLoop(
      src, course, opts,
      [](const VehicleState&, const Course&, const Command& c) {
        return Command{-3.0 * c.steer, 4.0 * c.throttle};
      });
  for (const auto& row : t.rows) {
    EXPECT_DOUBLE_EQ(row.command.steer, -0.6);
    EXPECT_EQ(row.command.throttle, 1.0);
  }
}

TEST(ClosedLoopTest, RepeatedRunsAreBitIdentical) {
  const Course course = BenchmarkCourse();
  operators::ExpertOperator expert{operators::ExpertConfig{}, VehicleParams{}};
  RunOptions opts;
  opts.initial = StartState(course, 0.7, 1.0);
  std::ostringstream a, b;
  WriteTraceCsv(RunClosedLoop(expert, course, opts), a);
  WriteTraceCsv(RunClosedLoop(expert, course, opts), b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(TraceCsvTest, HeaderAndPrecision) {
  RunTrace t;
  TraceRow row;
  row.t = 0.1;
  row.state = {1.0 / 3.0, 2.0, 0.5, 5.0};
  row.command = {0.25, -1.0};
  row.cte = -0.125;
  t.rows.push_back(row);
  std::ostringstream out;
  WriteTraceCsv(t, out);
  const std::string s = out.str();
  EXPECT_EQ(s.substr(0, s.find('\n')), "t,x,y,heading,speed,steer,throttle,cte");
  EXPECT_NE(s.find("0.333333333,"), std::string::npos);
  EXPECT_EQ(s.find("0.3333333333"), std::string::npos);
}

}  // namespace
}  // namespace apecs::sim
