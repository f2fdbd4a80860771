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

#include "apecs/training/features.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace apecs::training {
namespace {

double Unit(double v) { return std::clamp(v, -1.0, 1.0); }

constexpr double kLocalBehind = 15.0;
constexpr double kLocalAhead = 25.0;
constexpr double kLocalSpacing = 0.25;
constexpr double kStraightCurvature = 1e-9;

}  // namespace

Features EncodeFeatures(const sim::Command& command,
                        const sim::VehicleState& state,
                        const sim::Course& course,
                        const operators::ExpertConfig& expert) {
  const sim::CourseProjection proj = course.Project({state.x, state.y});
  const double lookahead = operators::LookaheadDistance(state.speed, expert);
  return Features{
      Unit(command.steer),
      Unit(command.throttle),
      Unit(proj.signed_distance / kCteScale),
      Unit(sim::WrapAngle(state.heading - proj.heading) / std::numbers::pi),
      Unit((expert.target_speed - state.speed) / kSpeedErrorScale),
      Unit(course.CurvatureAt(proj.arclength + lookahead) * kCurvatureScale),
      Unit(state.speed / kSpeedScale),
  };
}

LocalSituation DecodeFeatures(const Features& f) {
  LocalSituation s;
  s.state.x = 0.0;
  s.state.y = f[2] * kCteScale;
  s.state.heading = sim::WrapAngle(f[3] * std::numbers::pi);
  s.state.speed = std::max(0.0, f[6] * kSpeedScale);
  s.speed_error = f[4] * kSpeedErrorScale;
  s.curvature = f[5] / kCurvatureScale;
  return s;
}

sim::Course LocalCourse(double curvature) {
  const int n = int(std::lround((kLocalBehind + kLocalAhead) / kLocalSpacing));
  std::vector<sim::Point2> pts;
  pts.reserve(std::size_t(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const double s = -kLocalBehind + i * kLocalSpacing;
    if (std::abs(curvature) < kStraightCurvature) {
      pts.push_back({s, 0.0});
    } else {
      const double r = 1.0 / curvature;
      const double phi = s * curvature;
      pts.push_back({r * std::sin(phi), r * (1.0 - std::cos(phi))});
    }
  }
  return sim::Course(std::move(pts));
}

CommandVector ExpertFromFeatures(const Features& f,
                                 const operators::ExpertConfig& expert,
                                 const sim::VehicleParams& vehicle) {
  const LocalSituation s = DecodeFeatures(f);
  const sim::Course course = LocalCourse(s.curvature);
  const double steer =
      operators::PurePursuitSteer(s.state, course, expert, vehicle);
  const double throttle = std::clamp(expert.kp * s.speed_error, -1.0, 1.0);
  return {steer, throttle};
}

}  // namespace apecs::training
