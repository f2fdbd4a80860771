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

#ifndef APECS_TRAINING_FEATURES_H_
#define APECS_TRAINING_FEATURES_H_

#include <array>
#include <cstddef>

#include "apecs/operators/expert.h"
#include "apecs/sim/course.h"
#include "apecs/sim/vehicle.h"

namespace apecs::training {

// Network input layout, every entry scaled to [-1, 1]:
//   0 steer command, 1 throttle command, 2 cross-track error / 10 m,
//   3 heading error / pi, 4 speed error / 5 m/s,
//   5 course curvature at the lookahead point * 10 m, 6 speed / 10 m/s.
inline constexpr std::size_t kNumFeatures = 7;
inline constexpr std::size_t kNumCommands = 2;

inline constexpr double kCteScale = 10.0;
inline constexpr double kSpeedErrorScale = 5.0;
inline constexpr double kCurvatureScale = 10.0;
inline constexpr double kSpeedScale = 10.0;

using Features = std::array<double, kNumFeatures>;
using CommandVector = std::array<double, kNumCommands>;

// Features of the live closed-loop situation; speed error is
// target_speed - speed.
Features EncodeFeatures(const sim::Command& command,
                        const sim::VehicleState& state,
                        const sim::Course& course,
                        const operators::ExpertConfig& expert);

// Physical situation described by a feature vector: a vehicle offset from a
// constant-curvature course that passes through the origin heading along +x.
struct LocalSituation {
  sim::VehicleState state;
  double curvature = 0.0;    // 1/m, > 0 turns left
  double speed_error = 0.0;  // m/s
};

LocalSituation DecodeFeatures(const Features& f);

// Arc (or straight line) of the given curvature through the origin, heading
// +x, spanning arclength [-15 m, 25 m] at 0.25 m spacing.
sim::Course LocalCourse(double curvature);

// Expert command for the situation a feature vector describes: pure pursuit
// on the local course and the proportional part of the speed controller.
CommandVector ExpertFromFeatures(const Features& f,
                                 const operators::ExpertConfig& expert,
                                 const sim::VehicleParams& vehicle);

}  // namespace apecs::training

#endif  // APECS_TRAINING_FEATURES_H_
