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

#ifndef APECS_OPERATORS_EXPERT_H_
#define APECS_OPERATORS_EXPERT_H_

#include "apecs/sim/closed_loop.h"
#include "apecs/sim/course.h"
#include "apecs/sim/vehicle.h"

namespace apecs::operators {

struct ExpertConfig {
  double lookahead_base = 2.0;   // m
  double lookahead_gain = 0.1;   // s; lookahead = base + gain * speed
  double kp = 1.0;
  double ki = 0.1;
  double kd = 0.0;
  double target_speed = 5.0;     // m/s
  double integral_limit = 5.0;   // anti-windup clamp on the error integral

  // Throws InvalidConfigError when lookahead_base <= 0 or a gain is
  // non-finite.
  void Validate() const;
};

double LookaheadDistance(double speed, const ExpertConfig& cfg);

// Pure pursuit: the target is the first course point ahead of the vehicle's
// projection at distance >= the lookahead (the course end if none), and
//   steer = atan(wheelbase * 2 sin(alpha) / L_d) / max_steer
// clamped to [-1, 1], alpha being the target bearing relative to the
// heading. Throws InvalidInputError for an empty course.
double PurePursuitSteer(const sim::VehicleState& state, const sim::Course& course,
                        const ExpertConfig& cfg,
                        const sim::VehicleParams& vehicle);

struct PidState {
  double integral = 0.0;
  double prev_error = 0.0;
  bool has_prev = false;
};

// Positional PID on speed error with the integral clamped to
// +-cfg.integral_limit; output clamped to [-1, 1]. The derivative term is 0 on
// the first call. Throws InvalidInputError for dt <= 0.
double PidSpeed(double current_speed, double target_speed, PidState& state,
                double dt, const ExpertConfig& cfg);

// Pure pursuit steering with PID speed control.
class ExpertOperator : public sim::CommandSource {
 public:
  ExpertOperator(ExpertConfig cfg, sim::VehicleParams vehicle);

  void Reset() override { pid_ = {}; }
  sim::Command Next(const sim::VehicleState& state,
                    const sim::Course& course) override;

 private:
  ExpertConfig cfg_;
  sim::VehicleParams vehicle_;
  PidState pid_;
};

}  // namespace apecs::operators

#endif  // APECS_OPERATORS_EXPERT_H_
