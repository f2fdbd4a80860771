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

#include "apecs/sim/vehicle.h"

#include <algorithm>
#include <cmath>

#include "apecs/common/error.h"

namespace apecs::sim {

Command Command::Clamped(double steer, double throttle) {
  auto clamp = [](double v) {
    return std::isnan(v) ? 0.0 : std::clamp(v, -1.0, 1.0);
  };
  return Command{clamp(steer), clamp(throttle)};
}

double WrapAngle(double a) {
  a = std::remainder(a, 2.0 * M_PI);  // [-pi, pi]
  return a <= -M_PI ? a + 2.0 * M_PI : a;
}

VehicleState StepVehicle(const VehicleState& s, const Command& cmd,
                         const VehicleParams& params) {
  if (!(params.dt > 0.0)) throw InvalidInputError("dt must be positive");
  const Command c = Command::Clamped(cmd.steer, cmd.throttle);
  const double delta = c.steer * params.max_steer;
  VehicleState next;
  next.x = s.x + s.speed * std::cos(s.heading) * params.dt;
  next.y = s.y + s.speed * std::sin(s.heading) * params.dt;
  next.heading = WrapAngle(
      s.heading + s.speed / params.wheelbase * std::tan(delta) * params.dt);
  next.speed = std::max(0.0, s.speed + c.throttle * params.max_accel * params.dt);
  return next;
}

}  // namespace apecs::sim
