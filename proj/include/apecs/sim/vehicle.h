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

#ifndef APECS_SIM_VEHICLE_H_
#define APECS_SIM_VEHICLE_H_

namespace apecs::sim {

// Normalized command. Positive steer turns left (counterclockwise yaw).
struct Command {
  double steer = 0.0;
  double throttle = 0.0;

  // Both components clamped to [-1, 1]; NaN maps to 0.
  static Command Clamped(double steer, double throttle);
};

struct VehicleState {
  double x = 0.0;        // m
  double y = 0.0;        // m
  double heading = 0.0;  // rad, wrapped to (-pi, pi]
  double speed = 0.0;    // m/s, >= 0
};

struct VehicleParams {
  double wheelbase = 2.9;   // m
  double max_steer = 0.6;   // rad
  double max_accel = 2.0;   // m/s^2
  double dt = 0.1;          // s
};

// Wraps an angle to (-pi, pi].
double WrapAngle(double a);

// One explicit Euler step of the kinematic bicycle:
//   x += v cos(psi) dt, y += v sin(psi) dt,
//   psi += v / wheelbase * tan(steer * max_steer) dt,
//   v = max(0, v + throttle * max_accel * dt).
// The command is clamped to [-1, 1] first.
VehicleState StepVehicle(const VehicleState& s, const Command& cmd,
                         const VehicleParams& params);

}  // namespace apecs::sim

#endif  // APECS_SIM_VEHICLE_H_
