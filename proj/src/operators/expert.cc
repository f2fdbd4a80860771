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

#include "apecs/operators/expert.h"

#include <algorithm>
#include <cmath>

#include "apecs/common/error.h"

namespace apecs::operators {
namespace {

double Dist(sim::Point2 a, sim::Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

// First point at distance >= radius from `p`, walking forward along the course
// from the projection.
sim::Point2 LookaheadPoint(const sim::Course& course,
                           const sim::CourseProjection& proj, sim::Point2 p,
                           double radius) {
  const auto& wp = course.waypoints();
  if (Dist(proj.point, p) >= radius) return proj.point;
  sim::Point2 a = proj.point;
  for (std::size_t i = proj.segment; i + 1 < wp.size(); ++i) {
    const sim::Point2 b = wp[i + 1];
    if (Dist(b, p) >= radius) {
      // Solve |a + t (b - a) - p| = radius for the exit root in [0, 1].
      const double dx = b.x - a.x, dy = b.y - a.y;
      const double fx = a.x - p.x, fy = a.y - p.y;
      const double qa = dx * dx + dy * dy;
      const double qb = 2.0 * (fx * dx + fy * dy);
      const double qc = fx * fx + fy * fy - radius * radius;
      const double disc = std::max(0.0, qb * qb - 4.0 * qa * qc);
      const double t = std::clamp((-qb + std::sqrt(disc)) / (2.0 * qa), 0.0, 1.0);
      return {a.x + t * dx, a.y + t * dy};
    }
    a = b;
  }
  return wp.back();
}

}  // namespace

void ExpertConfig::Validate() const {
  if (!(lookahead_base > 0.0)) {
    throw InvalidConfigError("expert lookahead_base must be positive");
  }
  for (double g : {lookahead_gain, kp, ki, kd, target_speed, integral_limit}) {
    if (!std::isfinite(g)) throw InvalidConfigError("expert gains must be finite");
  }
}

double LookaheadDistance(double speed, const ExpertConfig& cfg) {
  return cfg.lookahead_base + cfg.lookahead_gain * std::max(0.0, speed);
}

double PurePursuitSteer(const sim::VehicleState& state, const sim::Course& course,
                        const ExpertConfig& cfg,
                        const sim::VehicleParams& vehicle) {
  if (course.waypoints().empty()) throw InvalidInputError("empty course");
  const sim::Point2 p{state.x, state.y};
  const double ld = LookaheadDistance(state.speed, cfg);
  const sim::CourseProjection proj = course.Project(p);
  const sim::Point2 target = LookaheadPoint(course, proj, p, ld);
  const double bearing = std::atan2(target.y - p.y, target.x - p.x);
  const double alpha = sim::WrapAngle(bearing - state.heading);
  const double dist = std::max(Dist(target, p), 1e-9);
  const double delta =
      std::atan(vehicle.wheelbase * 2.0 * std::sin(alpha) / std::max(ld, dist));
  return std::clamp(delta / vehicle.max_steer, -1.0, 1.0);
}

double PidSpeed(double current_speed, double target_speed, PidState& state,
                double dt, const ExpertConfig& cfg) {
  if (!(dt > 0.0)) throw InvalidInputError("dt must be positive");
  const double error = target_speed - current_speed;
  state.integral = std::clamp(state.integral + error * dt, -cfg.integral_limit,
                              cfg.integral_limit);
  const double derivative = state.has_prev ? (error - state.prev_error) / dt : 0.0;
  state.prev_error = error;
  state.has_prev = true;
  const double u = cfg.kp * error + cfg.ki * state.integral + cfg.kd * derivative;
  return std::clamp(u, -1.0, 1.0);
}

ExpertOperator::ExpertOperator(ExpertConfig cfg, sim::VehicleParams vehicle)
    : cfg_(cfg), vehicle_(vehicle) {
  cfg_.Validate();
}

sim::Command ExpertOperator::Next(const sim::VehicleState& state,
                                  const sim::Course& course) {
  const double steer = PurePursuitSteer(state, course, cfg_, vehicle_);
  const double throttle =
      PidSpeed(state.speed, cfg_.target_speed, pid_, vehicle_.dt, cfg_);
  return sim::Command::Clamped(steer, throttle);
}

}  // namespace apecs::operators
