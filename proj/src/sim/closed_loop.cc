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

#include "apecs/sim/closed_loop.h"

#include <cmath>

#include "apecs/common/error.h"
#include "apecs/common/number_format.h"

namespace apecs::sim {

VehicleState StartState(const Course& course, double lateral_offset,
                        double speed) {
  const Point2 p = course.waypoints().front();
  const double h = course.HeadingAt(0.0);
  return VehicleState{p.x - lateral_offset * std::sin(h),
                      p.y + lateral_offset * std::cos(h), h, speed};
}

RunTrace RunClosedLoop(CommandSource& source, const Course& course,
                       const RunOptions& options,
                       const CommandTransform& transform) {
  if (options.max_steps < 1) throw InvalidInputError("max_steps must be >= 1");
  source.Reset();
  RunTrace trace;
  trace.dt = options.vehicle.dt;
  trace.rows.reserve(std::size_t(options.max_steps));
  VehicleState state = options.initial;
  for (int step = 0; step < options.max_steps; ++step) {
    const CourseProjection proj = course.Project({state.x, state.y});
    if (std::abs(proj.signed_distance) > options.divergence_limit) {
      trace.aborted = true;
      break;
    }
    Command cmd = source.Next(state, course);
    if (transform) cmd = transform(state, course, cmd);
    cmd = Command::Clamped(cmd.steer, cmd.throttle);
    trace.rows.push_back(
        TraceRow{step * options.vehicle.dt, state, cmd, proj.signed_distance});
    if (proj.arclength >= course.length() - options.end_tolerance) {
      trace.completed = true;
      break;
    }
    state = StepVehicle(state, cmd, options.vehicle);
  }
  return trace;
}

double Rmse(const RunTrace& trace) {
  if (trace.rows.empty()) throw InvalidInputError("empty trace");
  double acc = 0.0;
  for (const auto& row : trace.rows) acc += row.cte * row.cte;
  return std::sqrt(acc / double(trace.rows.size()));
}

int CrossTrackSignChanges(const RunTrace& trace, double deadband) {
  int changes = 0;
  int last_sign = 0;
  for (const auto& row : trace.rows) {
    if (std::abs(row.cte) < deadband) continue;
    const int sign = row.cte > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++changes;
    last_sign = sign;
  }
  return changes;
}

void WriteTraceCsv(const RunTrace& trace, std::ostream& out) {
  out << "t,x,y,heading,speed,steer,throttle,cte\n";
  for (const auto& r : trace.rows) {
    out << FormatSignificant(r.t, 9) << ',' << FormatSignificant(r.state.x, 9)
        << ',' << FormatSignificant(r.state.y, 9) << ','
        << FormatSignificant(r.state.heading, 9) << ','
        << FormatSignificant(r.state.speed, 9) << ','
        << FormatSignificant(r.command.steer, 9) << ','
        << FormatSignificant(r.command.throttle, 9) << ','
        << FormatSignificant(r.cte, 9) << '\n';
  }
}

}  // namespace apecs::sim
