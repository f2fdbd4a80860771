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

#ifndef APECS_SIM_CLOSED_LOOP_H_
#define APECS_SIM_CLOSED_LOOP_H_

#include <functional>
#include <ostream>
#include <vector>

#include "apecs/sim/course.h"
#include "apecs/sim/vehicle.h"

namespace apecs::sim {

// Anything that produces a command from the observed state. Implementations
// may keep history; Reset() returns them to their initial state.
class CommandSource {
 public:
  virtual ~CommandSource() = default;
  virtual void Reset() {}
  virtual Command Next(const VehicleState& state, const Course& course) = 0;
};

// Maps the operator command to the command applied to the plant.
using CommandTransform = std::function<Command(
    const VehicleState& state, const Course& course, const Command& operator_cmd)>;

struct TraceRow {
  double t = 0.0;
  VehicleState state;
  Command command;  // command applied to the plant at this step
  double cte = 0.0;
};

struct RunTrace {
  double dt = 0.1;
  std::vector<TraceRow> rows;
  bool aborted = false;    // cross-track error exceeded the divergence limit
  bool completed = false;  // reached the end of the course
};

struct RunOptions {
  VehicleParams vehicle;
  int max_steps = 1500;
  VehicleState initial;
  double divergence_limit = 50.0;  // m
  // Run completes once the projection is this close to the course end.
  double end_tolerance = 1.0;  // m
};

// Initial state on the course start, aligned with the first segment, shifted
// `lateral_offset` metres to the left.
VehicleState StartState(const Course& course, double lateral_offset = 0.0,
                        double speed = 0.0);

// sense -> operator command -> optional transform -> plant step, until the
// course end, divergence, or max_steps. Throws InvalidInputError for
// max_steps < 1. Calls source.Reset() first.
RunTrace RunClosedLoop(CommandSource& source, const Course& course,
                       const RunOptions& options,
                       const CommandTransform& transform = {});

// Root mean square of the recorded cross-track errors. Throws
// InvalidInputError on an empty trace.
double Rmse(const RunTrace& trace);

// Number of strict sign changes of the cross-track error, ignoring samples
// with |cte| below `deadband`.
int CrossTrackSignChanges(const RunTrace& trace, double deadband = 0.05);

// CSV with header t,x,y,heading,speed,steer,throttle,cte; 9 significant
// digits.
void WriteTraceCsv(const RunTrace& trace, std::ostream& out);

}  // namespace apecs::sim

#endif  // APECS_SIM_CLOSED_LOOP_H_
