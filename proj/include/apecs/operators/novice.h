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

#ifndef APECS_OPERATORS_NOVICE_H_
#define APECS_OPERATORS_NOVICE_H_

#include <deque>
#include <span>
#include <vector>

#include "apecs/sim/closed_loop.h"

namespace apecs::operators {

// Zero-order Sugeno steering controller over (cross-track error, heading
// error), deliberately over-gained and delayed so that it tracks with
// sustained oscillation.
struct NoviceConfig {
  // Sorted centres of the fuzzy sets. The outer sets are shoulders, inner
  // ones triangles, so memberships partition the whole real line.
  std::vector<double> cte_breakpoints = {-2.0, 0.0, 2.0};          // m
  std::vector<double> heading_breakpoints = {-0.5, 0.0, 0.5};      // rad
  // Row-major consequents, rows indexed by cte set, columns by heading set.
  std::vector<double> rule_steer = {
      0.9, 0.5, 0.1,    //
      0.4, 0.0, -0.4,   //
      -0.1, -0.5, -0.9};
  int reaction_delay = 4;     // steps
  double gain_excess = 1.6;   // output gain, > 1
  double speed_gain = 0.5;    // proportional throttle on speed error
  double target_speed = 5.0;  // m/s

  // Throws InvalidConfigError on unsorted breakpoints, a rule table of the
  // wrong size, a negative delay or gain_excess <= 1.
  void Validate() const;
};

// Memberships of `v` in the fuzzy sets centred at `breakpoints`; they sum
// to 1.
std::vector<double> FuzzyMemberships(double v, std::span<const double> breakpoints);

// Weighted-average defuzzified steer before the excess gain.
double SugenoSteer(double cte, double heading_error, const NoviceConfig& cfg);

class NoviceOperator : public sim::CommandSource {
 public:
  explicit NoviceOperator(NoviceConfig cfg);

  void Reset() override { history_.clear(); }
  // Observes the current errors, then acts on the ones perceived
  // reaction_delay steps ago (the oldest available while the buffer fills).
  sim::Command Next(const sim::VehicleState& state,
                    const sim::Course& course) override;

  const NoviceConfig& config() const { return cfg_; }

 private:
  struct Perception {
    double cte;
    double heading_error;
    double speed;
  };

  NoviceConfig cfg_;
  std::deque<Perception> history_;
};

}  // namespace apecs::operators

#endif  // APECS_OPERATORS_NOVICE_H_
