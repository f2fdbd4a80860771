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

#include "apecs/operators/novice.h"

#include <algorithm>
#include <cmath>

#include "apecs/common/error.h"
#include "apecs/sim/course.h"

namespace apecs::operators {

void NoviceConfig::Validate() const {
  auto check_sorted = [](const std::vector<double>& b, const char* name) {
    if (b.size() < 2) {
      throw InvalidConfigError(std::string("novice ") + name +
                               " needs at least two breakpoints");
    }
    for (std::size_t i = 1; i < b.size(); ++i) {
      if (!(b[i] > b[i - 1])) {
        throw InvalidConfigError(std::string("novice ") + name +
                                 " must be strictly increasing");
      }
    }
  };
  check_sorted(cte_breakpoints, "cte_breakpoints");
  check_sorted(heading_breakpoints, "heading_breakpoints");
  if (rule_steer.size() != cte_breakpoints.size() * heading_breakpoints.size()) {
    throw InvalidConfigError("novice rule_steer must have one entry per rule");
  }
  if (reaction_delay < 0) {
    throw InvalidConfigError("novice reaction_delay must be >= 0");
  }
  if (!(gain_excess > 1.0)) {
    throw InvalidConfigError("novice gain_excess must exceed 1");
  }
}

std::vector<double> FuzzyMemberships(double v,
                                     std::span<const double> breakpoints) {
  const std::size_t n = breakpoints.size();
  std::vector<double> mu(n, 0.0);
  if (v <= breakpoints.front()) {
    mu.front() = 1.0;
    return mu;
  }
  if (v >= breakpoints.back()) {
    mu.back() = 1.0;
    return mu;
  }
  const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), v);
  const std::size_t hi = std::size_t(it - breakpoints.begin());
  const std::size_t lo = hi - 1;
  const double w = (v - breakpoints[lo]) / (breakpoints[hi] - breakpoints[lo]);
  mu[lo] = 1.0 - w;
  mu[hi] = w;
  return mu;
}

double SugenoSteer(double cte, double heading_error, const NoviceConfig& cfg) {
  const auto mc = FuzzyMemberships(cte, cfg.cte_breakpoints);
  const auto mh = FuzzyMemberships(heading_error, cfg.heading_breakpoints);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < mc.size(); ++i) {
    if (mc[i] == 0.0) continue;
    for (std::size_t j = 0; j < mh.size(); ++j) {
      const double w = mc[i] * mh[j];  // product t-norm
      num += w * cfg.rule_steer[i * mh.size() + j];
      den += w;
    }
  }
  return den > 0.0 ? num / den : 0.0;
}

NoviceOperator::NoviceOperator(NoviceConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.Validate();
}

sim::Command NoviceOperator::Next(const sim::VehicleState& state,
                                  const sim::Course& course) {
  const sim::CourseProjection proj = course.Project({state.x, state.y});
  history_.push_back(Perception{proj.signed_distance,
                                sim::WrapAngle(state.heading - proj.heading),
                                state.speed});
  while (history_.size() > std::size_t(cfg_.reaction_delay) + 1) {
    history_.pop_front();
  }
  const Perception& seen = history_.front();
  const double steer =
      cfg_.gain_excess * SugenoSteer(seen.cte, seen.heading_error, cfg_);
  const double throttle = cfg_.speed_gain * (cfg_.target_speed - seen.speed);
  return sim::Command::Clamped(steer, throttle);
}

}  // namespace apecs::operators
