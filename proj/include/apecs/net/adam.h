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

#ifndef APECS_NET_ADAM_H_
#define APECS_NET_ADAM_H_

#include <cstdint>
#include <span>

#include "apecs/net/network.h"

namespace apecs::net {

struct AdamOptions {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// First and second moment buffers for a Network.
struct AdamState {
  GradientTape first_moment;
  GradientTape second_moment;

  static AdamState For(const Network& net);
};

// In-place Adam update of a flat parameter block at step `t` (1-based).
// Throws TrainingDivergedError if any gradient is non-finite.
void AdamUpdate(std::span<double> params, std::span<const double> grads,
                std::span<double> first_moment,
                std::span<double> second_moment, const AdamOptions& opts,
                std::int64_t t);

// Adam step over every network parameter, followed by Network::Refresh().
void AdamStep(Network& net, const GradientTape& tape, AdamState& state,
              const AdamOptions& opts, std::int64_t t);

}  // namespace apecs::net

#endif  // APECS_NET_ADAM_H_
