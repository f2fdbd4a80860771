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

#include "apecs/net/adam.h"

#include <cmath>

#include "apecs/common/error.h"

namespace apecs::net {

AdamState AdamState::For(const Network& net) {
  return AdamState{net.ZeroTape(), net.ZeroTape()};
}

void AdamUpdate(std::span<double> params, std::span<const double> grads,
                std::span<double> first_moment,
                std::span<double> second_moment, const AdamOptions& opts,
                std::int64_t t) {
  if (t < 1) throw InvalidInputError("adam step index must be >= 1");
  if (grads.size() != params.size() || first_moment.size() != params.size() ||
      second_moment.size() != params.size()) {
    throw ShapeError("adam buffers are not congruent with parameters");
  }
  for (double g : grads) {
    if (!std::isfinite(g)) throw TrainingDivergedError("non-finite gradient");
  }
  const double c1 = 1.0 - std::pow(opts.beta1, double(t));
  const double c2 = 1.0 - std::pow(opts.beta2, double(t));
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grads[i];
    first_moment[i] = opts.beta1 * first_moment[i] + (1.0 - opts.beta1) * g;
    second_moment[i] =
        opts.beta2 * second_moment[i] + (1.0 - opts.beta2) * g * g;
    const double m_hat = first_moment[i] / c1;
    const double v_hat = second_moment[i] / c2;
    params[i] -= opts.learning_rate * m_hat / (std::sqrt(v_hat) + opts.epsilon);
  }
}

void AdamStep(Network& net, const GradientTape& tape, AdamState& state,
              const AdamOptions& opts, std::int64_t t) {
  auto& layers = net.mutable_layers();
  if (tape.weights.size() != layers.size() ||
      state.first_moment.weights.size() != layers.size()) {
    throw ShapeError("adam state or tape does not match network");
  }
  if (!tape.AllFinite()) throw TrainingDivergedError("non-finite gradient");
  for (std::size_t l = 0; l < layers.size(); ++l) {
    AdamUpdate(layers[l].weights.data, tape.weights[l].data,
               state.first_moment.weights[l].data,
               state.second_moment.weights[l].data, opts, t);
    AdamUpdate(layers[l].bias, tape.biases[l], state.first_moment.biases[l],
               state.second_moment.biases[l], opts, t);
  }
  for (const auto& layer : layers) {
    if (!layer.weights.AllFinite()) {
      throw TrainingDivergedError("non-finite parameter after update");
    }
  }
  net.Refresh();
}

}  // namespace apecs::net
