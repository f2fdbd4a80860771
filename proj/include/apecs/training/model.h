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

#ifndef APECS_TRAINING_MODEL_H_
#define APECS_TRAINING_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "apecs/controller/apecs_controller.h"
#include "apecs/net/network.h"
#include "apecs/training/features.h"

namespace apecs::training {

// F: plain GeLU network mapping z to a command.
// APECS: gated controller on a unit-Lipschitz tanh network, rescaled to
//   e^alpha_scale.
// APECS-NL: the same gate on an unconstrained tanh network without the
//   rescale.
enum class ModelKind { kF, kApecs, kApecsNl };

std::string_view ModelKindName(ModelKind kind);
// Accepts "F", "APECS", "APECS-NL". Throws InvalidConfigError otherwise.
ModelKind ParseModelKind(std::string_view name);

struct NetworkShape {
  std::size_t hidden_layers = 5;
  std::size_t width = 9;
};

class Model {
 public:
  // Freshly initialized model of the given kind. `alpha_scale` is ignored
  // except for APECS.
  static Model Create(ModelKind kind, const NetworkShape& shape,
                      const controller::GatePair& gate, double alpha_scale,
                      std::uint64_t seed);
  static Model FromNetwork(net::Network net);
  static Model FromController(ModelKind kind,
                              controller::ApecsController controller);

  ModelKind kind() const { return kind_; }
  bool is_gated() const { return controller_.has_value(); }

  // Requires is_gated().
  const controller::ApecsController& controller() const;
  controller::ApecsController& mutable_controller();
  // The gate network for gated models, the whole model for F.
  const net::Network& network() const;
  net::Network& mutable_network();

  // Raw model output. For F this may leave [-1, 1].
  CommandVector Forward(const Features& z) const;
  // Output clamped to the command range.
  sim::Command Act(const Features& z) const;

 private:
  Model(ModelKind kind, std::optional<net::Network> plain,
        std::optional<controller::ApecsController> controller);

  ModelKind kind_;
  std::optional<net::Network> plain_;
  std::optional<controller::ApecsController> controller_;
};

}  // namespace apecs::training

#endif  // APECS_TRAINING_MODEL_H_
