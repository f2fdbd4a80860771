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

#include "apecs/training/model.h"

#include <string>
#include <vector>

#include "apecs/common/error.h"

namespace apecs::training {

std::string_view ModelKindName(ModelKind kind) {
  switch (kind) {
    case ModelKind::kF:
      return "F";
    case ModelKind::kApecs:
      return "APECS";
    case ModelKind::kApecsNl:
      return "APECS-NL";
  }
  return "?";
}

ModelKind ParseModelKind(std::string_view name) {
  for (ModelKind k : {ModelKind::kF, ModelKind::kApecs, ModelKind::kApecsNl}) {
    if (name == ModelKindName(k)) return k;
  }
  throw InvalidConfigError("unknown model kind '" + std::string(name) + "'");
}

Model::Model(ModelKind kind, std::optional<net::Network> plain,
             std::optional<controller::ApecsController> controller)
    : kind_(kind),
      plain_(std::move(plain)),
      controller_(std::move(controller)) {}

Model Model::Create(ModelKind kind, const NetworkShape& shape,
                    const controller::GatePair& gate, double alpha_scale,
                    std::uint64_t seed) {
  if (shape.hidden_layers == 0 || shape.width == 0) {
    throw InvalidConfigError("network needs at least one hidden layer");
  }
  std::vector<std::size_t> widths{kNumFeatures};
  widths.insert(widths.end(), shape.hidden_layers, shape.width);
  widths.push_back(kNumCommands);
  switch (kind) {
    case ModelKind::kF:
      return FromNetwork(net::Network::Glorot(
          widths, net::Activation::kGelu, net::Activation::kIdentity,
          net::ConstraintMode::kUnconstrained, seed));
    case ModelKind::kApecs:
    case ModelKind::kApecsNl: {
      const bool constrained = kind == ModelKind::kApecs;
      net::Network net = net::Network::Glorot(
          widths, net::Activation::kTanh, net::Activation::kIdentity,
          constrained ? net::ConstraintMode::kUnitLipschitz
                      : net::ConstraintMode::kUnconstrained,
          seed);
      controller::ApecsOptions options;
      options.gate = gate;
      options.rescale = constrained;
      return FromController(kind, controller::ApecsController(
                                      std::move(net), kNumCommands,
                                      alpha_scale, options));
    }
  }
  throw InvalidConfigError("unknown model kind");
}

Model Model::FromNetwork(net::Network net) {
  if (net.input_dim() != kNumFeatures || net.output_dim() != kNumCommands) {
    throw ShapeError("F network must map 7 features to 2 commands");
  }
  return Model(ModelKind::kF, std::move(net), std::nullopt);
}

Model Model::FromController(ModelKind kind,
                            controller::ApecsController controller) {
  if (kind == ModelKind::kF) {
    throw InvalidConfigError("F is not a gated model");
  }
  if (controller.input_dim() != kNumFeatures ||
      controller.n_x() != kNumCommands) {
    throw ShapeError("controller must gate 2 commands from 7 features");
  }
  return Model(kind, std::nullopt, std::move(controller));
}

const controller::ApecsController& Model::controller() const {
  if (!controller_) throw InvalidInputError("model has no gate");
  return *controller_;
}

controller::ApecsController& Model::mutable_controller() {
  if (!controller_) throw InvalidInputError("model has no gate");
  return *controller_;
}

const net::Network& Model::network() const {
  return controller_ ? controller_->network() : *plain_;
}

net::Network& Model::mutable_network() {
  return controller_ ? controller_->mutable_network() : *plain_;
}

CommandVector Model::Forward(const Features& z) const {
  const std::vector<double> out =
      controller_ ? controller_->Forward(z) : plain_->Forward(z);
  return {out[0], out[1]};
}

sim::Command Model::Act(const Features& z) const {
  const CommandVector u = Forward(z);
  return sim::Command::Clamped(u[0], u[1]);
}

}  // namespace apecs::training
