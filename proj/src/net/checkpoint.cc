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

#include "apecs/net/checkpoint.h"

#include <string>

#include "apecs/common/error.h"
#include "apecs/common/number_format.h"

namespace apecs::net {
namespace {

std::string NumberArray(const std::vector<double>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += FormatExact(values[i]);
  }
  out += "]";
  return out;
}

}  // namespace

std::string NetworkToJson(const Network& net, int indent) {
  const std::string pad(indent, ' ');
  std::string out = "{\n";
  out += pad + "  \"layers\": [\n";
  const auto& layers = net.layers();
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& layer = layers[l];
    out += pad + "    {\"rows\": " + std::to_string(layer.out_dim()) +
           ", \"cols\": " + std::to_string(layer.in_dim()) +
           ", \"activation\": \"" +
           std::string(ActivationName(layer.activation)) + "\",\n";
    out += pad + "     \"weights\": " + NumberArray(layer.weights.data) + ",\n";
    out += pad + "     \"bias\": " + NumberArray(layer.bias) + "}";
    out += (l + 1 < layers.size()) ? ",\n" : "\n";
  }
  out += pad + "  ],\n";
  out += pad + "  \"constraint_mode\": \"" +
         std::string(ConstraintModeName(net.mode())) + "\",\n";
  out += pad + "  \"seed\": " + std::to_string(net.seed()) + "\n";
  out += pad + "}";
  return out;
}

Network NetworkFromJson(const nlohmann::json& doc) {
  try {
    std::vector<DenseLayer> layers;
    for (const auto& jl : doc.at("layers")) {
      const auto rows = jl.at("rows").get<std::size_t>();
      const auto cols = jl.at("cols").get<std::size_t>();
      auto weights = jl.at("weights").get<std::vector<double>>();
      if (weights.size() != rows * cols) {
        throw LoadError("checkpoint layer weights do not match rows*cols");
      }
      DenseLayer layer;
      layer.weights = Matrix(rows, cols, std::move(weights));
      layer.bias = jl.at("bias").get<std::vector<double>>();
      layer.activation =
          ParseActivation(jl.at("activation").get<std::string>());
      layers.push_back(std::move(layer));
    }
    const auto mode =
        ParseConstraintMode(doc.at("constraint_mode").get<std::string>());
    const auto seed = doc.value("seed", std::uint64_t{0});
    return Network(std::move(layers), mode, seed);
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(std::string("malformed network checkpoint: ") + e.what());
  } catch (const LoadError&) {
    throw;
  } catch (const Error& e) {
    throw LoadError(std::string("invalid network checkpoint: ") + e.what());
  }
}

Network NetworkFromJson(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(std::string("checkpoint is not valid JSON: ") + e.what());
  }
  return NetworkFromJson(doc);
}

}  // namespace apecs::net
