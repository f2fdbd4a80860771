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

#include "apecs/io/model_checkpoint.h"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "apecs/common/error.h"
#include "apecs/common/number_format.h"
#include "apecs/net/checkpoint.h"

namespace apecs::io {

std::string ModelToJson(const training::Model& model) {
  std::string out = "{\n";
  out += "  \"kind\": \"" + std::string(training::ModelKindName(model.kind())) +
         "\",\n";
  if (model.is_gated()) {
    const auto& ctrl = model.controller();
    const auto& opt = ctrl.options();
    out += "  \"gate\": {\"kind\": \"" +
           std::string(controller::GateKindName(opt.gate.kind)) +
           "\", \"b\": " + FormatExact(opt.gate.b) + "},\n";
    out += "  \"alpha_scale\": " + FormatExact(ctrl.alpha_scale()) + ",\n";
    out += "  \"c\": " + FormatExact(opt.c) + ",\n";
    out += "  \"input_radius\": " + FormatExact(opt.input_radius) + ",\n";
    out += std::string("  \"rescale\": ") + (opt.rescale ? "true" : "false") +
           ",\n";
  }
  out += "  \"network\": " + net::NetworkToJson(model.network(), 2) + "\n";
  out += "}\n";
  return out;
}

training::Model ModelFromJson(const std::string& text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    const auto kind =
        training::ParseModelKind(doc.at("kind").get<std::string>());
    net::Network network = net::NetworkFromJson(doc.at("network"));
    if (kind == training::ModelKind::kF) {
      return training::Model::FromNetwork(std::move(network));
    }
    controller::ApecsOptions opt;
    const auto& gate = doc.at("gate");
    opt.gate.kind =
        controller::ParseGateKind(gate.at("kind").get<std::string>());
    opt.gate.b = gate.at("b").get<double>();
    opt.c = doc.at("c").get<double>();
    opt.input_radius = doc.at("input_radius").get<double>();
    opt.rescale = doc.at("rescale").get<bool>();
    controller::ApecsController ctrl(std::move(network),
                                     training::kNumCommands,
                                     doc.at("alpha_scale").get<double>(), opt);
    return training::Model::FromController(kind, std::move(ctrl));
  } catch (const LoadError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(std::string("malformed model checkpoint: ") + e.what());
  } catch (const Error& e) {
    throw LoadError(std::string("invalid model checkpoint: ") + e.what());
  }
}

void SaveModel(const training::Model& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << ModelToJson(model);
}

training::Model LoadModel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open checkpoint '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return ModelFromJson(text.str());
}

}  // namespace apecs::io
