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

#ifndef APECS_NET_CHECKPOINT_H_
#define APECS_NET_CHECKPOINT_H_

#include <string>

#include <nlohmann/json.hpp>

#include "apecs/net/network.h"

namespace apecs::net {

// JSON text of the form
//   {"layers": [{"rows", "cols", "weights" (row-major), "bias",
//                "activation"}...], "constraint_mode", "seed"}
// with every number written to 17 significant digits.
std::string NetworkToJson(const Network& net, int indent = 0);

// Throws LoadError on missing fields or inconsistent shapes.
Network NetworkFromJson(const nlohmann::json& doc);
Network NetworkFromJson(const std::string& text);

}  // namespace apecs::net

#endif  // APECS_NET_CHECKPOINT_H_
