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

#ifndef APECS_IO_MODEL_CHECKPOINT_H_
#define APECS_IO_MODEL_CHECKPOINT_H_

#include <string>

#include "apecs/training/model.h"

namespace apecs::io {

// {"kind", "gate": {"kind", "b"}, "alpha_scale", "c", "input_radius",
//  "rescale", "network": {...}} with 17 significant digits throughout.
// Gate fields are omitted for F.
std::string ModelToJson(const training::Model& model);

// Throws LoadError on malformed documents or shape mismatches.
training::Model ModelFromJson(const std::string& text);

void SaveModel(const training::Model& model, const std::string& path);
training::Model LoadModel(const std::string& path);

}  // namespace apecs::io

#endif  // APECS_IO_MODEL_CHECKPOINT_H_
