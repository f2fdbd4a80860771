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

#ifndef APECS_TRAINING_DATASET_H_
#define APECS_TRAINING_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "apecs/operators/expert.h"
#include "apecs/sim/vehicle.h"
#include "apecs/training/features.h"

namespace apecs::training {

// One training pair. The human command x is z[0..1].
struct Sample {
  Features z{};
  CommandVector x_bar{};
};

using Dataset = std::vector<Sample>;

// `n` samples with every feature uniform in [-1, 1] and the expert command
// evaluated on the decoded situation. Deterministic per seed. Throws
// InvalidInputError for n == 0.
Dataset GenerateDataset(std::size_t n, std::uint64_t seed,
                        const operators::ExpertConfig& expert,
                        const sim::VehicleParams& vehicle);

// Flattened human commands and expert commands, n * kNumCommands each.
std::vector<double> HumanCommands(const Dataset& data);
std::vector<double> ExpertCommands(const Dataset& data);

}  // namespace apecs::training

#endif  // APECS_TRAINING_DATASET_H_
