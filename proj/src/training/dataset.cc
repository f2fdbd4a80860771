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

#include "apecs/training/dataset.h"

#include "apecs/common/error.h"
#include "apecs/common/random.h"

namespace apecs::training {

Dataset GenerateDataset(std::size_t n, std::uint64_t seed,
                        const operators::ExpertConfig& expert,
                        const sim::VehicleParams& vehicle) {
  if (n == 0) throw InvalidInputError("dataset size must be at least 1");
  expert.Validate();
  Rng rng(seed);
  Dataset data(n);
  for (Sample& s : data) {
    for (double& f : s.z) f = rng.uniform(-1.0, 1.0);
    s.x_bar = ExpertFromFeatures(s.z, expert, vehicle);
  }
  return data;
}

std::vector<double> HumanCommands(const Dataset& data) {
  std::vector<double> out;
  out.reserve(data.size() * kNumCommands);
  for (const Sample& s : data) {
    out.insert(out.end(), s.z.begin(), s.z.begin() + kNumCommands);
  }
  return out;
}

std::vector<double> ExpertCommands(const Dataset& data) {
  std::vector<double> out;
  out.reserve(data.size() * kNumCommands);
  for (const Sample& s : data) {
    out.insert(out.end(), s.x_bar.begin(), s.x_bar.end());
  }
  return out;
}

}  // namespace apecs::training
