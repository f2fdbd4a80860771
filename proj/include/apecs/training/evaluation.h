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

#ifndef APECS_TRAINING_EVALUATION_H_
#define APECS_TRAINING_EVALUATION_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "apecs/operators/expert.h"
#include "apecs/operators/novice.h"
#include "apecs/sim/closed_loop.h"
#include "apecs/training/dataset.h"
#include "apecs/training/model.h"
#include "apecs/training/trainer.h"

namespace apecs::training {

struct ClosedLoopSetup {
  sim::Course course = sim::BenchmarkCourse();
  sim::VehicleParams vehicle;
  operators::ExpertConfig expert;
  operators::NoviceConfig novice;
  int max_steps = 1500;
  double initial_offset = 0.0;  // m, left of the course start
  double initial_speed = 0.0;   // m/s
};

struct EvalResult {
  sim::RunTrace trace;
  double rmse = 0.0;
  bool diverged = false;
  int sign_changes = 0;
};

// Runs `source` on the setup's course. With a model, the source's command
// is replaced by the model's output for the current features.
EvalResult EvaluateClosedLoop(sim::CommandSource& source,
                              const ClosedLoopSetup& setup,
                              const Model* model = nullptr);

// Novice in the loop, gated by `model` when given.
EvalResult EvaluateNovice(const ClosedLoopSetup& setup,
                          const Model* model = nullptr);
EvalResult EvaluateExpert(const ClosedLoopSetup& setup);

// Maps a feature vector to a command pair.
using CommandMap = std::function<CommandVector(const Features&)>;

// max ||f(x1) - f(x2)|| / ||x1 - x2|| over `n_pairs` draws of x1, x2 in
// [-1, 1]^2 sharing random remaining features in [-1, 1]^5.
double EmpiricalLipschitz(const CommandMap& f, int n_pairs,
                          std::uint64_t seed);
double EmpiricalLipschitz(const Model& model, int n_pairs, std::uint64_t seed);

struct SweepRow {
  double bound = 0.0;
  double rmse = 0.0;  // NaN when diverged
  bool diverged = false;
  double empirical_lipschitz = 0.0;
  std::string error;
};

// Trains and evaluates one APECS model per bound from `plan_template`.
// Runs use up to `threads` workers; rows keep the order of `bounds`.
std::vector<SweepRow> LipschitzSweep(const std::vector<double>& bounds,
                                     const ExperimentPlan& plan_template,
                                     const Dataset& data,
                                     const ClosedLoopSetup& setup,
                                     int threads = 1);

// APECS_THREADS when set to a positive integer, otherwise the hardware
// concurrency (at least 1).
int ThreadsFromEnvironment();

}  // namespace apecs::training

#endif  // APECS_TRAINING_EVALUATION_H_
