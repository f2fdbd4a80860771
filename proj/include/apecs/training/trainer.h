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

#ifndef APECS_TRAINING_TRAINER_H_
#define APECS_TRAINING_TRAINER_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "apecs/controller/gates.h"
#include "apecs/loss/loss_weighting.h"
#include "apecs/training/dataset.h"
#include "apecs/training/model.h"

namespace apecs::training {

enum class GammaMode { kZero, kHalf, kOptimal, kFixed };

// "0", "0.5", "optimal", "fixed".
std::string_view GammaModeName(GammaMode mode);
GammaMode ParseGammaMode(std::string_view name);

struct ExperimentPlan {
  ModelKind kind = ModelKind::kApecs;
  GammaMode gamma_mode = GammaMode::kOptimal;
  double fixed_gamma = 1.0;  // used by GammaMode::kFixed
  int epochs = 1000;
  double learning_rate = 1e-3;
  std::uint64_t seed = 1;
  // Upper limit on e^alpha_scale (APECS only).
  double lipschitz_bound = 2.0;
  NetworkShape shape;
  controller::GatePair gate;
  // Pairs sampled for the reported empirical Lipschitz estimate.
  int lipschitz_pairs = 100000;

  // e.g. "APECS_gamma-optimal".
  std::string Name() const;
  // Throws InvalidConfigError on invalid combinations.
  void Validate() const;
};

struct TrainReport {
  ExperimentPlan plan;
  // Entry 0 is the loss of the initial parameters, entry k the loss after k
  // Adam steps.
  std::vector<loss::LossBreakdown> loss_curve;
  double alpha = 0.0;
  double gamma = 0.0;
  // Optimal weighting for alpha clamped to 1.
  double gamma_alpha_clamped = 0.0;
  double lt_init = 0.0;
  bool lt_init_from_formula = false;
  double alpha_scale = 0.0;
  double empirical_lipschitz = 0.0;
  // Filled by closed-loop evaluation; NaN until then.
  double rmse = 0.0;
  bool closed_loop_aborted = false;
  // Training hit a non-finite loss or gradient.
  bool diverged = false;
  int diverged_epoch = -1;
};

struct TrainResult {
  TrainReport report;
  Model model;
};

// Weight for the human loss under `mode`, given the dataset's alpha.
double ResolveGamma(GammaMode mode, double fixed_gamma, double alpha);

// Full-batch Adam on gamma * L_h + (1 - gamma) * L_e. APECS trains
// alpha_scale jointly, capped at ln(lipschitz_bound). Throws
// TrainingDivergedError carrying the epoch on a non-finite loss or gradient.
TrainResult Train(const ExperimentPlan& plan, const Dataset& data);

// Loss of `model` on `data` without gradients.
loss::LossBreakdown EvaluateLoss(const Model& model, const Dataset& data,
                                 double gamma);

}  // namespace apecs::training

#endif  // APECS_TRAINING_TRAINER_H_
