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

#include "apecs/training/evaluation.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "apecs/common/error.h"
#include "apecs/common/random.h"

namespace apecs::training {

EvalResult EvaluateClosedLoop(sim::CommandSource& source,
                              const ClosedLoopSetup& setup,
                              const Model* model) {
  sim::RunOptions options;
  options.vehicle = setup.vehicle;
  options.max_steps = setup.max_steps;
  options.initial =
      sim::StartState(setup.course, setup.initial_offset, setup.initial_speed);
  sim::CommandTransform transform;
  if (model != nullptr) {
    transform = [model, &setup](const sim::VehicleState& state,
                                const sim::Course& course,
                                const sim::Command& cmd) {
      return model->Act(EncodeFeatures(cmd, state, course, setup.expert));
    };
  }
  EvalResult result;
  result.trace = sim::RunClosedLoop(source, setup.course, options, transform);
  result.diverged = result.trace.aborted;
  result.rmse = sim::Rmse(result.trace);
  result.sign_changes = sim::CrossTrackSignChanges(result.trace);
  return result;
}

EvalResult EvaluateNovice(const ClosedLoopSetup& setup, const Model* model) {
  operators::NoviceOperator novice(setup.novice);
  return EvaluateClosedLoop(novice, setup, model);
}

EvalResult EvaluateExpert(const ClosedLoopSetup& setup) {
  operators::ExpertOperator expert(setup.expert, setup.vehicle);
  return EvaluateClosedLoop(expert, setup);
}

double EmpiricalLipschitz(const CommandMap& f, int n_pairs,
                          std::uint64_t seed) {
  if (n_pairs < 1) throw InvalidInputError("n_pairs must be >= 1");
  Rng rng(seed);
  double best = 0.0;
  for (int k = 0; k < n_pairs; ++k) {
    Features a;
    for (double& v : a) v = rng.uniform(-1.0, 1.0);
    Features b = a;
    for (std::size_t i = 0; i < kNumCommands; ++i) b[i] = rng.uniform(-1.0, 1.0);
    double din = 0.0;
    for (std::size_t i = 0; i < kNumCommands; ++i) {
      din += (a[i] - b[i]) * (a[i] - b[i]);
    }
    if (din == 0.0) continue;
    const CommandVector fa = f(a);
    const CommandVector fb = f(b);
    double dout = 0.0;
    for (std::size_t i = 0; i < kNumCommands; ++i) {
      dout += (fa[i] - fb[i]) * (fa[i] - fb[i]);
    }
    best = std::max(best, std::sqrt(dout / din));
  }
  return best;
}

double EmpiricalLipschitz(const Model& model, int n_pairs, std::uint64_t seed) {
  return EmpiricalLipschitz(
      [&model](const Features& z) { return model.Forward(z); }, n_pairs, seed);
}

std::vector<SweepRow> LipschitzSweep(const std::vector<double>& bounds,
                                     const ExperimentPlan& plan_template,
                                     const Dataset& data,
                                     const ClosedLoopSetup& setup,
                                     int threads) {
  if (bounds.empty()) throw InvalidInputError("sweep needs at least one bound");
  for (double b : bounds) {
    if (!(b > 0.0) || !std::isfinite(b)) {
      throw InvalidInputError("sweep bounds must be positive");
    }
  }
  std::vector<SweepRow> rows(bounds.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < bounds.size(); i = next++) {
      SweepRow& row = rows[i];
      row.bound = bounds[i];
      ExperimentPlan plan = plan_template;
      plan.kind = ModelKind::kApecs;
      plan.lipschitz_bound = bounds[i];
      try {
        const TrainResult trained = Train(plan, data);
        const EvalResult eval = EvaluateNovice(setup, &trained.model);
        row.rmse = eval.rmse;
        row.diverged = eval.diverged;
        row.empirical_lipschitz = trained.report.empirical_lipschitz;
      } catch (const TrainingDivergedError& e) {
        row.rmse = std::numeric_limits<double>::quiet_NaN();
        row.diverged = true;
        row.error = e.what();
      }
    }
  };
  const int n_workers =
      std::clamp(threads, 1, static_cast<int>(bounds.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < n_workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return rows;
}

int ThreadsFromEnvironment() {
  if (const char* env = std::getenv("APECS_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace apecs::training
