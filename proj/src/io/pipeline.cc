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

#include "apecs/io/pipeline.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <fmt/format.h>

#include "apecs/common/error.h"
#include "apecs/common/number_format.h"
#include "apecs/io/model_checkpoint.h"
#include "apecs/loss/loss_weighting.h"

namespace apecs::io {

training::ClosedLoopSetup MakeSetup(const ExperimentConfig& cfg) {
  training::ClosedLoopSetup setup;
  setup.course = cfg.course.Build();
  setup.vehicle = cfg.vehicle;
  setup.expert = cfg.expert;
  setup.novice = cfg.novice;
  setup.max_steps = cfg.simulation.max_steps;
  setup.initial_offset = cfg.simulation.initial_offset;
  setup.initial_speed = cfg.simulation.initial_speed;
  return setup;
}

training::Dataset MakeDataset(const ExperimentConfig& cfg) {
  return training::GenerateDataset(cfg.training.samples, cfg.seed, cfg.expert,
                                   cfg.vehicle);
}

training::ExperimentPlan MakePlan(const ExperimentConfig& cfg,
                                  training::ModelKind kind,
                                  training::GammaMode gamma) {
  training::ExperimentPlan plan;
  plan.kind = kind;
  plan.gamma_mode = gamma;
  plan.epochs = cfg.training.epochs;
  plan.learning_rate = cfg.training.learning_rate;
  plan.seed = cfg.seed;
  plan.lipschitz_bound = cfg.training.lipschitz_bound;
  plan.shape = cfg.network;
  plan.gate = cfg.training.gate;
  plan.lipschitz_pairs = cfg.training.lipschitz_pairs;
  return plan;
}

std::vector<training::ExperimentPlan> SelectPlans(const ExperimentConfig& cfg,
                                                  const std::string& selector) {
  std::vector<training::ExperimentPlan> plans;
  if (selector == "all") {
    for (auto kind : cfg.plans.models) {
      for (auto gamma : cfg.plans.gammas) {
        plans.push_back(MakePlan(cfg, kind, gamma));
      }
    }
    return plans;
  }
  const auto colon = selector.find(':');
  if (colon == std::string::npos) {
    throw InvalidConfigError("plan selector must be 'all' or KIND:GAMMA, got '" +
                             selector + "'");
  }
  plans.push_back(
      MakePlan(cfg, training::ParseModelKind(selector.substr(0, colon)),
               training::ParseGammaMode(selector.substr(colon + 1))));
  return plans;
}

std::string GammaSummary(double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw InvalidInputError("alpha must be a finite value >= 0");
  }
  auto block = [](const std::string& label, double a) {
    const double gamma = loss::OptimalGamma(a);
    const bool ok = loss::GammaConditions(a, gamma);
    const bool formula = loss::InitLipschitzUsesFormula(a, gamma);
    return fmt::format(
        "{}alpha: {}\n{}gamma: {}\n{}conditions: {}\n{}lt_init: {} ({})\n",
        label, FormatFixed(a, 6), label, FormatFixed(gamma, 6), label,
        ok ? "true" : "false", label,
        FormatFixed(loss::InitLipschitz(a, gamma), 6),
        formula ? "formula" : "fallback");
  };
  return block("", alpha) + block("clamped_", std::min(alpha, 1.0));
}

TrainedRun TrainAndEvaluate(const training::ExperimentPlan& plan,
                            const training::Dataset& data,
                            const training::ClosedLoopSetup& setup) {
  TrainedRun run;
  try {
    training::TrainResult trained = training::Train(plan, data);
    run.report = std::move(trained.report);
    const training::EvalResult eval =
        training::EvaluateNovice(setup, &trained.model);
    run.report.rmse = eval.rmse;
    run.report.closed_loop_aborted = eval.diverged;
    run.model = std::move(trained.model);
  } catch (const TrainingDivergedError& e) {
    run.report.plan = plan;
    run.report.diverged = true;
    run.report.diverged_epoch = e.epoch();
    run.report.rmse = std::numeric_limits<double>::quiet_NaN();
    run.error = fmt::format("{} at epoch {}", e.what(), e.epoch());
  }
  return run;
}

std::string ReportPath(const std::string& out_dir,
                       const training::ExperimentPlan& plan) {
  return out_dir + "/" + plan.Name() + ".report.json";
}

std::string LossCsvPath(const std::string& out_dir,
                        const training::ExperimentPlan& plan) {
  return out_dir + "/" + plan.Name() + ".loss.csv";
}

std::string CheckpointPath(const std::string& out_dir,
                           const training::ExperimentPlan& plan) {
  return out_dir + "/" + plan.Name() + ".model.json";
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

void WriteRunArtifacts(const TrainedRun& run, const ExperimentConfig& cfg,
                       const std::string& out_dir,
                       const std::string& generated_at) {
  auto doc = TrainReportJson(run.report, ConfigToJson(cfg), generated_at);
  if (!run.error.empty()) doc["error"] = run.error;
  WriteTextFile(ReportPath(out_dir, run.report.plan), doc.dump(2) + "\n");
  WriteTextFile(LossCsvPath(out_dir, run.report.plan),
                LossCurveCsv(run.report));
  if (run.model) {
    SaveModel(*run.model, CheckpointPath(out_dir, run.report.plan));
  }
}

std::vector<RmseRow> ComparisonTable(
    const std::vector<std::pair<training::ModelKind, training::EvalResult>>&
        models,
    const training::EvalResult& novice) {
  std::vector<RmseRow> rows;
  for (const auto& [kind, eval] : models) {
    rows.push_back({std::string(training::ModelKindName(kind)), eval.rmse,
                    eval.diverged});
  }
  rows.push_back({"Fuzzy", novice.rmse, novice.diverged});
  std::stable_sort(rows.begin(), rows.end(),
                   [](const RmseRow& a, const RmseRow& b) {
                     return a.rmse_m < b.rmse_m;
                   });
  return rows;
}

std::vector<training::SweepRow> RunSweep(const ExperimentConfig& cfg,
                                         const training::Dataset& data,
                                         int threads) {
  const auto plan = MakePlan(cfg, training::ModelKind::kApecs,
                             training::GammaMode::kOptimal);
  return training::LipschitzSweep(cfg.sweep_bounds, plan, data, MakeSetup(cfg),
                                  threads);
}

int BestSweepRow(const std::vector<training::SweepRow>& rows) {
  int best = -1;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].diverged || !std::isfinite(rows[i].rmse)) continue;
    if (best < 0 || rows[i].rmse < rows[std::size_t(best)].rmse) {
      best = int(i);
    }
  }
  return best;
}

PipelineResult RunPipeline(const ExperimentConfig& cfg, int threads) {
  PipelineResult result;
  const auto setup = MakeSetup(cfg);
  const auto data = MakeDataset(cfg);
  result.novice = training::EvaluateNovice(setup);
  result.expert = training::EvaluateExpert(setup);
  std::vector<std::pair<training::ModelKind, training::EvalResult>> table;
  for (const auto& plan : SelectPlans(cfg, "all")) {
    TrainedRun run = TrainAndEvaluate(plan, data, setup);
    if (plan.gamma_mode == training::GammaMode::kOptimal) {
      training::EvalResult eval;
      if (run.model) {
        eval = training::EvaluateNovice(setup, &*run.model);
      } else {
        eval.rmse = std::numeric_limits<double>::quiet_NaN();
        eval.diverged = true;
      }
      table.emplace_back(plan.kind, std::move(eval));
    }
    result.runs.push_back(std::move(run));
  }
  result.table = ComparisonTable(table, result.novice);
  result.sweep = RunSweep(cfg, data, threads);
  return result;
}

}  // namespace apecs::io
