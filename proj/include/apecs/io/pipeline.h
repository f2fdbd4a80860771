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

#ifndef APECS_IO_PIPELINE_H_
#define APECS_IO_PIPELINE_H_

#include <optional>
#include <string>
#include <vector>

#include "apecs/io/config.h"
#include "apecs/io/report.h"
#include "apecs/training/dataset.h"
#include "apecs/training/evaluation.h"
#include "apecs/training/trainer.h"

namespace apecs::io {

training::ClosedLoopSetup MakeSetup(const ExperimentConfig& cfg);
training::Dataset MakeDataset(const ExperimentConfig& cfg);
training::ExperimentPlan MakePlan(const ExperimentConfig& cfg,
                                  training::ModelKind kind,
                                  training::GammaMode gamma);

// "all" selects the configured matrix; otherwise "KIND:GAMMA", e.g.
// "APECS:optimal" or "F:0.5". Throws InvalidConfigError for bad selectors.
std::vector<training::ExperimentPlan> SelectPlans(const ExperimentConfig& cfg,
                                                  const std::string& selector);

// alpha, optimal gamma, the condition verdict and the initial Lipschitz
// target, plus the same for alpha clamped to 1; six decimals each.
// Throws InvalidInputError for negative or non-finite alpha.
std::string GammaSummary(double alpha);

struct TrainedRun {
  training::TrainReport report;
  std::optional<training::Model> model;  // empty when training diverged
  std::string error;
};

// Trains, then evaluates the novice gated by the trained model. A
// divergence is recorded in the report instead of thrown.
TrainedRun TrainAndEvaluate(const training::ExperimentPlan& plan,
                            const training::Dataset& data,
                            const training::ClosedLoopSetup& setup);

// <name>.report.json, <name>.loss.csv and, when trained, <name>.model.json.
void WriteRunArtifacts(const TrainedRun& run, const ExperimentConfig& cfg,
                       const std::string& out_dir,
                       const std::string& generated_at);

std::string ReportPath(const std::string& out_dir,
                       const training::ExperimentPlan& plan);
std::string LossCsvPath(const std::string& out_dir,
                        const training::ExperimentPlan& plan);
std::string CheckpointPath(const std::string& out_dir,
                           const training::ExperimentPlan& plan);

// Table rows for the optimal-gamma model of each configured kind plus the
// raw novice ("Fuzzy"), sorted by ascending RMSE.
std::vector<RmseRow> ComparisonTable(
    const std::vector<std::pair<training::ModelKind, training::EvalResult>>&
        models,
    const training::EvalResult& novice);

// Sweep over cfg.sweep_bounds with the optimal-gamma APECS plan.
std::vector<training::SweepRow> RunSweep(const ExperimentConfig& cfg,
                                         const training::Dataset& data,
                                         int threads);

// Index of the lowest finite RMSE, or -1.
int BestSweepRow(const std::vector<training::SweepRow>& rows);

struct PipelineResult {
  std::vector<TrainedRun> runs;
  training::EvalResult novice;
  training::EvalResult expert;
  std::vector<RmseRow> table;
  std::vector<training::SweepRow> sweep;
};

// Train the whole matrix, evaluate the comparison table and run the sweep,
// all in memory.
PipelineResult RunPipeline(const ExperimentConfig& cfg, int threads);

void WriteTextFile(const std::string& path, const std::string& text);

}  // namespace apecs::io

#endif  // APECS_IO_PIPELINE_H_
