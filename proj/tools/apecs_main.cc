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

// Command-line entry point: gamma, train, eval, sweep.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "apecs/common/error.h"
#include "apecs/common/number_format.h"
#include "apecs/io/config.h"
#include "apecs/io/model_checkpoint.h"
#include "apecs/io/pipeline.h"
#include "apecs/io/report.h"

namespace {

namespace fs = std::filesystem;
using namespace apecs;

constexpr int kExitUsage = 2;
constexpr int kExitError = 1;
constexpr int kExitDiverged = 3;

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
};

void AddCommon(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "Experiment config (JSON)")
      ->required();
  cmd->add_option("--seed", opts.seed, "Override the config seed");
  cmd->add_option("--out", opts.out_dir, "Override the output directory");
}

io::ExperimentConfig ResolveConfig(const CommonOptions& opts) {
  io::ExperimentConfig cfg = io::LoadConfig(opts.config_path);
  if (opts.seed) cfg.seed = *opts.seed;
  if (!opts.out_dir.empty()) cfg.output_dir = opts.out_dir;
  return cfg;
}

void AppendRmseRow(const std::string& path, const io::RmseRow& row) {
  const bool fresh = !fs::exists(path);
  std::ofstream out(path, std::ios::app | std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  if (fresh) out << io::kRmseTableHeader << "\n";
  out << io::RmseTableRow(row) << "\n";
}

int RunGamma(double alpha) {
  std::cout << io::GammaSummary(alpha);
  return 0;
}

int RunTrain(const CommonOptions& common, const std::string& selector) {
  const io::ExperimentConfig cfg = ResolveConfig(common);
  const auto plans = io::SelectPlans(cfg, selector);
  fs::create_directories(cfg.output_dir);
  io::WriteTextFile(cfg.output_dir + "/course.csv",
                    io::CourseCsv(cfg.course.Build()));
  const auto setup = io::MakeSetup(cfg);
  const auto data = io::MakeDataset(cfg);
  bool any_diverged = false;
  for (const auto& plan : plans) {
    const io::TrainedRun run = io::TrainAndEvaluate(plan, data, setup);
    io::WriteRunArtifacts(run, cfg, cfg.output_dir, io::UtcTimestamp());
    const auto& r = run.report;
    if (!run.error.empty()) {
      std::cout << fmt::format("{}: diverged ({})\n", plan.Name(), run.error);
    } else {
      std::cout << fmt::format(
          "{}: gamma {} l_human {} -> {} l_expert {} -> {} rmse_m {}{}\n",
          plan.Name(), FormatFixed(r.gamma, 6),
          FormatFixed(r.loss_curve.front().l_human, 6),
          FormatFixed(r.loss_curve.back().l_human, 6),
          FormatFixed(r.loss_curve.front().l_expert, 6),
          FormatFixed(r.loss_curve.back().l_expert, 6),
          FormatFixed(r.rmse, 6), r.closed_loop_aborted ? " (aborted)" : "");
    }
    any_diverged = any_diverged || r.diverged;
  }
  return any_diverged ? kExitDiverged : 0;
}

int RunEval(const CommonOptions& common, const std::string& checkpoint,
            const std::string& op, bool all) {
  const io::ExperimentConfig cfg = ResolveConfig(common);
  const auto setup = io::MakeSetup(cfg);
  const std::string& dir = cfg.output_dir;
  if (all) {
    std::vector<std::pair<training::ModelKind, training::EvalResult>> models;
    std::vector<std::pair<std::string, training::Model>> loaded;
    for (auto kind : cfg.plans.models) {
      const auto plan = io::MakePlan(cfg, kind, training::GammaMode::kOptimal);
      loaded.emplace_back(plan.Name(),
                          io::LoadModel(io::CheckpointPath(dir, plan)));
    }
    fs::create_directories(dir);
    for (const auto& [name, model] : loaded) {
      auto eval = training::EvaluateNovice(setup, &model);
      std::ofstream trace(dir + "/" + name + ".trace.csv", std::ios::binary);
      sim::WriteTraceCsv(eval.trace, trace);
      models.emplace_back(model.kind(), std::move(eval));
    }
    const auto novice = training::EvaluateNovice(setup);
    {
      std::ofstream trace(dir + "/novice.trace.csv", std::ios::binary);
      sim::WriteTraceCsv(novice.trace, trace);
    }
    const auto rows = io::ComparisonTable(models, novice);
    io::WriteTextFile(dir + "/rmse_table.csv", io::RmseTableCsv(rows));
    std::cout << io::RmseTableCsv(rows);
    return 0;
  }
  std::string name;
  training::EvalResult eval;
  if (!checkpoint.empty()) {
    const training::Model model = io::LoadModel(checkpoint);
    name = fs::path(checkpoint).filename().string();
    if (const auto pos = name.find(".model.json"); pos != std::string::npos) {
      name.resize(pos);
    }
    eval = training::EvaluateNovice(setup, &model);
  } else if (op == "novice") {
    name = "Fuzzy";
    eval = training::EvaluateNovice(setup);
  } else if (op == "expert") {
    name = "Expert";
    eval = training::EvaluateExpert(setup);
  } else {
    throw InvalidInputError("eval needs --checkpoint, --operator or --all");
  }
  fs::create_directories(dir);
  {
    std::ofstream trace(dir + "/" + name + ".trace.csv", std::ios::binary);
    sim::WriteTraceCsv(eval.trace, trace);
  }
  const io::RmseRow row{name, eval.rmse, eval.diverged};
  AppendRmseRow(dir + "/rmse_table.csv", row);
  std::cout << io::RmseTableRow(row) << (eval.diverged ? " (aborted)" : "")
            << "\n";
  return 0;
}

int RunSweepCommand(const CommonOptions& common) {
  const io::ExperimentConfig cfg = ResolveConfig(common);
  const auto data = io::MakeDataset(cfg);
  const auto rows =
      io::RunSweep(cfg, data, training::ThreadsFromEnvironment());
  fs::create_directories(cfg.output_dir);
  io::WriteTextFile(cfg.output_dir + "/lipschitz_sweep.csv",
                    io::SweepCsv(rows));
  std::cout << io::SweepCsv(rows);
  const int best = io::BestSweepRow(rows);
  if (best >= 0) {
    std::cout << fmt::format("best bound {} rmse_m {}\n",
                             FormatSignificant(rows[best].bound, 9),
                             FormatFixed(rows[best].rmse, 6));
  } else {
    std::cout << "best bound none (all runs diverged)\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shared-autonomy gating controller experiments"};
  app.require_subcommand(1);

  double alpha = 0.0;
  auto* gamma = app.add_subcommand("gamma", "Print optimal loss weighting");
  gamma->add_option("alpha", alpha, "Expert opposition bound")->required();

  CommonOptions train_opts;
  std::string selector = "all";
  auto* train = app.add_subcommand("train", "Train the experiment matrix");
  AddCommon(train, train_opts);
  train->add_option("--plan", selector, "'all' or KIND:GAMMA");
  train->add_flag("--all", [&](std::int64_t) { selector = "all"; },
                  "Train every configured plan");

  CommonOptions eval_opts;
  std::string checkpoint;
  std::string op;
  bool eval_all = false;
  auto* eval = app.add_subcommand("eval", "Closed-loop evaluation");
  AddCommon(eval, eval_opts);
  eval->add_option("--checkpoint", checkpoint, "Model checkpoint");
  eval->add_option("--operator", op, "Raw operator: novice or expert")
      ->check(CLI::IsMember({"novice", "expert"}));
  eval->add_flag("--all", eval_all,
                 "Evaluate the optimal-gamma checkpoints and the novice");

  CommonOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "Lipschitz bound sweep");
  AddCommon(sweep, sweep_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (gamma->parsed()) return RunGamma(alpha);
    if (train->parsed()) return RunTrain(train_opts, selector);
    if (eval->parsed()) return RunEval(eval_opts, checkpoint, op, eval_all);
    if (sweep->parsed()) return RunSweepCommand(sweep_opts);
  } catch (const InvalidInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
