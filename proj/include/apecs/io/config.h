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

#ifndef APECS_IO_CONFIG_H_
#define APECS_IO_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "apecs/controller/gates.h"
#include "apecs/operators/expert.h"
#include "apecs/operators/novice.h"
#include "apecs/sim/course.h"
#include "apecs/sim/vehicle.h"
#include "apecs/training/model.h"
#include "apecs/training/trainer.h"

namespace apecs::io {

struct CourseSpec {
  // "benchmark" or "waypoints".
  std::string type = "benchmark";
  std::vector<sim::Point2> waypoints;

  sim::Course Build() const;
};

struct SimulationConfig {
  int max_steps = 1500;
  double initial_offset = 0.0;
  double initial_speed = 0.0;
};

struct TrainingConfig {
  std::size_t samples = 10000;
  int epochs = 1000;
  double learning_rate = 1e-3;
  controller::GatePair gate;
  double lipschitz_bound = 20.0;
  int lipschitz_pairs = 100000;
};

struct PlanMatrix {
  std::vector<training::ModelKind> models = {training::ModelKind::kApecs,
                                             training::ModelKind::kF,
                                             training::ModelKind::kApecsNl};
  std::vector<training::GammaMode> gammas = {training::GammaMode::kZero,
                                             training::GammaMode::kHalf,
                                             training::GammaMode::kOptimal};
};

struct ExperimentConfig {
  std::uint64_t seed = 1;
  std::string output_dir = "out";
  sim::VehicleParams vehicle;
  CourseSpec course;
  SimulationConfig simulation;
  operators::ExpertConfig expert;
  operators::NoviceConfig novice;
  training::NetworkShape network;
  TrainingConfig training;
  PlanMatrix plans;
  std::vector<double> sweep_bounds = {0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0};

  // Throws InvalidConfigError naming the offending key.
  void Validate() const;
};

// Every key is optional and defaults to the values above; unknown keys and
// wrongly typed values raise InvalidConfigError naming the key path, e.g.
// "training.epochs".
ExperimentConfig ParseConfig(const nlohmann::json& doc);
ExperimentConfig ParseConfigText(const std::string& text);
// Throws LoadError when the file cannot be read.
ExperimentConfig LoadConfig(const std::string& path);

// Fully resolved configuration, accepted back by ParseConfig.
nlohmann::json ConfigToJson(const ExperimentConfig& cfg);

}  // namespace apecs::io

#endif  // APECS_IO_CONFIG_H_
