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

#ifndef APECS_IO_REPORT_H_
#define APECS_IO_REPORT_H_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "apecs/sim/course.h"
#include "apecs/training/evaluation.h"
#include "apecs/training/trainer.h"

namespace apecs::io {

// `epoch,l_human,l_expert,l_total`, one row per loss curve entry.
std::string LossCurveCsv(const training::TrainReport& report);

// Report document. `generated_at` is the only time-dependent field; pass an
// empty string to omit it.
nlohmann::json TrainReportJson(const training::TrainReport& report,
                               const nlohmann::json& config,
                               const std::string& generated_at);

struct RmseRow {
  std::string model;
  double rmse_m = 0.0;
  bool diverged = false;
};

// `model,rmse_m` with a header line.
std::string RmseTableCsv(const std::vector<RmseRow>& rows);
std::string RmseTableRow(const RmseRow& row);
inline constexpr const char* kRmseTableHeader = "model,rmse_m";

// `bound,rmse_m,diverged`.
std::string SweepCsv(const std::vector<training::SweepRow>& rows);

// `x,y` per waypoint.
std::string CourseCsv(const sim::Course& course);

// UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string UtcTimestamp();

}  // namespace apecs::io

#endif  // APECS_IO_REPORT_H_
