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

#include "apecs/io/report.h"

#include <cmath>
#include <ctime>

#include <fmt/format.h>

#include "apecs/common/number_format.h"

namespace apecs::io {

using nlohmann::json;

std::string LossCurveCsv(const training::TrainReport& report) {
  std::string out = "epoch,l_human,l_expert,l_total\n";
  for (std::size_t e = 0; e < report.loss_curve.size(); ++e) {
    const auto& l = report.loss_curve[e];
    out += fmt::format("{},{},{},{}\n", e, FormatExact(l.l_human),
                       FormatExact(l.l_expert), FormatExact(l.l_total));
  }
  return out;
}

json TrainReportJson(const training::TrainReport& report, const json& config,
                     const std::string& generated_at) {
  const auto& plan = report.plan;
  json curve = {{"l_human", json::array()},
                {"l_expert", json::array()},
                {"l_total", json::array()}};
  for (const auto& l : report.loss_curve) {
    curve["l_human"].push_back(l.l_human);
    curve["l_expert"].push_back(l.l_expert);
    curve["l_total"].push_back(l.l_total);
  }
  json doc = {
      {"name", plan.Name()},
      {"model", training::ModelKindName(plan.kind)},
      {"gamma_mode", training::GammaModeName(plan.gamma_mode)},
      {"gamma", report.gamma},
      {"alpha", report.alpha},
      {"gamma_alpha_clamped", report.gamma_alpha_clamped},
      {"lt_init", report.lt_init},
      {"lt_init_from_formula", report.lt_init_from_formula},
      {"epochs", plan.epochs},
      {"learning_rate", plan.learning_rate},
      {"seed", plan.seed},
      {"diverged", report.diverged},
      {"diverged_epoch", report.diverged_epoch},
      {"closed_loop_aborted", report.closed_loop_aborted},
      {"loss_curve", curve},
  };
  if (plan.kind == training::ModelKind::kApecs) {
    doc["lipschitz_bound"] = plan.lipschitz_bound;
    doc["alpha_scale"] = report.alpha_scale;
    doc["lipschitz_target"] = std::exp(report.alpha_scale);
  }
  doc["empirical_lipschitz"] = report.empirical_lipschitz;
  doc["rmse_m"] = report.rmse;
  if (!report.loss_curve.empty()) {
    const auto& first = report.loss_curve.front();
    const auto& last = report.loss_curve.back();
    doc["initial_loss"] = {{"l_human", first.l_human},
                           {"l_expert", first.l_expert},
                           {"l_total", first.l_total}};
    doc["final_loss"] = {{"l_human", last.l_human},
                         {"l_expert", last.l_expert},
                         {"l_total", last.l_total}};
  }
  doc["config"] = config;
  if (!generated_at.empty()) doc["generated_at"] = generated_at;
  return doc;
}

std::string RmseTableRow(const RmseRow& row) {
  return row.model + "," + FormatExact(row.rmse_m);
}

std::string RmseTableCsv(const std::vector<RmseRow>& rows) {
  std::string out = std::string(kRmseTableHeader) + "\n";
  for (const auto& r : rows) out += RmseTableRow(r) + "\n";
  return out;
}

std::string SweepCsv(const std::vector<training::SweepRow>& rows) {
  std::string out = "bound,rmse_m,diverged\n";
  for (const auto& r : rows) {
    out += FormatExact(r.bound) + "," + FormatExact(r.rmse) + "," +
           (r.diverged ? "1" : "0") + "\n";
  }
  return out;
}

std::string CourseCsv(const sim::Course& course) {
  std::string out = "x,y\n";
  for (const auto& p : course.waypoints()) {
    out += FormatSignificant(p.x, 9) + "," + FormatSignificant(p.y, 9) + "\n";
  }
  return out;
}

std::string UtcTimestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace apecs::io
