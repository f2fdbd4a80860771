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

#include "apecs/io/config.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "apecs/common/error.h"

namespace apecs::io {
namespace {

using nlohmann::json;

// Reads the members of one JSON object, rejecting keys it was not asked for.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path)
      : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) {
      throw InvalidConfigError("key '" + Display() + "' must be an object");
    }
  }

  ~ObjectReader() noexcept(false) {
    if (std::uncaught_exceptions() > 0) return;
    for (const auto& [key, value] : obj_.items()) {
      if (!seen_.count(key)) {
        throw InvalidConfigError("unknown key '" + Child(key) + "'");
      }
    }
  }

  bool Has(const std::string& key) {
    seen_.insert(key);
    return obj_.contains(key);
  }

  std::string Child(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  const json& At(const std::string& key) const { return obj_.at(key); }

  void Number(const std::string& key, double& out) {
    if (!Has(key)) return;
    const json& v = obj_.at(key);
    if (!v.is_number()) Fail(key, "a number");
    out = v.get<double>();
    if (!std::isfinite(out)) Fail(key, "finite");
  }

  template <typename Int>
  void Integer(const std::string& key, Int& out) {
    if (!Has(key)) return;
    const json& v = obj_.at(key);
    if (!v.is_number_integer()) Fail(key, "an integer");
    if constexpr (std::is_unsigned_v<Int>) {
      if (v.is_number_unsigned() || v.get<std::int64_t>() >= 0) {
        out = v.get<Int>();
        return;
      }
      Fail(key, "a non-negative integer");
    } else {
      out = v.get<Int>();
    }
  }

  void String(const std::string& key, std::string& out) {
    if (!Has(key)) return;
    const json& v = obj_.at(key);
    if (!v.is_string()) Fail(key, "a string");
    out = v.get<std::string>();
  }

  void NumberList(const std::string& key, std::vector<double>& out) {
    if (!Has(key)) return;
    const json& v = obj_.at(key);
    if (!v.is_array()) Fail(key, "an array of numbers");
    out.clear();
    for (const json& e : v) {
      if (!e.is_number()) Fail(key, "an array of numbers");
      out.push_back(e.get<double>());
    }
  }

  void StringList(const std::string& key, std::vector<std::string>& out) {
    if (!Has(key)) return;
    const json& v = obj_.at(key);
    if (!v.is_array()) Fail(key, "an array of strings");
    out.clear();
    for (const json& e : v) {
      if (!e.is_string()) Fail(key, "an array of strings");
      out.push_back(e.get<std::string>());
    }
  }

  [[noreturn]] void Fail(const std::string& key, const std::string& what) {
    throw InvalidConfigError("key '" + Child(key) + "' must be " + what);
  }

 private:
  std::string Display() const { return path_.empty() ? "<root>" : path_; }

  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

// Rethrows parse errors of enum-like values with the key path attached.
template <typename F>
auto WithKey(const std::string& key, F&& f) {
  try {
    return f();
  } catch (const InvalidConfigError& e) {
    throw InvalidConfigError("key '" + key + "': " + e.what());
  }
}

void ReadVehicle(const json& doc, sim::VehicleParams& v) {
  ObjectReader r(doc, "vehicle");
  r.Number("wheelbase", v.wheelbase);
  r.Number("max_steer", v.max_steer);
  r.Number("max_accel", v.max_accel);
  r.Number("dt", v.dt);
}

void ReadCourse(const json& doc, CourseSpec& c) {
  ObjectReader r(doc, "course");
  r.String("type", c.type);
  if (r.Has("waypoints")) {
    const json& w = r.At("waypoints");
    if (!w.is_array()) r.Fail("waypoints", "an array of [x, y] pairs");
    c.waypoints.clear();
    for (const json& p : w) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() ||
          !p[1].is_number()) {
        r.Fail("waypoints", "an array of [x, y] pairs");
      }
      c.waypoints.push_back({p[0].get<double>(), p[1].get<double>()});
    }
  }
}

void ReadSimulation(const json& doc, SimulationConfig& s) {
  ObjectReader r(doc, "simulation");
  r.Integer("max_steps", s.max_steps);
  r.Number("initial_offset", s.initial_offset);
  r.Number("initial_speed", s.initial_speed);
}

void ReadExpert(const json& doc, operators::ExpertConfig& e) {
  ObjectReader r(doc, "expert");
  r.Number("lookahead_base", e.lookahead_base);
  r.Number("lookahead_gain", e.lookahead_gain);
  r.Number("kp", e.kp);
  r.Number("ki", e.ki);
  r.Number("kd", e.kd);
  r.Number("target_speed", e.target_speed);
  r.Number("integral_limit", e.integral_limit);
}

void ReadNovice(const json& doc, operators::NoviceConfig& n) {
  ObjectReader r(doc, "novice");
  r.NumberList("cte_breakpoints", n.cte_breakpoints);
  r.NumberList("heading_breakpoints", n.heading_breakpoints);
  r.NumberList("rule_steer", n.rule_steer);
  r.Integer("reaction_delay", n.reaction_delay);
  r.Number("gain_excess", n.gain_excess);
  r.Number("speed_gain", n.speed_gain);
  r.Number("target_speed", n.target_speed);
}

void ReadNetwork(const json& doc, training::NetworkShape& s) {
  ObjectReader r(doc, "network");
  r.Integer("hidden_layers", s.hidden_layers);
  r.Integer("width", s.width);
}

void ReadTraining(const json& doc, TrainingConfig& t) {
  ObjectReader r(doc, "training");
  r.Integer("samples", t.samples);
  r.Integer("epochs", t.epochs);
  r.Number("learning_rate", t.learning_rate);
  std::string gate(controller::GateKindName(t.gate.kind));
  r.String("gate", gate);
  t.gate.kind = WithKey("training.gate",
                        [&] { return controller::ParseGateKind(gate); });
  r.Number("gate_b", t.gate.b);
  r.Number("lipschitz_bound", t.lipschitz_bound);
  r.Integer("lipschitz_pairs", t.lipschitz_pairs);
}

void ReadPlans(const json& doc, PlanMatrix& p) {
  ObjectReader r(doc, "plans");
  std::vector<std::string> names;
  if (r.Has("models")) {
    r.StringList("models", names);
    p.models.clear();
    for (const auto& n : names) {
      p.models.push_back(WithKey("plans.models",
                                 [&] { return training::ParseModelKind(n); }));
    }
  }
  if (r.Has("gammas")) {
    r.StringList("gammas", names);
    p.gammas.clear();
    for (const auto& n : names) {
      p.gammas.push_back(WithKey("plans.gammas",
                                 [&] { return training::ParseGammaMode(n); }));
    }
  }
}

void ReadSweep(const json& doc, std::vector<double>& bounds) {
  ObjectReader r(doc, "sweep");
  r.NumberList("bounds", bounds);
}

}  // namespace

sim::Course CourseSpec::Build() const {
  if (type == "benchmark") return sim::BenchmarkCourse();
  if (type == "waypoints") return sim::Course(waypoints);
  throw InvalidConfigError("key 'course.type' must be 'benchmark' or "
                           "'waypoints'");
}

void ExperimentConfig::Validate() const {
  auto fail = [](const std::string& key, const std::string& why) {
    throw InvalidConfigError("key '" + key + "' " + why);
  };
  if (!(vehicle.wheelbase > 0.0)) fail("vehicle.wheelbase", "must be > 0");
  if (!(vehicle.max_steer > 0.0)) fail("vehicle.max_steer", "must be > 0");
  if (!(vehicle.max_accel > 0.0)) fail("vehicle.max_accel", "must be > 0");
  if (!(vehicle.dt > 0.0)) fail("vehicle.dt", "must be > 0");
  if (course.type != "benchmark" && course.type != "waypoints") {
    fail("course.type", "must be 'benchmark' or 'waypoints'");
  }
  if (course.type == "waypoints") {
    try {
      course.Build();
    } catch (const Error& e) {
      fail("course.waypoints", std::string("is invalid: ") + e.what());
    }
  }
  if (simulation.max_steps < 1) fail("simulation.max_steps", "must be >= 1");
  if (simulation.initial_speed < 0.0) {
    fail("simulation.initial_speed", "must be >= 0");
  }
  WithKey("expert", [&] {
    expert.Validate();
    return 0;
  });
  WithKey("novice", [&] {
    novice.Validate();
    return 0;
  });
  if (network.hidden_layers < 1) fail("network.hidden_layers", "must be >= 1");
  if (network.width < 1) fail("network.width", "must be >= 1");
  if (training.samples < 1) fail("training.samples", "must be >= 1");
  if (training.epochs < 0) fail("training.epochs", "must be >= 0");
  if (!(training.learning_rate > 0.0)) {
    fail("training.learning_rate", "must be > 0");
  }
  if (!(training.gate.b > 0.0)) fail("training.gate_b", "must be > 0");
  if (!(training.lipschitz_bound > 0.0)) {
    fail("training.lipschitz_bound", "must be > 0");
  }
  if (training.lipschitz_pairs < 1) {
    fail("training.lipschitz_pairs", "must be >= 1");
  }
  if (plans.models.empty()) fail("plans.models", "must not be empty");
  if (plans.gammas.empty()) fail("plans.gammas", "must not be empty");
  if (sweep_bounds.empty()) fail("sweep.bounds", "must not be empty");
  for (double b : sweep_bounds) {
    if (!(b > 0.0)) fail("sweep.bounds", "must all be > 0");
  }
}

ExperimentConfig ParseConfig(const json& doc) {
  ExperimentConfig cfg;
  {
    ObjectReader r(doc, "");
    r.Integer("seed", cfg.seed);
    r.String("output_dir", cfg.output_dir);
    if (r.Has("vehicle")) ReadVehicle(r.At("vehicle"), cfg.vehicle);
    if (r.Has("course")) ReadCourse(r.At("course"), cfg.course);
    if (r.Has("simulation")) ReadSimulation(r.At("simulation"), cfg.simulation);
    if (r.Has("expert")) ReadExpert(r.At("expert"), cfg.expert);
    if (r.Has("novice")) ReadNovice(r.At("novice"), cfg.novice);
    if (r.Has("network")) ReadNetwork(r.At("network"), cfg.network);
    if (r.Has("training")) ReadTraining(r.At("training"), cfg.training);
    if (r.Has("plans")) ReadPlans(r.At("plans"), cfg.plans);
    if (r.Has("sweep")) ReadSweep(r.At("sweep"), cfg.sweep_bounds);
  }
  cfg.Validate();
  return cfg;
}

ExperimentConfig ParseConfigText(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidConfigError(std::string("config is not valid JSON: ") +
                             e.what());
  }
  return ParseConfig(doc);
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return ParseConfigText(text.str());
}

json ConfigToJson(const ExperimentConfig& cfg) {
  json course = {{"type", cfg.course.type}};
  if (cfg.course.type == "waypoints") {
    json pts = json::array();
    for (const auto& p : cfg.course.waypoints) pts.push_back({p.x, p.y});
    course["waypoints"] = pts;
  }
  json models = json::array();
  for (auto m : cfg.plans.models) models.push_back(training::ModelKindName(m));
  json gammas = json::array();
  for (auto g : cfg.plans.gammas) gammas.push_back(training::GammaModeName(g));
  return json{
      {"seed", cfg.seed},
      {"output_dir", cfg.output_dir},
      {"vehicle",
       {{"wheelbase", cfg.vehicle.wheelbase},
        {"max_steer", cfg.vehicle.max_steer},
        {"max_accel", cfg.vehicle.max_accel},
        {"dt", cfg.vehicle.dt}}},
      {"course", course},
      {"simulation",
       {{"max_steps", cfg.simulation.max_steps},
        {"initial_offset", cfg.simulation.initial_offset},
        {"initial_speed", cfg.simulation.initial_speed}}},
      {"expert",
       {{"lookahead_base", cfg.expert.lookahead_base},
        {"lookahead_gain", cfg.expert.lookahead_gain},
        {"kp", cfg.expert.kp},
        {"ki", cfg.expert.ki},
        {"kd", cfg.expert.kd},
        {"target_speed", cfg.expert.target_speed},
        {"integral_limit", cfg.expert.integral_limit}}},
      {"novice",
       {{"cte_breakpoints", cfg.novice.cte_breakpoints},
        {"heading_breakpoints", cfg.novice.heading_breakpoints},
        {"rule_steer", cfg.novice.rule_steer},
        {"reaction_delay", cfg.novice.reaction_delay},
        {"gain_excess", cfg.novice.gain_excess},
        {"speed_gain", cfg.novice.speed_gain},
        {"target_speed", cfg.novice.target_speed}}},
      {"network",
       {{"hidden_layers", cfg.network.hidden_layers},
        {"width", cfg.network.width}}},
      {"training",
       {{"samples", cfg.training.samples},
        {"epochs", cfg.training.epochs},
        {"learning_rate", cfg.training.learning_rate},
        {"gate", controller::GateKindName(cfg.training.gate.kind)},
        {"gate_b", cfg.training.gate.b},
        {"lipschitz_bound", cfg.training.lipschitz_bound},
        {"lipschitz_pairs", cfg.training.lipschitz_pairs}}},
      {"plans", {{"models", models}, {"gammas", gammas}}},
      {"sweep", {{"bounds", cfg.sweep_bounds}}},
  };
}

}  // namespace apecs::io
