// Copyright 2026 The cdcg Authors
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

#include "cdcg/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"

#include "cdcg/errors.hpp"

namespace cdcg {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ValidationError(path + ": " + msg);
}

void reject_unknown(const json& obj, const std::string& path, const std::set<std::string>& known) {
  for (const auto& [key, value] : obj.items()) {
    if (!known.count(key)) fail(path.empty() ? key : path + "." + key, "unknown field");
  }
}

const json* member(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double get_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

long long get_integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<long long>();
}

std::array<double, 3> get_vec3(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 3) fail(path, "expected an array of 3 numbers");
  std::array<double, 3> out{};
  for (std::size_t i = 0; i < 3; ++i) out[i] = get_number(v[i], path + "[" + std::to_string(i) + "]");
  return out;
}

void parse_bath(const json& j, SpinBathSpec& bath) {
  if (!j.is_object()) fail("bath", "expected an object");
  reject_unknown(j, "bath", {"n_bath", "j_max", "b_max", "seed", "h_drift"});
  if (auto* v = member(j, "n_bath")) bath.n_bath = static_cast<int>(get_integer(*v, "bath.n_bath"));
  if (auto* v = member(j, "j_max")) bath.j_max = get_number(*v, "bath.j_max");
  if (auto* v = member(j, "b_max")) bath.b_max = get_number(*v, "bath.b_max");
  if (auto* v = member(j, "seed")) {
    if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<long long>() >= 0)) {
      fail("bath.seed", "expected a nonnegative integer");
    }
    bath.seed = v->get<std::uint64_t>();
  }
  if (auto* v = member(j, "h_drift")) bath.h_drift = get_vec3(*v, "bath.h_drift");
}

GateSpec parse_gate(const json& j) {
  if (!j.is_object()) fail("gate", "expected an object");
  reject_unknown(j, "gate", {"axis", "angle"});
  const GateSpec def = SweepConfig::default_gate();
  std::array<double, 3> axis = def.axis();
  double angle = def.angle();
  if (auto* v = member(j, "axis")) axis = get_vec3(*v, "gate.axis");
  if (auto* v = member(j, "angle")) angle = get_number(*v, "gate.angle");
  const double n = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (std::abs(n - 1.0) > 1e-12) fail("gate.axis", "must be a unit vector");
  return GateSpec(axis, angle);
}

}  // namespace

std::vector<double> TauGrid::log10_values() const {
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(std::max(points, 0)));
  for (int k = 0; k < points; ++k) {
    xs.push_back(log10_start + (log10_stop - log10_start) * k / (points - 1));
  }
  return xs;
}

GateSpec SweepConfig::default_gate() { return GateSpec({1.0, 0.0, 0.0}, 2.0 * std::numbers::pi / 3.0); }

void SweepConfig::validate() const {
  try {
    bath.validate();
  } catch (const ValidationError& e) {
    // "SpinBathSpec.<field>: <reason>" becomes "bath.<field>: <reason>".
    const std::string msg = e.what();
    const auto dot = msg.find('.');
    throw ValidationError("bath" + (dot == std::string::npos ? ": " + msg : msg.substr(dot)));
  }
  if (levels.empty()) fail("levels", "at least one level is required");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 0 || levels[i] > kMaxLevel) {
      fail("levels[" + std::to_string(i) + "]",
           "must be in 0.." + std::to_string(kMaxLevel) + " (17^level segments)");
    }
  }
  if (tau_grid.points < 2) fail("tau_grid.points", "must be at least 2");
  if (!(tau_grid.log10_start < tau_grid.log10_stop)) {
    fail("tau_grid.log10_start", "must be less than tau_grid.log10_stop");
  }
  if (replicates < 1) fail("replicates", "must be at least 1");
  if (workers < 1) fail("workers", "must be at least 1");
  if (output_path.empty()) fail("output", "must not be empty");
}

std::vector<std::uint64_t> SweepConfig::seeds() const {
  std::vector<std::uint64_t> s;
  for (int k = 0; k < replicates; ++k) s.push_back(bath.seed + static_cast<std::uint64_t>(k));
  return s;
}

SweepConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("config", "top level must be an object");
  reject_unknown(doc, "", {"bath", "gate", "levels", "tau_grid", "replicates", "workers", "output"});

  SweepConfig cfg;
  if (auto* v = member(doc, "bath")) parse_bath(*v, cfg.bath);
  if (auto* v = member(doc, "gate")) cfg.gate = parse_gate(*v);
  if (auto* v = member(doc, "levels")) {
    if (!v->is_array()) fail("levels", "expected an array of integers");
    cfg.levels.clear();
    for (std::size_t i = 0; i < v->size(); ++i) {
      cfg.levels.push_back(static_cast<int>(get_integer((*v)[i], "levels[" + std::to_string(i) + "]")));
    }
  }
  if (auto* v = member(doc, "tau_grid")) {
    if (!v->is_object()) fail("tau_grid", "expected an object");
    reject_unknown(*v, "tau_grid", {"log10_start", "log10_stop", "points"});
    if (auto* w = member(*v, "log10_start")) cfg.tau_grid.log10_start = get_number(*w, "tau_grid.log10_start");
    if (auto* w = member(*v, "log10_stop")) cfg.tau_grid.log10_stop = get_number(*w, "tau_grid.log10_stop");
    if (auto* w = member(*v, "points")) cfg.tau_grid.points = static_cast<int>(get_integer(*w, "tau_grid.points"));
  }
  if (auto* v = member(doc, "replicates")) cfg.replicates = static_cast<int>(get_integer(*v, "replicates"));
  if (auto* v = member(doc, "workers")) cfg.workers = static_cast<int>(get_integer(*v, "workers"));
  if (auto* v = member(doc, "output")) {
    if (!v->is_string()) fail("output", "expected a string");
    cfg.output_path = v->get<std::string>();
  }
  cfg.validate();
  return cfg;
}

SweepConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string serialize_config(const SweepConfig& cfg) {
  json doc;
  doc["bath"] = {{"n_bath", cfg.bath.n_bath},
                 {"j_max", cfg.bath.j_max},
                 {"b_max", cfg.bath.b_max},
                 {"seed", cfg.bath.seed},
                 {"h_drift", cfg.bath.h_drift}};
  doc["gate"] = {{"axis", cfg.gate.axis()}, {"angle", cfg.gate.angle()}};
  doc["levels"] = cfg.levels;
  doc["tau_grid"] = {{"log10_start", cfg.tau_grid.log10_start},
                     {"log10_stop", cfg.tau_grid.log10_stop},
                     {"points", cfg.tau_grid.points}};
  doc["replicates"] = cfg.replicates;
  doc["workers"] = cfg.workers;
  doc["output"] = cfg.output_path;
  return doc.dump(2) + "\n";
}

}  // namespace cdcg
