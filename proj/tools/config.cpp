// Copyright 2026 The optokerr Authors
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

#include "config.hpp"

#include <cmath>
#include <fstream>

namespace optokerr::cli {

namespace {

using nlohmann::json;

// Blockade study parameters: g0 = 0.7, g_cK/g0 = 0.25,
// κ = 0.1, γ_M = 0.001, Ω/κ = 0.01, n̄ = 0.
json blockade_base() {
  return {
      {"omega_c", 100.0},  {"omega_m", 1.0},   {"g0", 0.7},          {"g_ck", 0.175},
      {"kappa", 0.1},      {"gamma_m", 0.001}, {"nbar_m", 0.0},      {"detuning", 0.0},
      {"drive_amp", 0.001}, {"n_cav", 4},      {"n_mech", 30},       {"steady_method", "sector"},
  };
}

// Cat-state parameters: g0 = 1.2, g_cK/g0 = 0.25. The dissipation values
// are the shared base of the open-system runs and are ignored by the
// closed-system paths.
json cat_base(double omega_c) {
  return {
      {"omega_c", omega_c}, {"omega_m", 1.0},  {"g0", 1.2},     {"g_ck", 0.3},
      {"kappa", 0.1},       {"gamma_m", 0.01}, {"nbar_m", 0.0}, {"detuning", 0.0},
      {"drive_amp", 0.0},   {"n_cav", 2},     {"n_mech", 60},  {"rtol", 1e-8},
      {"atol", 1e-10},
  };
}

bool compatible(const json& def, const json& v) {
  if (def.is_null()) {
    return true;
  }
  if (def.is_number()) {
    return v.is_number();
  }
  if (def.is_boolean()) {
    return v.is_boolean();
  }
  if (def.is_string()) {
    return v.is_string();
  }
  if (def.is_array()) {
    return v.is_array();
  }
  return false;
}

}  // namespace

Config Config::defaults(const std::string& command) {
  Config c;
  json& d = c.data_;
  if (command == "table1") {
    d = blockade_base();
    d.update({{"delta_lo", -3.8}, {"delta_hi", 1.8}, {"delta_step", 0.005}, {"numeric", true}});
  } else if (command == "blockade-sweep") {
    d = blockade_base();
    d.update({{"sweep_var", "detuning"},
              {"sweep_lo", -3.8},
              {"sweep_hi", 1.8},
              {"sweep_n", 1121},
              {"g_ck_over_g0", nullptr},
              {"drive_over_kappa", nullptr},
              {"detuning_mode", "fixed"},
              {"numeric", false}});
  } else if (command == "blockade-map") {
    d = blockade_base();
    d.update({{"x_var", "g_ck"},
              {"x_lo", 0.0},
              {"x_hi", 0.3},
              {"x_n", 31},
              {"y_var", "g0"},
              {"y_lo", 0.2},
              {"y_hi", 1.0},
              {"y_n", 41},
              {"g_ck_over_g0", nullptr},
              {"drive_over_kappa", nullptr},
              {"detuning_mode", "single"},
              {"locus_n_max", 3},
              {"numeric", false}});
  } else if (command == "cat") {
    d = cat_base(100.0);
    d.update({{"mode", "closed"},
              {"t_lo", 0.0},
              {"t_hi", nullptr},
              {"t_n", 201},
              {"series_var", "kappa"},
              {"series_values", json::array({0.01, 0.05, 0.1})}});
  } else if (command == "wigner") {
    d = cat_base(1000.0);
    d.update({{"t", nullptr},
              {"branch", "plus"},
              {"source", "analytic"},
              {"re_lo", -2.0},
              {"re_hi", 5.0},
              {"re_n", 141},
              {"im_lo", -3.5},
              {"im_hi", 3.5},
              {"im_n", 141}});
  } else if (command == "quadrature") {
    d = cat_base(1000.0);
    d.update({{"t", nullptr},
              {"branch", "plus"},
              {"source", "analytic"},
              {"theta", nullptr},
              {"x_lo", -4.0},
              {"x_hi", 7.0},
              {"x_n", 551}});
  } else if (command == "verify") {
    d = cat_base(100.0);
    d["n_cav"] = 3;
    d.update({{"times", json::array()},
              {"n_times", 20},
              {"n_pad", 600},
              {"interior_m", -1},
              {"interior_n", -1},
              {"flip_nu_sign", false}});
  } else {
    throw UsageError("unknown command '" + command + "'");
  }
  return c;
}

void Config::merge(const json& overrides, const std::string& origin) {
  if (!overrides.is_object()) {
    throw UsageError(origin + ": configuration must be a JSON object");
  }
  for (const auto& [key, value] : overrides.items()) {
    if (!data_.contains(key)) {
      throw UsageError(origin + ": unknown key '" + key + "'");
    }
    if (!compatible(data_.at(key), value)) {
      throw UsageError(origin + ": key '" + key + "' has the wrong type");
    }
    data_[key] = value;
  }
}

void Config::merge_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw UsageError("cannot open config file '" + path + "'");
  }
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
  merge(j, path);
}

void Config::set(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw UsageError("--set expects key=value, got '" + assignment + "'");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) {
    value = text;
  }
  merge(json{{key, value}}, "--set");
}

const json& Config::get(const std::string& key) const {
  if (!data_.contains(key)) {
    throw UsageError("missing configuration key '" + key + "'");
  }
  return data_.at(key);
}

double Config::num(const std::string& key) const {
  const json& v = get(key);
  if (!v.is_number()) {
    throw UsageError("'" + key + "' must be a number");
  }
  const double x = v.get<double>();
  if (!std::isfinite(x)) {
    throw UsageError("'" + key + "' must be finite");
  }
  return x;
}

int Config::integer(const std::string& key) const {
  const json& v = get(key);
  if (!v.is_number_integer()) {
    throw UsageError("'" + key + "' must be an integer");
  }
  return v.get<int>();
}

bool Config::flag(const std::string& key) const {
  const json& v = get(key);
  if (!v.is_boolean()) {
    throw UsageError("'" + key + "' must be true or false");
  }
  return v.get<bool>();
}

std::string Config::str(const std::string& key) const {
  const json& v = get(key);
  if (!v.is_string()) {
    throw UsageError("'" + key + "' must be a string");
  }
  return v.get<std::string>();
}

std::optional<double> Config::opt_num(const std::string& key) const {
  const json& v = get(key);
  if (v.is_null()) {
    return std::nullopt;
  }
  return num(key);
}

std::vector<double> Config::num_list(const std::string& key) const {
  const json& v = get(key);
  if (!v.is_array()) {
    throw UsageError("'" + key + "' must be a list of numbers");
  }
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) {
      throw UsageError("'" + key + "' must be a list of numbers");
    }
    out.push_back(x.get<double>());
  }
  return out;
}

SystemParams Config::params() const {
  SystemParams p;
  p.omega_c = num("omega_c");
  p.omega_m = num("omega_m");
  p.g0 = num("g0");
  p.g_ck = num("g_ck");
  p.kappa = num("kappa");
  p.gamma_m = num("gamma_m");
  p.nbar_m = num("nbar_m");
  p.detuning = num("detuning");
  p.drive_amp = num("drive_amp");
  return p;
}

HilbertSpec Config::spec() const { return HilbertSpec{integer("n_cav"), integer("n_mech")}; }

std::vector<std::string> Config::echo() const {
  std::vector<std::string> lines;
  for (const auto& [key, value] : data_.items()) {
    lines.push_back(key + " = " + value.dump());
  }
  return lines;
}

}  // namespace optokerr::cli
