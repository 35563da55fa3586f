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

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "optokerr/model.hpp"
#include "optokerr/operators.hpp"

namespace optokerr::cli {

/// Bad flags, unknown keys, malformed values. Maps to exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat key/value run configuration. Every command starts from its own
/// defaults; a JSON file and then `--set key=value` pairs override them.
/// Keys absent from the defaults are rejected so typos do not pass
/// silently.
class Config {
 public:
  static Config defaults(const std::string& command);

  void merge(const nlohmann::json& overrides, const std::string& origin);
  void merge_file(const std::string& path);
  /// `key=value`; the value is read as JSON when it parses, else as a string.
  void set(const std::string& assignment);

  [[nodiscard]] double num(const std::string& key) const;
  [[nodiscard]] int integer(const std::string& key) const;
  [[nodiscard]] bool flag(const std::string& key) const;
  [[nodiscard]] std::string str(const std::string& key) const;
  /// Null means "derive from the physics"; numbers pass through.
  [[nodiscard]] std::optional<double> opt_num(const std::string& key) const;
  [[nodiscard]] std::vector<double> num_list(const std::string& key) const;
  [[nodiscard]] bool has(const std::string& key) const { return data_.contains(key); }

  [[nodiscard]] SystemParams params() const;
  [[nodiscard]] HilbertSpec spec() const;

  /// `key = value` lines in key order.
  [[nodiscard]] std::vector<std::string> echo() const;
  [[nodiscard]] const nlohmann::json& raw() const { return data_; }

 private:
  const nlohmann::json& get(const std::string& key) const;

  nlohmann::json data_ = nlohmann::json::object();
};

}  // namespace optokerr::cli
