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

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace optokerr::cli {

using CsvField = std::variant<double, long long, std::string>;

/// %.9g, with "nan", "inf" and "-inf" for non-finite values.
std::string format_number(double x);

/// Comma-separated output with a `# `-prefixed preamble. Fields holding
/// commas, quotes or newlines are quoted.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const std::vector<std::string>& preamble);

  void header(const std::vector<std::string>& names);
  void row(const std::vector<CsvField>& fields);

 private:
  std::ostream& os_;
  std::size_t columns_ = 0;
};

}  // namespace optokerr::cli
