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

#include "csv.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace optokerr::cli {

namespace {

std::string escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) {
    return "nan";
  }
  if (std::isinf(x)) {
    return x > 0 ? "inf" : "-inf";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& preamble) : os_(os) {
  for (const auto& line : preamble) {
    os_ << "# " << line << '\n';
  }
}

void CsvWriter::header(const std::vector<std::string>& names) {
  columns_ = names.size();
  for (std::size_t i = 0; i < names.size(); ++i) {
    os_ << (i ? "," : "") << escape(names[i]);
  }
  os_ << '\n';
}

void CsvWriter::row(const std::vector<CsvField>& fields) {
  if (fields.size() != columns_) {
    throw std::logic_error("csv row width does not match header");
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) {
      os_ << ',';
    }
    std::visit(
        [this](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, double>) {
            os_ << format_number(v);
          } else if constexpr (std::is_same_v<T, long long>) {
            os_ << v;
          } else {
            os_ << escape(v);
          }
        },
        fields[i]);
  }
  os_ << '\n';
}

}  // namespace optokerr::cli
