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
#include <ostream>
#include <string>

#include "config.hpp"

namespace optokerr::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitNumerical = 2,
  kExitVerification = 3,
};

/// Destination of the primary CSV. An empty path means stdout; auxiliary
/// files (snapshot, locus, full sweep) are written next to a real path as
/// `<stem>.<tag>.csv` and skipped for stdout.
struct Output {
  std::string path;

  [[nodiscard]] std::optional<std::string> sibling(const std::string& tag) const;
};

struct RunContext {
  std::string command;
  Config config;
  Output out;
  int jobs = 1;
  std::ostream* log = nullptr;
};

/// Executes one command; returns the process exit code. Library errors
/// propagate to the caller.
int run_command(const RunContext& ctx);

/// Full command-line entry point.
int run(int argc, char** argv);

}  // namespace optokerr::cli
