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

#include "cli.hpp"

#include <iostream>

#include "CLI11.hpp"
#include "optokerr/errors.hpp"

namespace optokerr::cli {

namespace {

struct Flags {
  std::string config_path;
  std::string out;
  int jobs = 1;
  bool numeric = false;
  bool analytic = false;
  std::string branch;
  std::string mode;
  std::vector<std::string> sets;
};

const std::vector<std::pair<std::string, std::string>>& commands() {
  static const std::vector<std::pair<std::string, std::string>> v{
      {"table1", "optimal drive detunings: predicted and detected in g2 sweeps"},
      {"blockade-sweep", "photon statistics along one parameter"},
      {"blockade-map", "g2 over two parameters, plus the resonance locus"},
      {"cat", "cat-state generation, closed or open system"},
      {"wigner", "Wigner function of the conditioned mechanical state"},
      {"quadrature", "rotated-quadrature distribution of the conditioned state"},
      {"verify", "propagator, unitarity, Franck-Condon and tomography checks"},
  };
  return v;
}

Config resolve(const std::string& command, const Flags& f) {
  Config c = Config::defaults(command);
  if (!f.config_path.empty()) {
    c.merge_file(f.config_path);
  }
  for (const auto& s : f.sets) {
    c.set(s);
  }
  if (f.numeric || f.analytic) {
    if (c.has("numeric")) {
      c.merge({{"numeric", f.numeric}}, "--numeric/--analytic");
    } else if (c.has("source")) {
      c.merge({{"source", f.numeric ? "numeric" : "analytic"}}, "--numeric/--analytic");
    } else {
      throw UsageError("--numeric/--analytic do not apply to '" + command + "'");
    }
  }
  if (!f.branch.empty()) {
    if (!c.has("branch")) {
      throw UsageError("--branch does not apply to '" + command + "'");
    }
    c.merge({{"branch", f.branch}}, "--branch");
  }
  if (!f.mode.empty()) {
    if (!c.has("mode")) {
      throw UsageError("--mode does not apply to '" + command + "'");
    }
    c.merge({{"mode", f.mode}}, "--mode");
  }
  return c;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"optokerr: photon blockade and cat states in optomechanics with cross-Kerr coupling"};
  app.require_subcommand(1);
  Flags f;
  app.add_option("--config", f.config_path, "JSON file with flat parameter keys");
  app.add_option("--out", f.out, "output CSV path (default: stdout)");
  app.add_option("--jobs", f.jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);
  auto* numeric = app.add_flag("--numeric", f.numeric, "use the master-equation path");
  auto* analytic = app.add_flag("--analytic", f.analytic, "use the closed-form path only");
  numeric->excludes(analytic);
  app.add_option("--branch", f.branch, "cavity detection branch")
      ->check(CLI::IsMember({"plus", "minus"}));
  app.add_option("--mode", f.mode, "cat: closed or open")->check(CLI::IsMember({"closed", "open"}));
  app.add_option("--set", f.sets, "override one key, key=value (repeatable)");
  for (const auto& [name, help] : commands()) {
    app.add_subcommand(name, help)->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  RunContext ctx;
  ctx.command = app.get_subcommands().front()->get_name();
  ctx.out.path = f.out;
  ctx.jobs = f.jobs;
  ctx.log = &std::cerr;
  try {
    ctx.config = resolve(ctx.command, f);
    return run_command(ctx);
  } catch (const UsageError& e) {
    std::cerr << "optokerr: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "optokerr: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace optokerr::cli
