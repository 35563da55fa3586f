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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <memory>

#include "cli.hpp"
#include "csv.hpp"
#include "optokerr/catstate.hpp"
#include "optokerr/errors.hpp"
#include "optokerr/quasiprob.hpp"
#include "optokerr/sweeps.hpp"
#include "optokerr/verify.hpp"

namespace optokerr::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Opens the primary output or a sibling; stdout when path is empty.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty()) {
      os_ = &std::cout;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) {
      throw UsageError("cannot write '" + path + "'");
    }
    os_ = file_.get();
  }
  std::ostream& stream() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_ = nullptr;
};

std::vector<std::string> preamble(const RunContext& ctx, const std::string& what) {
  std::vector<std::string> lines{"optokerr " + ctx.command + (what.empty() ? "" : " " + what)};
  for (auto& l : ctx.config.echo()) {
    lines.push_back(std::move(l));
  }
  return lines;
}

std::vector<double> linspace(double lo, double hi, int n, const std::string& what) {
  if (n < 1) {
    throw UsageError(what + ": need at least one point");
  }
  if (n > 1 && !(hi > lo)) {
    throw UsageError(what + ": grid must be increasing");
  }
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    v[i] = n > 1 ? lo + (hi - lo) * i / (n - 1) : lo;
  }
  return v;
}

Axis axis(const Config& c, const std::string& prefix) {
  Axis a{c.num(prefix + "_lo"), c.num(prefix + "_hi"), c.integer(prefix + "_n")};
  linspace(a.lo, a.hi, a.n, prefix);  // validation only
  return a;
}

double& param_ref(SystemParams& p, const std::string& name) {
  static const std::map<std::string, double SystemParams::*> fields{
      {"omega_c", &SystemParams::omega_c}, {"detuning", &SystemParams::detuning},
      {"g0", &SystemParams::g0},           {"g_ck", &SystemParams::g_ck},
      {"kappa", &SystemParams::kappa},     {"gamma_m", &SystemParams::gamma_m},
      {"nbar_m", &SystemParams::nbar_m},   {"drive_amp", &SystemParams::drive_amp},
  };
  const auto it = fields.find(name);
  if (it == fields.end()) {
    throw UsageError("'" + name + "' is not a sweepable parameter");
  }
  return p.*(it->second);
}

ParamLocks locks(const Config& c) {
  ParamLocks l;
  l.g_ck_over_g0 = c.opt_num("g_ck_over_g0");
  l.drive_over_kappa = c.opt_num("drive_over_kappa");
  const std::string mode = c.str("detuning_mode");
  if (mode == "fixed") {
    l.detuning = DetuningMode::kFixed;
  } else if (mode == "single") {
    l.detuning = DetuningMode::kSinglePhotonResonance;
  } else if (mode == "two") {
    l.detuning = DetuningMode::kTwoPhotonResonance;
  } else {
    throw UsageError("detuning_mode must be fixed, single or two");
  }
  return l;
}

SteadyStateOptions steady_options(const Config& c) {
  SteadyStateOptions o;
  const std::string m = c.str("steady_method");
  if (m == "sector") {
    o.method = SteadyStateMethod::kSectorSolve;
  } else if (m == "vectorized") {
    o.method = SteadyStateMethod::kVectorized;
  } else if (m == "integrate") {
    o.method = SteadyStateMethod::kIntegrate;
  } else {
    throw UsageError("steady_method must be sector, vectorized or integrate");
  }
  return o;
}

EvolveOptions evolve_options(const Config& c) {
  EvolveOptions o;
  o.rtol = c.num("rtol");
  o.atol = c.num("atol");
  return o;
}

Branch branch(const Config& c) {
  const std::string b = c.str("branch");
  if (b == "plus") {
    return Branch::kPlus;
  }
  if (b == "minus") {
    return Branch::kMinus;
  }
  throw UsageError("branch must be plus or minus");
}

bool numeric_source(const Config& c) {
  const std::string s = c.str("source");
  if (s != "analytic" && s != "numeric") {
    throw UsageError("source must be analytic or numeric");
  }
  return s == "numeric";
}

// Locks are applied inside the guarded region: a singular lock (for
// example ω_M − g_cK ≤ 0) must produce a NaN row, not abort the sweep.
BlockadeRow guarded_point(SystemParams p, const ParamLocks& l, const HilbertSpec& spec,
                          const BlockadeOptions& opts) {
  try {
    p = apply_locks(p, l);
  } catch (const Error& e) {
    BlockadeRow row = evaluate_blockade(p, spec, BlockadeOptions{false, false, false, {}});
    row.error = std::string("locks: ") + e.what();
    return row;
  }
  return evaluate_blockade(p, spec, opts);
}

std::vector<std::string> param_columns() {
  return {"detuning", "g0", "g_ck", "kappa", "gamma_m", "nbar_m", "drive_amp"};
}

std::vector<CsvField> param_fields(const SystemParams& p) {
  return {p.detuning, p.g0, p.g_ck, p.kappa, p.gamma_m, p.nbar_m, p.drive_amp};
}

template <typename T>
void append(std::vector<T>& a, const std::vector<T>& b) {
  a.insert(a.end(), b.begin(), b.end());
}

// ---------------------------------------------------------------- table1

int cmd_table1(const RunContext& ctx) {
  const Config& c = ctx.config;
  BlockadeOptions opts;
  opts.numeric = c.flag("numeric");
  opts.steady = steady_options(c);
  const SystemParams p = c.params();
  const HilbertSpec spec = c.spec();
  validate(spec);
  const Table1Result r =
      table1(p, spec, c.num("delta_lo"), c.num("delta_hi"), c.num("delta_step"), opts, ctx.jobs);

  Sink sink(ctx.out.path);
  CsvWriter w(sink.stream(), preamble(ctx, "optimal detunings"));
  w.header({"kind", "n", "mark", "predicted", "detected_g2_analytic", "delta_g2_analytic",
            "detected_g2_numeric", "delta_g2_numeric", "g2_analytic", "g2_numeric",
            "prob_peak_analytic", "prob_peak_numeric"});
  for (const auto& row : r.rows) {
    const bool single = row.kind == Resonance::kSinglePhoton;
    w.row({std::string(single ? "single" : "two"), static_cast<long long>(row.n),
           std::string(single ? "d" : "p") + std::to_string(row.n), row.predicted,
           row.detected_analytic, row.detected_analytic - row.predicted, row.detected_numeric,
           row.detected_numeric - row.predicted, row.g2_analytic, row.g2_numeric,
           row.prob_peak_analytic, row.prob_peak_numeric});
  }

  if (const auto path = ctx.out.sibling("wide")) {
    Sink s(*path);
    CsvWriter ww(s.stream(), preamble(ctx, "predicted detunings, one row"));
    std::vector<std::string> names;
    std::vector<CsvField> values;
    for (const auto& row : r.rows) {
      const bool single = row.kind == Resonance::kSinglePhoton;
      names.push_back(std::string("predicted_") + (single ? "single" : "two") + "[" +
                      std::to_string(row.n) + "]");
      values.emplace_back(row.predicted);
    }
    ww.header(names);
    ww.row(values);
  }
  if (const auto path = ctx.out.sibling("sweep")) {
    Sink s(*path);
    CsvWriter sw(s.stream(), preamble(ctx, "detuning sweep"));
    sw.header({"detuning", "P0", "P1", "P2", "g2_analytic", "g2_lamb_dicke", "P0_numeric",
               "P1_numeric", "P2_numeric", "g2_numeric", "error"});
    for (const auto& row : r.sweep) {
      sw.row({row.params.detuning, row.exact.p0, row.exact.p1, row.exact.p2, row.exact.g2,
              row.lamb_dicke.g2, row.numeric.p0, row.numeric.p1, row.numeric.p2, row.numeric.g2,
              row.error});
    }
  }
  return kExitOk;
}

// ------------------------------------------------------- blockade-sweep

std::vector<std::string> blockade_columns(bool numeric) {
  std::vector<std::string> cols{"P0", "P1", "P2", "g2_analytic", "g2_lamb_dicke"};
  if (numeric) {
    append(cols, {"P0_numeric", "P1_numeric", "P2_numeric", "g2_numeric"});
  }
  cols.emplace_back("error");
  return cols;
}

std::vector<CsvField> blockade_fields(const BlockadeRow& row, bool numeric) {
  std::vector<CsvField> f{row.exact.p0, row.exact.p1, row.exact.p2, row.exact.g2,
                          row.lamb_dicke.g2};
  if (numeric) {
    append(f, std::vector<CsvField>{row.numeric.p0, row.numeric.p1, row.numeric.p2,
                                    row.numeric.g2});
  }
  f.emplace_back(row.error);
  return f;
}

int cmd_blockade_sweep(const RunContext& ctx) {
  const Config& c = ctx.config;
  BlockadeOptions opts;
  opts.numeric = c.flag("numeric");
  opts.steady = steady_options(c);
  const HilbertSpec spec = c.spec();
  validate(spec);
  const ParamLocks l = locks(c);
  const std::string var = c.str("sweep_var");
  if (var == "detuning" && l.detuning != DetuningMode::kFixed) {
    throw UsageError("sweeping the detuning requires detuning_mode = fixed");
  }
  const auto xs = linspace(c.num("sweep_lo"), c.num("sweep_hi"), c.integer("sweep_n"), "sweep");
  const SystemParams base = c.params();

  std::vector<BlockadeRow> rows(xs.size());
  parallel_for(xs.size(), ctx.jobs, [&](std::size_t i) {
    SystemParams p = base;
    param_ref(p, var) = xs[i];
    rows[i] = guarded_point(p, l, spec, opts);
  });

  Sink sink(ctx.out.path);
  CsvWriter w(sink.stream(), preamble(ctx, "sweep over " + var));
  std::vector<std::string> header = param_columns();
  append(header, blockade_columns(opts.numeric));
  w.header(header);
  for (const auto& row : rows) {
    auto f = param_fields(row.params);
    append(f, blockade_fields(row, opts.numeric));
    w.row(f);
  }
  return kExitOk;
}

// --------------------------------------------------------- blockade-map

int cmd_blockade_map(const RunContext& ctx) {
  const Config& c = ctx.config;
  BlockadeOptions opts;
  opts.numeric = c.flag("numeric");
  opts.steady = steady_options(c);
  const HilbertSpec spec = c.spec();
  validate(spec);
  const ParamLocks l = locks(c);
  const std::string xv = c.str("x_var");
  const std::string yv = c.str("y_var");
  if (xv == yv) {
    throw UsageError("x_var and y_var must differ");
  }
  if ((xv == "detuning" || yv == "detuning") && l.detuning != DetuningMode::kFixed) {
    throw UsageError("mapping over the detuning requires detuning_mode = fixed");
  }
  const auto xs = linspace(c.num("x_lo"), c.num("x_hi"), c.integer("x_n"), "x");
  const auto ys = linspace(c.num("y_lo"), c.num("y_hi"), c.integer("y_n"), "y");
  const SystemParams base = c.params();
  SystemParams probe = base;
  param_ref(probe, xv);  // reject unknown names before any work
  param_ref(probe, yv);

  std::vector<BlockadeRow> rows(xs.size() * ys.size());
  parallel_for(rows.size(), ctx.jobs, [&](std::size_t k) {
    SystemParams p = base;
    param_ref(p, xv) = xs[k / ys.size()];
    param_ref(p, yv) = ys[k % ys.size()];
    rows[k] = guarded_point(p, l, spec, opts);
  });

  Sink sink(ctx.out.path);
  CsvWriter w(sink.stream(), preamble(ctx, "map over " + xv + " and " + yv));
  std::vector<std::string> header = param_columns();
  append(header, blockade_columns(opts.numeric));
  w.header(header);
  for (const auto& row : rows) {
    auto f = param_fields(row.params);
    append(f, blockade_fields(row, opts.numeric));
    w.row(f);
  }

  const bool has_locus_axes = (xv == "g_ck" && yv == "g0") || (xv == "g0" && yv == "g_ck");
  if (const auto path = ctx.out.sibling("locus"); path && has_locus_axes) {
    Sink s(*path);
    CsvWriter lw(s.stream(), preamble(ctx, "coincidence of the single-photon dip and the "
                                           "n-th two-photon peak"));
    lw.header({"n", "g_ck", "g0"});
    const auto& gck = xv == "g_ck" ? xs : ys;
    for (int n = 1; n <= c.integer("locus_n_max"); ++n) {
      for (double g : gck) {
        double g0 = kNaN;
        try {
          g0 = resonance_curve_g0(n, g, base.omega_m);
        } catch (const Error&) {
          // Outside the domain of the locus; leave the gap in the file.
        }
        lw.row({static_cast<long long>(n), g, g0});
      }
    }
  }
  return kExitOk;
}

// ------------------------------------------------------------------ cat

int cat_closed(const RunContext& ctx) {
  const Config& c = ctx.config;
  const SystemParams p = c.params();
  const HilbertSpec spec = c.spec();
  validate(spec);
  validate(p, spec.n_cav - 1);
  const double ts = detection_time(p);
  const auto times = linspace(c.num("t_lo"), c.opt_num("t_hi").value_or(2.0 * ts),
                              c.integer("t_n"), "t");

  std::vector<CatSnapshot> snaps(times.size());
  std::vector<double> dev(times.size());
  parallel_for(times.size(), ctx.jobs, [&](std::size_t i) {
    snaps[i] = cat_snapshot(times[i], p);
    dev[i] = closed_evolution_check(times[i], p, spec).max_deviation;
  });

  Sink sink(ctx.out.path);
  CsvWriter w(sink.stream(), preamble(ctx, "closed-system cat generation"));
  w.header({"t", "abs_beta", "theta", "P_plus", "P_minus", "propagator_dev"});
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto& s = snaps[i];
    w.row({s.t, std::abs(s.beta), s.theta, s.prob_plus, s.prob_minus, dev[i]});
  }
  if (const auto path = ctx.out.sibling("snapshot")) {
    const CatSnapshot s = cat_snapshot(ts, p);
    Sink f(*path);
    CsvWriter sw(f.stream(), preamble(ctx, "state at the detection time"));
    sw.header({"t_s", "beta_re", "beta_im", "abs_beta", "theta", "norm_plus", "norm_minus",
               "P_plus", "P_minus"});
    sw.row({ts, s.beta.real(), s.beta.imag(), std::abs(s.beta), s.theta, s.norm_plus,
            s.norm_minus, s.prob_plus, s.prob_minus});
  }
  return kExitOk;
}

int cat_open(const RunContext& ctx) {
  const Config& c = ctx.config;
  const SystemParams base = c.params();
  const HilbertSpec spec = c.spec();
  validate(spec);
  validate(base, spec.n_cav - 1);
  const double ts = detection_time(base);
  const auto grid = linspace(c.num("t_lo"), c.opt_num("t_hi").value_or(2.0 * ts),
                             c.integer("t_n"), "t");
  if (grid.front() < 0.0) {
    throw UsageError("t_lo must be non-negative");
  }
  const std::string var = c.str("series_var");
  std::vector<double> values = c.num_list("series_values");
  std::vector<SystemParams> settings;
  if (values.empty()) {
    settings.push_back(base);
  } else {
    for (double v : values) {
      SystemParams p = base;
      param_ref(p, var) = v;
      settings.push_back(p);
    }
  }

  // t_s is merged into the output grid so the snapshot comes from the same run.
  std::vector<double> times = grid;
  times.push_back(ts);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  const auto ts_index =
      static_cast<std::size_t>(std::find(times.begin(), times.end(), ts) - times.begin());

  const EvolveOptions eo = evolve_options(c);
  std::vector<std::vector<CatRunPoint>> runs(settings.size());
  parallel_for(settings.size(), ctx.jobs, [&](std::size_t k) {
    const auto rhos = evolve_cat(settings[k], spec, times, eo);
    for (std::size_t i = 0; i < times.size(); ++i) {
      runs[k].push_back(summarize_cat(rhos[i], times[i], settings[k]));
    }
  });

  auto fields = [](const SystemParams& p, const CatRunPoint& r) {
    return std::vector<CsvField>{p.kappa,      p.gamma_m,     p.nbar_m,    r.t,        r.prob_plus,
                                 r.prob_minus, r.fid_plus,    r.fid_minus, r.trace};
  };
  const std::vector<std::string> header{"kappa",   "gamma_m", "nbar_m",  "t",    "P_plus",
                                        "P_minus", "F_plus",  "F_minus", "trace"};
  Sink sink(ctx.out.path);
  CsvWriter w(sink.stream(), preamble(ctx, "open-system cat generation"));
  w.header(header);
  for (std::size_t k = 0; k < settings.size(); ++k) {
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (std::binary_search(grid.begin(), grid.end(), times[i])) {
        w.row(fields(settings[k], runs[k][i]));
      }
    }
  }
  if (const auto path = ctx.out.sibling("snapshot")) {
    Sink f(*path);
    CsvWriter sw(f.stream(), preamble(ctx, "state at the detection time"));
    sw.header(header);
    for (std::size_t k = 0; k < settings.size(); ++k) {
      sw.row(fields(settings[k], runs[k][ts_index]));
    }
  }
  return kExitOk;
}

// Mechanical state for the phase-space commands: the pure cat, or the
// conditioned open-system state.
Eigen::MatrixXcd mechanical_state(const Config& c, double t, Branch b) {
  const SystemParams p = c.params();
  const HilbertSpec spec = c.spec();
  validate(spec);
  validate(p, spec.n_cav - 1);
  const auto rhos = evolve_cat(p, spec, {0.0, t}, evolve_options(c));
  return condition_branch(rhos.back(), b).rho_b;
}

int cmd_wigner(const RunContext& ctx) {
  const Config& c = ctx.config;
  const SystemParams p = c.params();
  const double t = c.opt_num("t").value_or(detection_time(p));
  const Branch b = branch(c);
  const Axis re = axis(c, "re");
  const Axis im = axis(c, "im");
  const PhaseSpaceGrid g = numeric_source(c) ? wigner_numeric(mechanical_state(c, t, b), re, im)
                                             : wigner_cat_analytic(t, b, p, re, im);
  Sink sink(ctx.out.path);
  CsvWriter w(sink.stream(), preamble(ctx, "Wigner function"));
  w.header({"re_eta", "im_eta", "W"});
  for (int i = 0; i < re.n; ++i) {
    for (int j = 0; j < im.n; ++j) {
      w.row({re.at(i), im.at(j), g.at(i, j)});
    }
  }
  return kExitOk;
}

int cmd_quadrature(const RunContext& ctx) {
  const Config& c = ctx.config;
  const SystemParams p = c.params();
  const double t = c.opt_num("t").value_or(detection_time(p));
  const double theta = c.opt_num("theta").value_or(perpendicular_angle(p));
  const Branch b = branch(c);
  const Axis x = axis(c, "x");
  const PhaseSpaceGrid g = numeric_source(c)
                               ? quadrature_dist_numeric(mechanical_state(c, t, b), theta, x)
                               : quadrature_dist_cat(t, b, theta, p, x);
  Sink sink(ctx.out.path);
  CsvWriter w(sink.stream(), preamble(ctx, "rotated quadrature distribution"));
  w.header({"X", "P"});
  for (int i = 0; i < x.n; ++i) {
    w.row({x.at(i), g.at(i)});
  }
  return kExitOk;
}

int cmd_verify(const RunContext& ctx) {
  const Config& c = ctx.config;
  VerifyConfig vc;
  vc.params = c.params();
  vc.spec = c.spec();
  vc.times = c.num_list("times");
  vc.n_times = c.integer("n_times");
  vc.n_pad = c.integer("n_pad");
  vc.interior_m = c.integer("interior_m");
  vc.interior_n = c.integer("interior_n");
  vc.flip_nu_sign = c.flag("flip_nu_sign");
  const VerifyReport report = run_verify(vc);

  for (const auto& r : report.checks) {
    if (ctx.log != nullptr) {
      *ctx.log << (r.passed ? "PASS " : "FAIL ") << r.name << "  deviation "
               << format_number(r.value) << " (tol " << format_number(r.tol) << ")  " << r.detail
               << '\n';
    }
  }
  Sink sink(ctx.out.path);
  CsvWriter w(sink.stream(), preamble(ctx, "verification report"));
  w.header({"check", "deviation", "tolerance", "status", "detail"});
  for (const auto& r : report.checks) {
    w.row({r.name, r.value, r.tol, std::string(r.passed ? "PASS" : "FAIL"), r.detail});
  }
  return report.all_passed() ? kExitOk : kExitVerification;
}

}  // namespace

std::optional<std::string> Output::sibling(const std::string& tag) const {
  if (path.empty()) {
    return std::nullopt;
  }
  std::filesystem::path p(path);
  const std::string stem = p.stem().string();
  return (p.parent_path() / (stem + "." + tag + ".csv")).string();
}

int run_command(const RunContext& ctx) {
  static const std::map<std::string, std::function<int(const RunContext&)>> table{
      {"table1", cmd_table1},
      {"blockade-sweep", cmd_blockade_sweep},
      {"blockade-map", cmd_blockade_map},
      {"wigner", cmd_wigner},
      {"quadrature", cmd_quadrature},
      {"verify", cmd_verify},
  };
  if (ctx.command == "cat") {
    const std::string mode = ctx.config.str("mode");
    if (mode == "closed") {
      return cat_closed(ctx);
    }
    if (mode == "open") {
      return cat_open(ctx);
    }
    throw UsageError("cat mode must be closed or open");
  }
  const auto it = table.find(ctx.command);
  if (it == table.end()) {
    throw UsageError("unknown command '" + ctx.command + "'");
  }
  return it->second(ctx);
}

}  // namespace optokerr::cli
