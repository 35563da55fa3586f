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

// One PASS/FAIL line per acceptance criterion, with supporting detail
// lines indented beneath it. Exit status 0 iff every requested criterion
// passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "optokerr/blockade.hpp"
#include "optokerr/catstate.hpp"
#include "optokerr/lindblad.hpp"
#include "optokerr/model.hpp"
#include "optokerr/operators.hpp"
#include "optokerr/quasiprob.hpp"
#include "optokerr/sweeps.hpp"

namespace {

using namespace optokerr;

constexpr double kPi = std::numbers::pi;

int g_jobs = 1;

void detail(const char* fmt, auto... args) {
  std::printf("    ");
  if constexpr (sizeof...(args) == 0) {
    std::fputs(fmt, stdout);
  } else {
    std::printf(fmt, args...);
  }
  std::printf("\n");
}

struct Gate {
  bool ok = true;
  bool check(bool cond, const std::string& what) {
    detail("%s %s", cond ? "ok  " : "MISS", what.c_str());
    ok = ok && cond;
    return cond;
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

SystemParams blockade_params() {
  SystemParams p;
  p.g0 = 0.7;
  p.g_ck = 0.175;
  p.kappa = 0.1;
  p.gamma_m = 0.001;
  p.drive_amp = 0.01 * p.kappa;
  return p;
}

SystemParams cat_params(double omega_c) {
  SystemParams p;
  p.omega_c = omega_c;
  p.g0 = 1.2;
  p.g_ck = 0.3;
  return p;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

// Optimal detunings: closed forms and detected extrema of the steady-state g2 sweep.
bool criterion1() {
  Gate g;
  const SystemParams p = blockade_params();
  const std::vector<double> single{0.594, -0.231, -1.056, -1.881, -2.706, -3.531};
  const std::vector<double> two{1.508, 1.183, 0.858, 0.533, -0.117, -1.092};
  double worst_pred = 0.0;
  for (std::size_t i = 0; i < 6; ++i) {
    worst_pred = std::max(worst_pred,
                          std::abs(optimal_detuning(Resonance::kSinglePhoton,
                                                    table1_single_indices()[i], p) - single[i]));
    worst_pred = std::max(worst_pred, std::abs(optimal_detuning(Resonance::kTwoPhoton,
                                                                table1_two_indices()[i], p) - two[i]));
  }
  g.check(worst_pred <= 1e-3, fmt("closed forms vs table: worst |diff| = %.2e (tol 1e-3)", worst_pred));

  BlockadeOptions opts;
  opts.numeric = true;
  const auto t0 = std::chrono::steady_clock::now();
  const Table1Result r = table1(p, HilbertSpec{4, 30}, -3.8, 1.8, 0.005, opts, g_jobs);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  detail("sweep: %zu detunings, step 0.005, %d worker(s), %.1f s", r.detunings.size(), g_jobs, secs);
  g.check(secs < 600.0, fmt("runtime %.1f s (target < 600 s)", secs));
  detail("mark  predicted  g2-ext(steady)  diff     g2-ext(analytic)  diff     prob-peak  diff");
  double worst_num = 0.0, worst_an = 0.0;
  for (const auto& row : r.rows) {
    const bool s = row.kind == Resonance::kSinglePhoton;
    const double dn = row.detected_numeric - row.predicted;
    const double da = row.detected_analytic - row.predicted;
    const double dp = row.prob_peak_analytic - row.predicted;
    detail("%s%-3d %9.4f  %14.4f  %+7.4f  %16.4f  %+7.4f  %9.4f  %+7.4f", s ? "d" : "p", row.n,
           row.predicted, row.detected_numeric, dn, row.detected_analytic, da,
           row.prob_peak_analytic, dp);
    worst_num = std::isnan(dn) ? INFINITY : std::max(worst_num, std::abs(dn));
    worst_an = std::isnan(da) ? INFINITY : std::max(worst_an, std::abs(da));
  }
  detail("exact-sideband g2 extrema: worst |diff| = %.4f", worst_an);
  g.check(worst_num <= 0.02,
          fmt("steady-state g2 extrema within 0.02 of the closed forms: worst |diff| = %.4f",
              worst_num));
  return g.ok;
}

// Factored propagator against a plain truncated exponential at n_mech = 60.
bool criterion2() {
  Gate g;
  const SystemParams p = cat_params(100.0);
  const HilbertSpec s{3, 60};
  const Operator h = build_h_gom(s, p);
  std::vector<double> times;
  const double period = 2 * kPi / (1.0 - p.g_ck);
  for (int k = 0; k < 20; ++k) {
    times.push_back(period * k / 19.0);
  }
  const auto padded = propagator_expm(times, p, s, 600);
  double worst = 0.0, worst_padded = 0.0, worst_t = 0.0;
  int worst_m = 0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const Operator u = propagator_factored(times[k], p, s);
    const Operator e = expm(h, cplx(0.0, -times[k]));
    for (int m = 0; m <= 2; ++m) {
      const double d = max_abs(u.block(m, m).topLeftCorner(49, 49) - e.block(m, m).topLeftCorner(49, 49));
      const double dp =
          max_abs(u.block(m, m).topLeftCorner(49, 49) - padded[k].block(m, m).topLeftCorner(49, 49));
      if (d > worst) {
        worst = d;
        worst_t = times[k];
        worst_m = m;
      }
      worst_padded = std::max(worst_padded, dp);
    }
  }
  detail("per block m: largest displacement m*|lambda_m| = %.2f, %.2f, %.2f", 0.0,
         2 * p.g0 / (1 - p.g_ck), 2 * 2 * p.g0 / (1 - 2 * p.g_ck));
  detail("reference exponential on a 600-level phonon space: worst = %.2e", worst_padded);
  g.check(worst <= 1e-6,
          fmt("truncated 60-level exponential: worst = %.4e at t = %.3f, m = %d (tol 1e-6)", worst,
              worst_t, worst_m));
  return g.ok;
}

// Lamb-Dicke closed forms and their limit.
bool criterion3() {
  Gate g;
  SystemParams p = blockade_params();
  double worst = 0.0;
  // Ratios stay below 0.5/1.3 so that omega_m - 2 g_ck > 0 everywhere.
  for (double g0 : {0.1, 0.4, 0.7, 1.0, 1.3}) {
    for (double r : {0.0, 0.1, 0.25, 0.35}) {
      for (double kappa : {0.01, 0.1, 0.5}) {
        SystemParams q = p;
        q.g0 = g0;
        q.g_ck = r * g0;
        q.kappa = kappa;
        worst = std::max(worst, std::abs(g2_single_photon_resonance(q) * g2_two_photon_resonance(q) - 1.0));
      }
    }
  }
  g.check(worst <= 1e-12, fmt("spr * tpr = 1: worst |product - 1| = %.2e over 60 settings", worst));
  const double spr = g2_single_photon_resonance(p);
  g.check(std::abs(spr - 0.0029853) <= 1e-6, fmt("g2_spr = %.9f (expected 0.0029853 +- 1e-6)", spr));

  bool reached = false;
  for (double s : {1.0, 0.3, 0.1, 0.05, 0.02}) {
    SystemParams q = p;
    q.g0 = 0.7 * s;
    q.g_ck = 0.175 * s;
    q.kappa = 0.1 * s * s;
    q.drive_amp = 0.01 * q.kappa;
    q.detuning = delta_m(1, q);
    const double exact = photon_stats_exact(q, HilbertSpec{4, 30}).g2;
    const double ld = photon_stats_lamb_dicke(q).g2;
    const double xi2 = xi_m(2, q);
    detail("scale %.2f: xi2 = %.4f  exact g2 = %.6e  Lamb-Dicke g2 = %.6e  ratio = %.5f", s, xi2,
           exact, ld, exact / ld);
    if (xi2 < 0.1) {
      reached = true;
      g.check(std::abs(exact / ld - 1.0) < 0.05, fmt("xi2 = %.3f < 0.1: within 5%%", xi2));
    }
  }
  g.check(reached, "a scaled point with xi2 < 0.1 was evaluated");
  return g.ok;
}

// Resonance-curve locus.
bool criterion4() {
  Gate g;
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    for (double g_ck : {0.0, 0.1, 0.2}) {
      SystemParams p;
      p.g_ck = g_ck;
      p.g0 = resonance_curve_g0(n, g_ck);
      const double d = std::abs(optimal_detuning(Resonance::kSinglePhoton, 0, p) -
                                optimal_detuning(Resonance::kTwoPhoton, n, p));
      detail("n = %d, g_ck = %.1f: g0 = %.10f, |d0 - p%d| = %.2e", n, g_ck, p.g0, n, d);
      worst = std::max(worst, d);
    }
    const double at0 = resonance_curve_g0(n, 0.0);
    g.check(at0 == std::sqrt(n / 2.0), fmt("g_ck = 0: locus(%d) = sqrt(%d/2) exactly", n, n));
  }
  g.check(worst <= 1e-12, fmt("dip and peak coincide: worst = %.2e (tol 1e-12)", worst));
  return g.ok;
}

// Closed-system limit of the open-system pipeline.
bool criterion5() {
  Gate g;
  const SystemParams p = cat_params(100.0);
  const double ts = detection_time(p);
  const double b = std::abs(beta_theta(ts, p).beta);
  g.check(std::abs(b - 3.428571) <= 1e-6 && std::abs(b - 24.0 / 7.0) <= 1e-9,
          fmt("|beta(t_s)| = %.10f", b));
  g.check(b > 3.0, "|beta(t_s)| > 3");
  std::vector<double> times;
  for (int k = 0; k <= 40; ++k) {
    times.push_back(2 * ts * k / 40.0);
  }
  const auto out = evolve_cat(p, HilbertSpec{2, 60}, times);
  double dp = 0.0, df = 0.0, dsum = 0.0;
  int degenerate = 0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const CatRunPoint r = summarize_cat(out[k], times[k], p);
    const CatSnapshot s = cat_snapshot(times[k], p);
    dp = std::max({dp, std::abs(r.prob_plus - s.prob_plus), std::abs(r.prob_minus - s.prob_minus)});
    dsum = std::max(dsum, std::abs(r.prob_plus + r.prob_minus - 1.0));
    for (double f : {r.fid_plus, r.fid_minus}) {
      if (std::isnan(f)) {
        ++degenerate;
      } else {
        df = std::max(df, std::abs(f - 1.0));
      }
    }
  }
  detail("41 times on [0, 2 t_s]; %d degenerate branch(es) skipped (minus branch at t = 0)", degenerate);
  g.check(degenerate == 1, "only the minus branch at t = 0 is degenerate");
  g.check(dp <= 1e-6, fmt("P+- vs closed form: worst = %.2e (tol 1e-6)", dp));
  g.check(df <= 1e-6, fmt("F+- = 1: worst = %.2e (tol 1e-6)", df));
  g.check(dsum <= 1e-12, fmt("P+ + P- = 1: worst = %.2e", dsum));
  return g.ok;
}

// Wigner cross-validation and tomography identity.
bool criterion6() {
  Gate g;
  const SystemParams p = cat_params(1000.0);
  const double ts = detection_time(p);
  const Axis re{-2.0, 5.0, 141};
  const Axis im{-3.5, 3.5, 141};
  for (Branch b : {Branch::kPlus, Branch::kMinus}) {
    const Eigen::VectorXcd v = cat_state_vector(ts, b, p, 60);
    const Eigen::MatrixXcd rho = v * v.adjoint();
    const auto wa = wigner_cat_analytic(ts, b, p, re, im);
    const auto wn = wigner_numeric(rho, re, im);
    double worst = 0.0;
    for (std::size_t i = 0; i < wa.values.size(); ++i) {
      worst = std::max(worst, std::abs(wa.values[i] - wn.values[i]));
    }
    g.check(worst <= 1e-6, fmt("%s branch, 141 x 141 grid: max |analytic - numeric| = %.2e, max |Im W| = %.1e",
                               to_string(b), worst, wn.max_imag));
    detail("%s branch: integral on the default grid = %.6f (the grid clips the beta peak)", to_string(b),
           wa.integral());
    const auto wide = wigner_cat_analytic(ts, b, p, Axis{-4.0, 7.0, 221}, Axis{-4.5, 4.5, 181});
    g.check(std::abs(wide.integral() - 1.0) <= 1e-4,
            fmt("%s branch: integral on [-4,7] x [-4.5,4.5] = %.8f", to_string(b), wide.integral()));

    const double th0 = perpendicular_angle(p);
    double worst_m = 0.0;
    for (double th : {th0, 0.0, 1.0}) {
      for (double x = -3.5; x <= 6.5; x += 0.5) {
        worst_m = std::max(worst_m, std::abs(wigner_marginal(rho, th, x) - quadrature_point(rho, th, x)));
      }
    }
    g.check(worst_m <= 1e-3, fmt("%s branch marginals vs quadrature: worst = %.2e", to_string(b), worst_m));
  }
  Eigen::MatrixXcd vac = Eigen::MatrixXcd::Zero(60, 60);
  vac(0, 0) = 1.0;
  const Eigen::VectorXcd c = coherent_state(cplx(0.8, 0.6), 60);
  double worst_v = 0.0;
  for (const Eigen::MatrixXcd& rho : {vac, Eigen::MatrixXcd(c * c.adjoint())}) {
    for (double th : {0.3, 1.1}) {
      for (double x = -3.5; x <= 4.5; x += 0.5) {
        worst_v = std::max(worst_v, std::abs(wigner_marginal(rho, th, x) - quadrature_point(rho, th, x)));
      }
    }
  }
  g.check(worst_v <= 1e-3, fmt("vacuum and coherent marginals vs quadrature: worst = %.2e", worst_v));
  return g.ok;
}

struct OpenRun {
  std::string label;
  SystemParams params;
  CatRunPoint at_ts;
  double contrast[2] = {0.0, 0.0};   // plus, minus
  double amplitude[2] = {0.0, 0.0};
};

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) {
      return false;
    }
  }
  return true;
}

// Dissipation trends at t_s.
bool criterion7() {
  Gate g;
  std::vector<OpenRun> runs;
  auto add = [&](const std::string& label, double omega_c, double kappa, double gamma, double nbar) {
    OpenRun r;
    r.label = label;
    r.params = cat_params(omega_c);
    r.params.kappa = kappa;
    r.params.gamma_m = gamma;
    r.params.nbar_m = nbar;
    runs.push_back(r);
  };
  for (double k : {0.01, 0.05, 0.1}) add(fmt("kappa = %.2f", k), 100.0, k, 0.01, 0.0);
  for (double gm : {0.01, 0.05, 0.1}) add(fmt("gamma = %.2f", gm), 100.0, 0.1, gm, 0.0);
  for (double n : {1.0, 3.0, 5.0}) add(fmt("nbar = %.0f", n), 100.0, 0.1, 0.01, n);
  for (double k : {0.01, 0.1, 0.5}) add(fmt("kappa = %.2f (phase space)", k), 1000.0, k, 0.01, 0.0);

  const HilbertSpec s{2, 60};
  parallel_for(runs.size(), g_jobs, [&](std::size_t i) {
    OpenRun& r = runs[i];
    const double ts = detection_time(r.params);
    const auto out = evolve_cat(r.params, s, {0.0, ts});
    r.at_ts = summarize_cat(out[1], ts, r.params);
    if (i >= 9) {
      const cplx beta = beta_theta(ts, r.params).beta;
      for (int b = 0; b < 2; ++b) {
        const ConditionalState c = condition_branch(out[1], b == 0 ? Branch::kPlus : Branch::kMinus);
        r.contrast[b] = fringe_contrast(c.rho_b, beta);
        const auto q =
            quadrature_dist_numeric(c.rho_b, perpendicular_angle(r.params), Axis{-4.0, 7.0, 551});
        r.amplitude[b] = oscillation_amplitude(q);
      }
    }
  });

  double p_lo = 1.0, p_hi = 0.0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& r = runs[i];
    detail("%-28s P+ = %.5f  F+ = %.5f  F- = %.5f%s", r.label.c_str(), r.at_ts.prob_plus,
           r.at_ts.fid_plus, r.at_ts.fid_minus,
           i >= 9 ? fmt("  contrast = %.4f/%.4f  amplitude = %.4f/%.4f", r.contrast[0],
                        r.contrast[1], r.amplitude[0], r.amplitude[1]).c_str()
                  : "");
    p_lo = std::min(p_lo, r.at_ts.prob_plus);
    p_hi = std::max(p_hi, r.at_ts.prob_plus);
  }
  const char* names[] = {"kappa", "gamma_m", "nbar"};
  for (int set = 0; set < 3; ++set) {
    std::vector<double> fp, fm;
    for (int j = 0; j < 3; ++j) {
      fp.push_back(runs[set * 3 + j].at_ts.fid_plus);
      fm.push_back(runs[set * 3 + j].at_ts.fid_minus);
    }
    g.check(strictly_decreasing(fp) && strictly_decreasing(fm),
            fmt("F+ and F- strictly decrease across %s", names[set]));
  }
  for (int b = 0; b < 2; ++b) {
    std::vector<double> con, amp;
    for (int j = 9; j < 12; ++j) {
      con.push_back(runs[j].contrast[b]);
      amp.push_back(runs[j].amplitude[b]);
    }
    const char* br = b == 0 ? "plus" : "minus";
    g.check(strictly_decreasing(con), fmt("%s branch: Wigner fringe contrast strictly decreases across kappa", br));
    g.check(strictly_decreasing(amp),
            fmt("%s branch: quadrature oscillation amplitude strictly decreases across kappa", br));
  }
  g.check(p_hi - p_lo < 0.02, fmt("P+(t_s) spread across all settings = %.4f (< 0.02)", p_hi - p_lo));
  return g.ok;
}

// Analytic and master-equation g2 within a factor 1.5 at the six dips.
bool criterion8() {
  Gate g;
  const SystemParams base = blockade_params();
  std::vector<SystemParams> pts;
  for (int n : table1_single_indices()) {
    SystemParams p = base;
    p.detuning = optimal_detuning(Resonance::kSinglePhoton, n, base);
    pts.push_back(p);
  }
  BlockadeOptions opts;
  opts.numeric = true;
  // The outer dips sit next to two-photon resonances with 10+ phonons in a
  // displaced basis, which 30 levels do not hold. Compare at a cutoff whose
  // steady state no longer moves, and show the default cutoff alongside.
  const auto coarse = run_blockade(pts, HilbertSpec{4, 30}, opts, g_jobs);
  const auto rows = run_blockade(pts, HilbertSpec{4, 50}, opts, g_jobs);
  const auto check = run_blockade(pts, HilbertSpec{4, 60}, opts, g_jobs);
  double worst = 1.0;
  double drift = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double ratio = rows[i].numeric.g2 / rows[i].exact.g2;
    const double factor = std::max(ratio, 1.0 / ratio);
    worst = std::isnan(factor) ? INFINITY : std::max(worst, factor);
    drift = std::max(drift, std::abs(check[i].numeric.g2 / rows[i].numeric.g2 - 1.0));
    detail("d%zu at %.4f: exact g2 = %.5f  steady-state g2 = %.5f (n_mech 30: %.5f)  factor = %.3f",
           i, pts[i].detuning, rows[i].exact.g2, rows[i].numeric.g2, coarse[i].numeric.g2, factor);
  }
  g.check(drift <= 1e-3, fmt("steady state converged: n_mech 50 -> 60 changes g2 by %.1e", drift));
  g.check(worst <= 1.5, fmt("worst factor = %.3f (tol 1.5)", worst));
  detail("curve shapes are otherwise covered by criteria 1, 3 and 4");
  return g.ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optokerr acceptance checks"};
  std::vector<int> which;
  g_jobs = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--criterion", which, "criterion number(s), 1-8; default all")
      ->check(CLI::Range(1, 8));
  app.add_option("--jobs", g_jobs, "worker threads")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);
  if (which.empty()) {
    which = {1, 2, 3, 4, 5, 6, 7, 8};
  }
  const std::vector<std::pair<const char*, std::function<bool()>>> table{
      {"optimal detunings table", criterion1},
      {"propagator equivalence", criterion2},
      {"Lamb-Dicke closed forms", criterion3},
      {"resonance-curve locus", criterion4},
      {"cat analytics vs open-system pipeline", criterion5},
      {"Wigner cross-validation", criterion6},
      {"dissipation trends", criterion7},
      {"analytic vs numeric g2 at the dips", criterion8},
  };
  bool all = true;
  for (int c : which) {
    const auto& [name, fn] = table[c - 1];
    std::printf("criterion %d: %s\n", c, name);
    std::fflush(stdout);
    bool ok = false;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      detail("error: %s", e.what());
    }
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", c, name);
    std::fflush(stdout);
    all = all && ok;
  }
  return all ? 0 : 1;
}
