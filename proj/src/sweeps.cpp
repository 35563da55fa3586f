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

#include "optokerr/sweeps.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "optokerr/errors.hpp"

namespace optokerr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

PhotonStats nan_stats(StatsMethod m) {
  PhotonStats s;
  s.p0 = s.p1 = s.p2 = s.g2 = kNaN;
  s.method = m;
  return s;
}

void append_error(std::string& acc, const char* stage, const std::exception& e) {
  if (!acc.empty()) {
    acc += "; ";
  }
  acc += stage;
  acc += ": ";
  acc += e.what();
}

template <typename Better>
std::vector<Extremum> extrema(const std::vector<double>& x, const std::vector<double>& y,
                              Better better) {
  if (x.size() != y.size()) {
    throw DimensionMismatch("extrema: x and y differ in length");
  }
  std::vector<Extremum> out;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    const double a = y[i - 1];
    const double c = y[i];
    const double e = y[i + 1];
    if (!std::isfinite(a) || !std::isfinite(c) || !std::isfinite(e)) {
      continue;
    }
    if (better(c, a) && better(c, e)) {
      out.push_back({i, x[i], c});
    }
  }
  return out;
}

}  // namespace

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(n, jobs > 0 ? static_cast<std::size_t>(jobs) : 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first;
  std::mutex mu;
  auto work = [&] {
    for (;;) {
      if (failed.load()) {
        return;
      }
      const std::size_t i = next.fetch_add(1);
      if (i >= n) {
        return;
      }
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first) {
          first = std::current_exception();
        }
        failed.store(true);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back(work);
  }
  for (auto& t : pool) {
    t.join();
  }
  if (first) {
    std::rethrow_exception(first);
  }
}

SystemParams apply_locks(SystemParams p, const ParamLocks& locks) {
  if (locks.g_ck_over_g0) {
    p.g_ck = *locks.g_ck_over_g0 * p.g0;
  }
  if (locks.drive_over_kappa) {
    p.drive_amp = *locks.drive_over_kappa * p.kappa;
  }
  switch (locks.detuning) {
    case DetuningMode::kFixed:
      break;
    case DetuningMode::kSinglePhotonResonance:
      p.detuning = delta_m(1, p);
      break;
    case DetuningMode::kTwoPhotonResonance:
      p.detuning = 0.5 * delta_m(2, p);
      break;
  }
  return p;
}

BlockadeRow evaluate_blockade(const SystemParams& p, const HilbertSpec& spec,
                              const BlockadeOptions& opts) {
  BlockadeRow row;
  row.params = p;
  row.exact = nan_stats(StatsMethod::kExactSideband);
  row.lamb_dicke = nan_stats(StatsMethod::kLambDicke);
  row.numeric = nan_stats(StatsMethod::kMasterEquation);
  if (opts.exact) {
    try {
      row.exact = photon_stats_exact(p, spec);
    } catch (const Error& e) {
      append_error(row.error, "exact", e);
    }
  }
  if (opts.lamb_dicke) {
    try {
      row.lamb_dicke = photon_stats_lamb_dicke(p);
    } catch (const Error& e) {
      append_error(row.error, "lamb-dicke", e);
    }
  }
  if (opts.numeric) {
    try {
      validate(p, spec.n_cav - 1);
      const SteadyStateResult ss = steady_state(make_lindblad(spec, p), opts.steady);
      const Observables o = observables(ss.rho, false);
      row.numeric.p0 = o.p0;
      row.numeric.p1 = o.p1;
      row.numeric.p2 = o.p2;
      row.numeric.g2 = o.g2;
      if (!std::isfinite(o.g2)) {
        throw ZeroPhotonNumber("mean photon number below 1e-14; g2 undefined");
      }
    } catch (const Error& e) {
      append_error(row.error, "numeric", e);
    }
  }
  return row;
}

std::vector<BlockadeRow> run_blockade(const std::vector<SystemParams>& points,
                                      const HilbertSpec& spec, const BlockadeOptions& opts,
                                      int jobs) {
  std::vector<BlockadeRow> rows(points.size());
  parallel_for(points.size(), jobs,
               [&](std::size_t i) { rows[i] = evaluate_blockade(points[i], spec, opts); });
  return rows;
}

std::vector<Extremum> local_minima(const std::vector<double>& x, const std::vector<double>& y) {
  return extrema(x, y, [](double a, double b) { return a < b; });
}

std::vector<Extremum> local_maxima(const std::vector<double>& x, const std::vector<double>& y) {
  return extrema(x, y, [](double a, double b) { return a > b; });
}

std::optional<Extremum> nearest(const std::vector<Extremum>& e, double target) {
  std::optional<Extremum> best;
  for (const auto& c : e) {
    if (!best || std::abs(c.x - target) < std::abs(best->x - target)) {
      best = c;
    }
  }
  return best;
}

Table1Result table1(const SystemParams& p, const HilbertSpec& spec, double lo, double hi,
                    double step, const BlockadeOptions& opts, int jobs) {
  if (!(step > 0.0) || !(hi > lo)) {
    throw DomainError("table1: need lo < hi and a positive step");
  }
  Table1Result r;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<SystemParams> points(count, p);
  r.detunings.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    r.detunings[i] = lo + static_cast<double>(i) * step;
    points[i].detuning = r.detunings[i];
  }
  r.sweep = run_blockade(points, spec, opts, jobs);

  std::vector<double> g2a(count), g2n(count), p1a(count), p1n(count), p2a(count), p2n(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto& row = r.sweep[i];
    g2a[i] = row.exact.g2;
    g2n[i] = row.numeric.g2;
    p1a[i] = row.exact.p1;
    p1n[i] = row.numeric.p1;
    p2a[i] = row.exact.p2;
    p2n[i] = row.numeric.p2;
  }
  const auto dips_a = local_minima(r.detunings, g2a);
  const auto peaks_a = local_maxima(r.detunings, g2a);
  const auto dips_n = local_minima(r.detunings, g2n);
  const auto peaks_n = local_maxima(r.detunings, g2n);
  const auto p1_peaks_a = local_maxima(r.detunings, p1a);
  const auto p1_peaks_n = local_maxima(r.detunings, p1n);
  const auto p2_peaks_a = local_maxima(r.detunings, p2a);
  const auto p2_peaks_n = local_maxima(r.detunings, p2n);
  auto x_or_nan = [](const std::optional<Extremum>& e) { return e ? e->x : kNaN; };

  auto add = [&](Resonance kind, int n) {
    Table1Row row;
    row.kind = kind;
    row.n = n;
    row.predicted = optimal_detuning(kind, n, p);
    const bool single = kind == Resonance::kSinglePhoton;
    const auto a = nearest(single ? dips_a : peaks_a, row.predicted);
    row.detected_analytic = x_or_nan(a);
    row.g2_analytic = a ? a->value : kNaN;
    const auto nn = nearest(single ? dips_n : peaks_n, row.predicted);
    row.detected_numeric = (opts.numeric && nn) ? nn->x : kNaN;
    row.g2_numeric = (opts.numeric && nn) ? nn->value : kNaN;
    row.prob_peak_analytic = x_or_nan(nearest(single ? p1_peaks_a : p2_peaks_a, row.predicted));
    row.prob_peak_numeric =
        opts.numeric ? x_or_nan(nearest(single ? p1_peaks_n : p2_peaks_n, row.predicted)) : kNaN;
    r.rows.push_back(row);
  };
  for (int n : table1_single_indices()) {
    add(Resonance::kSinglePhoton, n);
  }
  for (int n : table1_two_indices()) {
    add(Resonance::kTwoPhoton, n);
  }
  return r;
}

}  // namespace optokerr
