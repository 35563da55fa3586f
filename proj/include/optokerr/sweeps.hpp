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

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "optokerr/blockade.hpp"
#include "optokerr/lindblad.hpp"
#include "optokerr/model.hpp"
#include "optokerr/operators.hpp"

namespace optokerr {

/// Runs fn(i) for i in [0, n) on up to `jobs` threads. Each index is
/// handled exactly once; callers write results into slot i so the output
/// order never depends on scheduling. The first exception is rethrown
/// after all workers stop.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

enum class DetuningMode { kFixed, kSinglePhotonResonance, kTwoPhotonResonance };

/// Parameter couplings held fixed while another quantity is swept.
struct ParamLocks {
  std::optional<double> g_ck_over_g0;
  std::optional<double> drive_over_kappa;
  DetuningMode detuning = DetuningMode::kFixed;
};

/// Applies the locks in order: g_ck, then drive, then detuning.
SystemParams apply_locks(SystemParams p, const ParamLocks& locks);

struct BlockadeOptions {
  bool exact = true;
  bool lamb_dicke = true;
  bool numeric = false;
  SteadyStateOptions steady;
};

/// One evaluated parameter point. Failed evaluations leave NaN in the
/// affected fields and a message in `error`.
struct BlockadeRow {
  SystemParams params;
  PhotonStats exact;
  PhotonStats lamb_dicke;
  PhotonStats numeric;
  std::string error;
};

BlockadeRow evaluate_blockade(const SystemParams& p, const HilbertSpec& spec,
                              const BlockadeOptions& opts);

std::vector<BlockadeRow> run_blockade(const std::vector<SystemParams>& points,
                                      const HilbertSpec& spec, const BlockadeOptions& opts,
                                      int jobs);

struct Extremum {
  std::size_t index = 0;
  double x = 0.0;
  double value = 0.0;
};

/// Strict discrete local minima (maxima) of y(x), ignoring non-finite
/// samples and their neighbours.
std::vector<Extremum> local_minima(const std::vector<double>& x, const std::vector<double>& y);
std::vector<Extremum> local_maxima(const std::vector<double>& x, const std::vector<double>& y);

/// Extremum closest in x to target; nullopt when the list is empty.
std::optional<Extremum> nearest(const std::vector<Extremum>& e, double target);

/// Sideband indices listed for the two rows of the detuning table.
inline const std::vector<int>& table1_single_indices() {
  static const std::vector<int> v{0, 1, 2, 3, 4, 5};
  return v;
}
inline const std::vector<int>& table1_two_indices() {
  static const std::vector<int> v{0, 1, 2, 3, 5, 8};
  return v;
}

struct Table1Row {
  Resonance kind = Resonance::kSinglePhoton;
  int n = 0;
  double predicted = 0.0;
  double detected_analytic = 0.0;  ///< NaN when not found
  double detected_numeric = 0.0;   ///< NaN when not computed or not found
  double g2_analytic = 0.0;        ///< exact-sideband g2 at the detected point
  double g2_numeric = 0.0;         ///< master-equation g2 at the detected point
  /// Nearest local maximum of P1 (single) or P2 (two-photon), the
  /// probability peaks the g2 extrema inherit. NaN when absent.
  double prob_peak_analytic = 0.0;
  double prob_peak_numeric = 0.0;
};

struct Table1Result {
  std::vector<double> detunings;
  std::vector<BlockadeRow> sweep;
  std::vector<Table1Row> rows;
};

/// Detuning sweep on [lo, hi] with the given step, then detection of g2
/// dips (single-photon rows) and peaks (two-photon rows) nearest to each
/// predicted detuning. The matching probability peaks are located too.
Table1Result table1(const SystemParams& p, const HilbertSpec& spec, double lo, double hi,
                    double step, const BlockadeOptions& opts, int jobs);

}  // namespace optokerr
