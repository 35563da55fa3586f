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

#include <string>
#include <vector>

#include "optokerr/model.hpp"
#include "optokerr/operators.hpp"

namespace optokerr {

struct VerifyConfig {
  SystemParams params;
  HilbertSpec spec;
  /// Evaluation times. Empty means n_times points on [0, 2π/(ω_M − g_cK)].
  std::vector<double> times;
  int n_times = 20;
  /// Mechanical cutoff of the reference exponential. Must be ≥ spec.n_mech.
  int n_pad = 600;
  /// Compared region: photon blocks m ≤ interior_m, phonon indices
  /// n ≤ interior_n. Negative values pick min(2, n_cav − 1) and 4·n_mech/5.
  int interior_m = -1;
  int interior_n = -1;
  double propagator_tol = 1e-6;
  double unitarity_tol = 1e-9;
  double completeness_tol = 1e-10;
  double marginal_tol = 1e-3;
  /// Negative control: reverse the cubic phase of the factored propagator.
  bool flip_nu_sign = false;
};

struct CheckResult {
  std::string name;
  double value = 0.0;  ///< worst deviation found
  double tol = 0.0;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  [[nodiscard]] bool all_passed() const;
};

std::vector<double> verify_times(const VerifyConfig& c);

/// max |U_factored − U_ref| over the interior region and all times, where
/// U_ref is the block eigendecomposition exponential on n_pad levels.
CheckResult check_propagator(const VerifyConfig& c);

/// max |(U†U − I)_ij| over the interior, with U the factored propagator
/// assembled on n_pad phonon levels so the inner sum is complete.
CheckResult check_unitarity(const VerifyConfig& c);

/// max |Σ_l |⟨n|D(ξ^[m'] − ξ^[m])|l⟩|² − 1| over neighbouring photon blocks
/// and n ≤ interior_n, with l summed to n_pad.
CheckResult check_franck_condon_completeness(const VerifyConfig& c);

/// Tomographic identity on vacuum, a coherent state and the + cat at t_s:
/// the integrated Wigner function along the perpendicular direction versus
/// the direct quadrature distribution.
CheckResult check_wigner_marginal(const VerifyConfig& c);

VerifyReport run_verify(const VerifyConfig& c);

}  // namespace optokerr
