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

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "optokerr/lindblad.hpp"
#include "optokerr/model.hpp"
#include "optokerr/operators.hpp"

namespace optokerr {

enum class Branch { kPlus, kMinus };

inline double branch_sign(Branch b) { return b == Branch::kPlus ? 1.0 : -1.0; }
const char* to_string(Branch b);

struct BetaTheta {
  cplx beta;
  double theta = 0.0;
};

/// Mechanical displacement β(t) and phase ϑ(t) of the one-photon branch
/// when the system starts in (|0⟩ + |1⟩)|0⟩/√2.
BetaTheta beta_theta(double t, const SystemParams& p);

/// First time of maximal displacement, π/(ω_M − g_cK).
double detection_time(const SystemParams& p);

struct CatSnapshot {
  double t = 0.0;
  cplx beta;
  double theta = 0.0;
  /// 𝒩±; +∞ on a branch whose norm vanishes.
  double norm_plus = 0.0;
  double norm_minus = 0.0;
  double prob_plus = 0.0;
  double prob_minus = 0.0;
};

/// Never throws for degenerate branches; their probability is reported as 0.
CatSnapshot cat_snapshot(double t, const SystemParams& p);

/// 𝒩± for one branch. Throws DegenerateCat when 1 ± cos ϑ e^{−|β|²/2} < 1e-12.
double cat_norm(double t, Branch b, const SystemParams& p);

/// Fock amplitudes of |β⟩ on n_mech levels. Throws TruncationLoss when the
/// discarded tail weight exceeds 1e-8.
Eigen::VectorXcd coherent_state(cplx beta, int n_mech);

/// 𝒩±(|0⟩ ± e^{iϑ}|β⟩) on n_mech levels.
Eigen::VectorXcd cat_state_vector(double t, Branch b, const SystemParams& p, int n_mech);

struct ClosedCheckReport {
  double t = 0.0;
  double max_deviation = 0.0;         ///< max |ψ_factored − ψ_analytic|
  double branch_norm_deviation = 0.0;  ///< | ‖one-photon part‖ − 1/√2 |
  bool passed = false;
};

/// Applies the factored propagator to (|0⟩ + |1⟩)|0⟩/√2 and compares with
/// [|0,0⟩ + e^{iϑ}|1⟩|β⟩]/√2.
ClosedCheckReport closed_evolution_check(double t, const SystemParams& p, const HilbertSpec& spec,
                                         double tol = 1e-8);

struct ConditionalState {
  Branch branch = Branch::kPlus;
  Eigen::MatrixXcd theta;  ///< Θ^± on the mechanical space
  Eigen::MatrixXcd rho_b;  ///< Θ^± / (2 P±)
  double prob = 0.0;       ///< P±
};

/// P+ and P− from the full density matrix; no degeneracy check.
std::pair<double, double> branch_probabilities(const DensityMatrix& rho);

/// Mechanical state conditioned on detecting the cavity in |±⟩. Throws
/// DegenerateBranch when P± < 1e-12.
ConditionalState condition_branch(const DensityMatrix& rho, Branch b);

/// Both branches; throws DegenerateBranch if either is degenerate.
std::pair<ConditionalState, ConditionalState> condition_open_system(const DensityMatrix& rho);

/// ⟨Φ±(t)|ρ_b^±|Φ±(t)⟩ from the Θ double sum with coherent-state
/// coefficients.
double fidelity_vs_target(const ConditionalState& c, double t, const SystemParams& p);

/// Same quantity by direct vector–matrix–vector contraction.
double fidelity_direct(const ConditionalState& c, double t, const SystemParams& p);

/// (|0⟩ + |1⟩)|0⟩/√2 as a density matrix.
DensityMatrix cat_initial_state(const HilbertSpec& spec);

/// Master-equation evolution of the cat protocol under H_gom with the
/// standard channels. The free cavity rotation is integrated out and
/// restored analytically, which is exact because a†a commutes with H_gom
/// and with every dissipator.
std::vector<DensityMatrix> evolve_cat(const SystemParams& p, const HilbertSpec& spec,
                                      const std::vector<double>& times,
                                      const EvolveOptions& opts = {});

struct CatRunPoint {
  double t = 0.0;
  double prob_plus = 0.0;
  double prob_minus = 0.0;
  double fid_plus = 0.0;   ///< NaN when the branch is degenerate
  double fid_minus = 0.0;  ///< NaN when the branch is degenerate
  double trace = 0.0;
};

CatRunPoint summarize_cat(const DensityMatrix& rho, double t, const SystemParams& p);

}  // namespace optokerr
