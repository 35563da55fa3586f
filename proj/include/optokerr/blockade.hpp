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

#include <Eigen/Dense>

#include "optokerr/model.hpp"
#include "optokerr/operators.hpp"

namespace optokerr {

enum class StatsMethod { kExactSideband, kLambDicke, kMasterEquation };

const char* to_string(StatsMethod m);

struct PhotonStats {
  double p0 = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  double g2 = 0.0;
  StatsMethod method = StatsMethod::kExactSideband;
};

/// Long-time weak-drive amplitudes in the displaced bases of each photon
/// block, with the fast phases dropped. c0 is the initial phonon vacuum.
struct AmplitudeTable {
  Eigen::VectorXcd c0;
  Eigen::VectorXcd c1;
  Eigen::VectorXcd c2;
  /// Non-empty when Ω/κ exceeds 0.1 and the perturbative result is suspect.
  std::string warning;

  /// Σ|C|² over all three blocks; 1 up to O(Ω²/κ²).
  [[nodiscard]] double norm_squared() const;
};

/// Sideband sums are truncated at spec.n_mech. Throws NonConvergedSum when
/// the last 10% of terms carry more than 1e-8 of P1 or P2, and
/// SingularDenominator when a resonance denominator vanishes.
AmplitudeTable longtime_amplitudes(const SystemParams& p, const HilbertSpec& spec);

/// P1 = Σ|C1|², P2 = Σ|C2|², g2 = 2 P2 / P1².
PhotonStats photon_stats_exact(const SystemParams& p, const HilbertSpec& spec);

/// First-order sideband closed forms.
PhotonStats photon_stats_lamb_dicke(const SystemParams& p);

/// g2 with the drive on the single-photon resonance Δ_c = δ^[1].
double g2_single_photon_resonance(const SystemParams& p);

/// g2 with the drive on the two-photon resonance 2Δ_c = δ^[2].
double g2_two_photon_resonance(const SystemParams& p);

}  // namespace optokerr
