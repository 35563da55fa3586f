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
#include <vector>

#include <Eigen/Dense>

#include "optokerr/catstate.hpp"
#include "optokerr/model.hpp"

namespace optokerr {

/// Uniform grid of n ≥ 1 points on [lo, hi].
struct Axis {
  double lo = 0.0;
  double hi = 0.0;
  int n = 1;

  [[nodiscard]] double step() const { return n > 1 ? (hi - lo) / (n - 1) : 0.0; }
  [[nodiscard]] double at(int i) const { return n > 1 ? lo + i * step() : lo; }
  [[nodiscard]] std::vector<double> points() const;
};

enum class GridKind { kWigner, kQuadrature };

/// Sampled W(η) on re × im, or P[X(θ)] on re alone. Wigner values are stored
/// with the real-part index outermost: values[i_re * im.n + i_im].
struct PhaseSpaceGrid {
  GridKind kind = GridKind::kWigner;
  Axis re;
  Axis im;
  double theta = 0.0;
  std::vector<double> values;
  /// Largest |Im W| discarded while evaluating; 0 for analytic grids.
  double max_imag = 0.0;

  [[nodiscard]] double at(int i_re, int i_im = 0) const {
    return values[static_cast<std::size_t>(i_re) * (kind == GridKind::kWigner ? im.n : 1) + i_im];
  }
  /// Trapezoid-rule integral of the sampled values.
  [[nodiscard]] double integral() const;
};

/// Analytic W(η) of the pure cat state 𝒩±(|0⟩ ± e^{iϑ}|β⟩) at time t.
double wigner_cat_point(double t, Branch b, const SystemParams& p, cplx eta);
PhaseSpaceGrid wigner_cat_analytic(double t, Branch b, const SystemParams& p, const Axis& re,
                                   const Axis& im);

/// W(η) = (2/π) Tr[ρ D(η) e^{iπb†b} D†(η)] of a mechanical density matrix.
/// Evaluated as (2/π) Σ_{j,k} ρ_jk (−1)^j ⟨k|D(2η)|j⟩; the returned complex
/// value carries the numerical imaginary residue.
cplx wigner_point(const Eigen::MatrixXcd& rho_b, cplx eta);

/// Same quantity from the parity sum Σ_l (−1)^l ⟨l|D†(η) ρ D(η)|l⟩ with the
/// intermediate index running to l_max. Slower; used as a cross-check.
double wigner_point_parity_sum(const Eigen::MatrixXcd& rho_b, cplx eta, int l_max);

/// Throws TruncationLoss when the top Fock population exceeds 1e-6.
PhaseSpaceGrid wigner_numeric(const Eigen::MatrixXcd& rho_b, const Axis& re, const Axis& im);

/// ⟨X(θ)|n⟩ for n < n_max.
Eigen::VectorXcd quadrature_overlaps(double x, double theta, int n_max);

/// |⟨X(θ)|Φ±⟩|² of the analytic cat; the coherent sum stops once terms
/// fall below 1e-14.
double quadrature_cat_point(double t, Branch b, double theta, const SystemParams& p, double x);
PhaseSpaceGrid quadrature_dist_cat(double t, Branch b, double theta, const SystemParams& p,
                                   const Axis& x);

/// ⟨X(θ)|ρ_b|X(θ)⟩. Throws TruncationLoss as wigner_numeric does.
double quadrature_point(const Eigen::MatrixXcd& rho_b, double theta, double x);
PhaseSpaceGrid quadrature_dist_numeric(const Eigen::MatrixXcd& rho_b, double theta, const Axis& x);

/// Marginal of W along the direction perpendicular to X(θ):
/// (1/√2) ∫ W((x/√2 + iv) e^{iθ}) dv, trapezoid on [−v_max, v_max].
double wigner_marginal(const Eigen::MatrixXcd& rho_b, double theta, double x, double v_max = 7.0,
                       int n_v = 701);

/// Angle θ0 = arg β(t_s) − π/2 perpendicular to the line joining the peaks.
double perpendicular_angle(const SystemParams& p);

/// max − min of W on the perpendicular bisector of the segment from 0 to β,
/// η = β/2 + s·iβ/|β| for s ∈ [−half_width, half_width].
double fringe_contrast(const Eigen::MatrixXcd& rho_b, cplx beta, double half_width = 2.0,
                       int n = 401);

/// Largest local maximum minus smallest local minimum of a sampled
/// distribution restricted to |x| ≤ window. Zero when there is no interior
/// minimum, i.e. no interference fringes.
double oscillation_amplitude(const PhaseSpaceGrid& quad, double window = 2.0);

}  // namespace optokerr
