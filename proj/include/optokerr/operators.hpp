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
#include <Eigen/Sparse>

#include "optokerr/model.hpp"

namespace optokerr {

using cplx = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<cplx>;

/// Truncation of the two Fock spaces. Cavity occupations run 0..n_cav−1,
/// phonon occupations 0..n_mech−1.
struct HilbertSpec {
  int n_cav = 4;
  int n_mech = 30;

  [[nodiscard]] int dim() const { return n_cav * n_mech; }
  [[nodiscard]] int index(int m, int n) const { return m * n_mech + n; }
};

/// Throws DomainError unless both cutoffs are at least 2.
void validate(const HilbertSpec& spec);

/// Dense operator on the truncated space, cavity-major ordering
/// i = m·n_mech + n so photon-number blocks are contiguous.
struct Operator {
  HilbertSpec spec;
  Eigen::MatrixXcd matrix;

  [[nodiscard]] SparseMatrix sparse() const;
  [[nodiscard]] Eigen::Block<const Eigen::MatrixXcd> block(int m, int m_prime) const {
    return matrix.block(m * spec.n_mech, m_prime * spec.n_mech, spec.n_mech, spec.n_mech);
  }
};

struct ModeOperators {
  Operator a, a_dag, b, b_dag, n_a, n_b;
};

ModeOperators build_mode_operators(const HilbertSpec& spec);

/// ω_c a†a + ω_M b†b − g0 a†a(b† + b) − g_cK a†a b†b.
Operator build_h_gom(const HilbertSpec& spec, const SystemParams& p);

/// build_h_gom with ω_c replaced by the detuning Δ_c.
Operator build_h_rotating(const HilbertSpec& spec, const SystemParams& p);

/// Rotating-frame Hamiltonian plus the drive Ω(a† + a).
Operator build_h_driven(const HilbertSpec& spec, const SystemParams& p);

/// Driven Hamiltonian with the cavity loss term −i(κ/2)a†a.
Operator build_h_eff(const HilbertSpec& spec, const SystemParams& p);

/// Time-dependent coefficients of the disentangled propagator, indexed by
/// photon number m < n_cav.
struct PropagatorFactors {
  double t = 0.0;
  std::vector<double> mu;
  std::vector<double> nu;
  std::vector<cplx> lambda;
};

PropagatorFactors propagator_factors(double t, const SystemParams& p, const HilbertSpec& spec);

struct PropagatorOptions {
  /// Reverses the sign of the cubic phase. Used only as a negative control
  /// for the verification suite.
  bool flip_nu_sign = false;
};

/// Closed-form U(t) of H_gom, assembled per photon block from exact
/// displacement matrix elements. Entries are those of the untruncated
/// operator restricted to the kept levels.
Operator propagator_factored(double t, const SystemParams& p, const HilbertSpec& spec,
                             PropagatorOptions opts = {});

/// exp(s·A) by scaling and squaring with a Padé approximant.
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a, cplx s = 1.0);
Operator expm(const Operator& a, cplx s = 1.0);

/// exp(−iH_gom t) for each requested time, computed block by block from the
/// eigendecomposition of H_gom on a mechanical space of n_pad ≥ spec.n_mech
/// levels and cropped to spec. With n_pad equal to spec.n_mech this is the
/// plain truncated exponential.
std::vector<Operator> propagator_expm(const std::vector<double>& times, const SystemParams& p,
                                     const HilbertSpec& spec, int n_pad);

}  // namespace optokerr
