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

#include <Eigen/Dense>

#include "optokerr/model.hpp"

namespace optokerr {

using cplx = std::complex<double>;

/// ln(n!).
double log_factorial(int n);

/// Associated Laguerre polynomial L_n^k(x), forward three-term recurrence.
double laguerre_assoc(int n, int k, double x);

/// Physicists' Hermite polynomial H_n(x).
double hermite(int n, double x);

/// Normalized harmonic-oscillator wavefunction
/// ψ_n(x) = H_n(x) e^{−x²/2} / sqrt(√π 2^n n!), computed in log space.
double hermite_function(int n, double x);

/// Fock-basis matrix element ⟨n|D(x)|l⟩ of D(x) = exp(x b† − x* b).
///
/// Uses the closed Laguerre form with the factorial ratio and the power of
/// |x| accumulated as a logarithm, so large n, l do not overflow.
cplx displacement_element(int n, int l, cplx x);

/// Dense [⟨n|D(x)|l⟩] for n, l < dim. No truncation is applied to the
/// operator itself: each entry is the exact infinite-space element.
Eigen::MatrixXcd displacement_matrix(int dim, cplx x);

/// Franck–Condon overlap ⟨ñ(m)|l̃(m′)⟩ between displaced number states of the
/// m- and m′-photon mechanical wells.
cplx franck_condon(int n, int m, int l, int m_prime, const SystemParams& p);

/// First-order (Lamb–Dicke) expansion of franck_condon in ξ^[m] − ξ^[m′].
double franck_condon_lamb_dicke(int n, int m, int l, int m_prime, const SystemParams& p);

}  // namespace optokerr
