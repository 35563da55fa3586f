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

namespace optokerr {

/// Physical parameters of the cavity + mechanical resonator, all in units of
/// the mechanical frequency (omega_m is stored explicitly and is 1 by
/// convention). Rates must be non-negative.
struct SystemParams {
  double omega_c = 100.0;   ///< cavity frequency
  double omega_m = 1.0;     ///< mechanical frequency
  double g0 = 0.0;          ///< radiation-pressure coupling
  double g_ck = 0.0;        ///< cross-Kerr coupling
  double kappa = 0.0;       ///< cavity energy decay rate
  double gamma_m = 0.0;     ///< mechanical damping rate
  double nbar_m = 0.0;      ///< thermal phonon occupation of the bath
  double detuning = 0.0;    ///< Δ_c = ω_c − ω_d
  double drive_amp = 0.0;   ///< Ω
};

/// Throws DomainError for negative rates or a non-positive omega_m, and
/// SingularDenominator when omega_m − m·g_ck ≤ 0 for some m ≤ m_max.
void validate(const SystemParams& p, int m_max);

/// Frequency of the mechanical mode with m photons in the cavity,
/// ω_M − m·g_cK. Throws SingularDenominator when it is not positive.
double shifted_mech_freq(int m, const SystemParams& p);

/// m-photon mechanical displacement ξ^[m] = m g0 / (ω_M − m g_cK).
double xi_m(int m, const SystemParams& p);

/// m-photon energy shift δ^[m] = g0² m² / (ω_M − m g_cK).
double delta_m(int m, const SystemParams& p);

enum class Frame { kLab, kRotating };

/// Eigenvalue of the undriven Hamiltonian for photon number m and displaced
/// phonon number n. The rotating frame replaces ω_c by Δ_c.
double eigen_energy(int m, int n, const SystemParams& p, Frame frame);

enum class Resonance { kSinglePhoton, kTwoPhoton };

/// Drive detuning resonant with |0,0⟩ → |1,ñ(1)⟩ (single) or
/// |0,0⟩ → |2,ñ(2)⟩ (two-photon) for sideband index n.
double optimal_detuning(Resonance kind, int n, const SystemParams& p);

/// Coupling g0 (in units of ω_M = 1) at which the single-photon dip and the
/// n-th two-photon peak coincide, for a given cross-Kerr strength.
double resonance_curve_g0(int n, double g_ck, double omega_m = 1.0);

/// Closed-form spectral data for one (m, n) pair.
struct SpectralPoint {
  int m = 0;
  int n = 0;
  double xi_m = 0.0;
  double delta_m = 0.0;
  double energy_lab = 0.0;
  double energy_rotating = 0.0;
};

SpectralPoint spectral_point(int m, int n, const SystemParams& p);

}  // namespace optokerr
