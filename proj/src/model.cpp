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

#include "optokerr/model.hpp"

#include <cmath>
#include <string>

#include "optokerr/errors.hpp"

namespace optokerr {

void validate(const SystemParams& p, int m_max) {
  if (!(p.omega_m > 0.0)) {
    throw DomainError("omega_m must be positive");
  }
  if (p.kappa < 0.0 || p.gamma_m < 0.0 || p.nbar_m < 0.0) {
    throw DomainError("kappa, gamma_m and nbar_m must be non-negative");
  }
  for (int m = 0; m <= m_max; ++m) {
    shifted_mech_freq(m, p);
  }
}

double shifted_mech_freq(int m, const SystemParams& p) {
  const double w = p.omega_m - m * p.g_ck;
  if (!(w > 0.0)) {
    throw SingularDenominator("omega_m - m*g_ck <= 0 at m = " + std::to_string(m));
  }
  return w;
}

double xi_m(int m, const SystemParams& p) { return m * p.g0 / shifted_mech_freq(m, p); }

double delta_m(int m, const SystemParams& p) {
  return p.g0 * p.g0 * m * m / shifted_mech_freq(m, p);
}

double eigen_energy(int m, int n, const SystemParams& p, Frame frame) {
  const double photon = frame == Frame::kLab ? p.omega_c : p.detuning;
  return m * photon + shifted_mech_freq(m, p) * n - delta_m(m, p);
}

double optimal_detuning(Resonance kind, int n, const SystemParams& p) {
  if (kind == Resonance::kSinglePhoton) {
    return delta_m(1, p) - n * shifted_mech_freq(1, p);
  }
  return 0.5 * (delta_m(2, p) - n * shifted_mech_freq(2, p));
}

double resonance_curve_g0(int n, double g_ck, double omega_m) {
  if (n < 1) {
    throw DomainError("resonance_curve_g0: n must be >= 1");
  }
  const double r = g_ck / omega_m;
  if (r < 0.0 || 1.0 - 2.0 * r <= 0.0) {
    throw DomainError("resonance_curve_g0: requires 0 <= g_ck < omega_m/2");
  }
  const double s = 1.0 - 2.0 * r;
  return omega_m * std::sqrt(0.5 * n * s * s * (1.0 - r));
}

SpectralPoint spectral_point(int m, int n, const SystemParams& p) {
  SpectralPoint s;
  s.m = m;
  s.n = n;
  s.xi_m = xi_m(m, p);
  s.delta_m = delta_m(m, p);
  s.energy_lab = eigen_energy(m, n, p, Frame::kLab);
  s.energy_rotating = eigen_energy(m, n, p, Frame::kRotating);
  return s;
}

}  // namespace optokerr
