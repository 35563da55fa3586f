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

#include "optokerr/blockade.hpp"

#include <cmath>
#include <string>

#include "optokerr/errors.hpp"
#include "optokerr/specfun.hpp"

namespace optokerr {

namespace {

cplx checked_denominator(double re, double im, const char* what) {
  if (re == 0.0 && im == 0.0) {
    throw SingularDenominator(std::string("resonant denominator with zero width in ") + what);
  }
  return {re, im};
}

void check_tail(const Eigen::VectorXcd& c, const char* what) {
  const int n = static_cast<int>(c.size());
  const int tail = std::max(1, n / 10);
  const double total = c.squaredNorm();
  const double rest = c.tail(tail).squaredNorm();
  if (total > 0.0 && rest > 1e-8 * total) {
    throw NonConvergedSum(std::string("sideband sum for ") + what +
                          " not converged; raise n_mech (tail fraction " +
                          std::to_string(rest / total) + ")");
  }
}

}  // namespace

const char* to_string(StatsMethod m) {
  switch (m) {
    case StatsMethod::kExactSideband:
      return "exact-sideband";
    case StatsMethod::kLambDicke:
      return "lamb-dicke";
    case StatsMethod::kMasterEquation:
      return "master-equation";
  }
  return "unknown";
}

double AmplitudeTable::norm_squared() const {
  return c0.squaredNorm() + c1.squaredNorm() + c2.squaredNorm();
}

AmplitudeTable longtime_amplitudes(const SystemParams& p, const HilbertSpec& spec) {
  validate(spec);
  validate(p, 2);
  const int nm = spec.n_mech;
  const double omega = p.drive_amp;
  AmplitudeTable a;
  if (p.kappa > 0.0 && omega / p.kappa > 0.1) {
    a.warning = "drive_amp/kappa > 0.1: weak-drive expansion may be inaccurate";
  }

  // Rotating-frame energies relative to ε_{0,0} = 0.
  auto eps = [&](int m, int n) { return eigen_energy(m, n, p, Frame::kRotating); };

  a.c0 = Eigen::VectorXcd::Zero(nm);
  a.c0(0) = 1.0;

  Eigen::VectorXcd fc10(nm);
  Eigen::VectorXcd den1(nm);
  for (int l = 0; l < nm; ++l) {
    fc10(l) = franck_condon(l, 1, 0, 0, p);
    den1(l) = checked_denominator(eps(1, l), -0.5 * p.kappa, "C1");
  }
  a.c1 = -omega * fc10.cwiseQuotient(den1);

  const Eigen::VectorXcd inner = fc10.cwiseQuotient(den1);
  a.c2.resize(nm);
  for (int n = 0; n < nm; ++n) {
    cplx s = 0.0;
    for (int l = 0; l < nm; ++l) {
      s += franck_condon(n, 2, l, 1, p) * inner(l);
    }
    const cplx den2 = checked_denominator(eps(2, n), -p.kappa, "C2");
    a.c2(n) = std::sqrt(2.0) * omega * omega * s / den2;
  }

  check_tail(a.c1, "P1");
  check_tail(a.c2, "P2");
  return a;
}

PhotonStats photon_stats_exact(const SystemParams& p, const HilbertSpec& spec) {
  const AmplitudeTable a = longtime_amplitudes(p, spec);
  PhotonStats s;
  s.method = StatsMethod::kExactSideband;
  s.p0 = a.c0.squaredNorm();
  s.p1 = a.c1.squaredNorm();
  s.p2 = a.c2.squaredNorm();
  if (!(s.p1 > 0.0)) {
    throw ZeroPhotonNumber("single-photon probability vanishes; g2 undefined");
  }
  s.g2 = 2.0 * s.p2 / (s.p1 * s.p1);
  return s;
}

PhotonStats photon_stats_lamb_dicke(const SystemParams& p) {
  const double d1 = p.detuning - delta_m(1, p);
  const double d2 = 2.0 * p.detuning - delta_m(2, p);
  const double k2 = p.kappa * p.kappa;
  const double w2 = p.drive_amp * p.drive_amp;
  const double a1 = d1 * d1 + 0.25 * k2;
  const double a2 = d2 * d2 + k2;
  if (a1 == 0.0 || a2 == 0.0) {
    throw SingularDenominator("Lamb-Dicke photon statistics: zero width on resonance");
  }
  PhotonStats s;
  s.method = StatsMethod::kLambDicke;
  s.p0 = 1.0;
  s.p1 = w2 / a1;
  s.p2 = 2.0 * w2 * w2 / (a2 * a1);
  s.g2 = (4.0 * d1 * d1 + k2) / a2;
  return s;
}

double g2_single_photon_resonance(const SystemParams& p) {
  const double d = 2.0 * delta_m(1, p) - delta_m(2, p);
  const double k2 = p.kappa * p.kappa;
  if (d == 0.0 && k2 == 0.0) {
    throw SingularDenominator("g2 at single-photon resonance: zero width and zero shift");
  }
  return k2 / (d * d + k2);
}

double g2_two_photon_resonance(const SystemParams& p) {
  const double d = delta_m(2, p) - 2.0 * delta_m(1, p);
  const double k2 = p.kappa * p.kappa;
  if (k2 == 0.0) {
    throw SingularDenominator("g2 at two-photon resonance requires kappa > 0");
  }
  return (d * d + k2) / k2;
}

}  // namespace optokerr
