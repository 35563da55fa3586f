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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "optokerr/errors.hpp"
#include "optokerr/model.hpp"

using optokerr::Frame;
using optokerr::Resonance;
using optokerr::SystemParams;

namespace {

SystemParams blockade_point() {
  SystemParams p;
  p.g0 = 0.7;
  p.g_ck = 0.175;
  p.kappa = 0.1;
  return p;
}

}  // namespace

TEST_CASE("xi_m") {
  const SystemParams p = blockade_point();
  CHECK(optokerr::xi_m(0, p) == 0.0);
  CHECK(optokerr::xi_m(1, p) == doctest::Approx(28.0 / 33.0).epsilon(1e-15));
  SystemParams q = p;
  q.g_ck = 0.0;
  CHECK(optokerr::xi_m(1, q) == doctest::Approx(0.7));
  CHECK(optokerr::xi_m(3, q) == doctest::Approx(2.1));
  q.g_ck = 0.5;
  CHECK_THROWS_AS(optokerr::xi_m(2, q), optokerr::SingularDenominator);
}

TEST_CASE("delta_m") {
  const SystemParams p = blockade_point();
  CHECK(optokerr::delta_m(0, p) == 0.0);
  CHECK(optokerr::delta_m(1, p) == doctest::Approx(0.5939393939393939).epsilon(1e-14));
  CHECK(optokerr::delta_m(2, p) == doctest::Approx(3.015384615384615).epsilon(1e-14));
  CHECK(std::abs(optokerr::delta_m(1, p) - 0.594) < 1e-3);
  CHECK(std::abs(optokerr::delta_m(2, p) / 2 - 1.508) < 1e-3);
  SystemParams q = p;
  q.g_ck = 0.0;
  CHECK(optokerr::delta_m(3, q) == doctest::Approx(9 * 0.49));
}

TEST_CASE("eigen_energy") {
  SystemParams p = blockade_point();
  for (int n = 0; n < 6; ++n) {
    CHECK(optokerr::eigen_energy(0, n, p, Frame::kLab) == doctest::Approx(n));
  }
  CHECK(optokerr::eigen_energy(2, 3, p, Frame::kLab) ==
        doctest::Approx(2 * p.omega_c + 0.65 * 3 - 3.015384615384615));

  p.detuning = optokerr::optimal_detuning(Resonance::kSinglePhoton, 1, p);
  CHECK(std::abs(optokerr::eigen_energy(1, 1, p, Frame::kRotating)) < 1e-12);
  p.detuning = -0.231;
  CHECK(std::abs(optokerr::eigen_energy(1, 1, p, Frame::kRotating)) < 1e-3);
  p.detuning = 1.183;
  CHECK(std::abs(optokerr::eigen_energy(2, 1, p, Frame::kRotating)) < 2e-3);
}

TEST_CASE("optimal_detuning reproduces the tabulated values") {
  const SystemParams p = blockade_point();
  const std::vector<double> single_tab{0.594, -0.231, -1.056, -1.881, -2.706, -3.531};
  const std::vector<double> single_ref{0.59393939393939, -0.23106060606061, -1.05606060606061,
                                       -1.88106060606061, -2.70606060606061, -3.53106060606061};
  for (int n = 0; n < 6; ++n) {
    const double d = optokerr::optimal_detuning(Resonance::kSinglePhoton, n, p);
    CHECK(std::abs(d - single_tab[n]) <= 1e-3);
    CHECK(std::abs(d - single_ref[n]) <= 1e-12);
  }
  const std::vector<int> idx{0, 1, 2, 3, 5, 8};
  const std::vector<double> two_tab{1.508, 1.183, 0.858, 0.533, -0.117, -1.092};
  const std::vector<double> two_ref{1.50769230769231, 1.18269230769231, 0.85769230769231,
                                    0.53269230769231, -0.11730769230769, -1.09230769230769};
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const double d = optokerr::optimal_detuning(Resonance::kTwoPhoton, idx[i], p);
    CHECK(std::abs(d - two_tab[i]) <= 1e-3);
    CHECK(std::abs(d - two_ref[i]) <= 1e-12);
  }
  SystemParams q = p;
  q.g_ck = 0.0;
  CHECK(optokerr::optimal_detuning(Resonance::kSinglePhoton, 0, q) == doctest::Approx(0.49));
}

TEST_CASE("detuning spacing") {
  const SystemParams p = blockade_point();
  for (int n = 0; n < 8; ++n) {
    const double ds = optokerr::optimal_detuning(Resonance::kSinglePhoton, n, p) -
                      optokerr::optimal_detuning(Resonance::kSinglePhoton, n + 1, p);
    const double dt = optokerr::optimal_detuning(Resonance::kTwoPhoton, n, p) -
                      optokerr::optimal_detuning(Resonance::kTwoPhoton, n + 1, p);
    CHECK(ds == doctest::Approx(1.0 - 0.175).epsilon(1e-13));
    CHECK(dt == doctest::Approx((1.0 - 0.35) / 2).epsilon(1e-13));
  }
}

TEST_CASE("resonance_curve_g0") {
  CHECK(optokerr::resonance_curve_g0(2, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(optokerr::resonance_curve_g0(1, 0.0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(optokerr::resonance_curve_g0(1, 0.1) ==
        doctest::Approx(0.5366563145999496).epsilon(1e-14));
  CHECK_THROWS_AS(optokerr::resonance_curve_g0(1, 0.5), optokerr::DomainError);
  CHECK_THROWS_AS(optokerr::resonance_curve_g0(0, 0.1), optokerr::DomainError);
}

TEST_CASE("the locus makes the single dip and the n-th two-photon peak coincide") {
  for (int n = 1; n <= 3; ++n) {
    for (double g_ck : {0.0, 0.1, 0.2, 0.3, 0.45}) {
      SystemParams p;
      p.g_ck = g_ck;
      p.g0 = optokerr::resonance_curve_g0(n, g_ck);
      const double d_single = optokerr::optimal_detuning(Resonance::kSinglePhoton, 0, p);
      const double d_two = optokerr::optimal_detuning(Resonance::kTwoPhoton, n, p);
      CHECK(std::abs(d_single - d_two) <= 1e-12);
    }
  }
}

TEST_CASE("validate") {
  SystemParams p = blockade_point();
  CHECK_NOTHROW(optokerr::validate(p, 3));
  CHECK_THROWS_AS(optokerr::validate(p, 6), optokerr::SingularDenominator);
  p.kappa = -0.1;
  CHECK_THROWS_AS(optokerr::validate(p, 3), optokerr::DomainError);
  p = blockade_point();
  p.omega_m = 0.0;
  CHECK_THROWS_AS(optokerr::validate(p, 3), optokerr::DomainError);
  p = blockade_point();
  p.nbar_m = -1.0;
  CHECK_THROWS_AS(optokerr::validate(p, 3), optokerr::DomainError);
}

TEST_CASE("spectral_point bundles the closed forms") {
  SystemParams p = blockade_point();
  p.detuning = 0.3;
  const auto s = optokerr::spectral_point(2, 4, p);
  CHECK(s.m == 2);
  CHECK(s.n == 4);
  CHECK(s.xi_m == doctest::Approx(optokerr::xi_m(2, p)));
  CHECK(s.delta_m == doctest::Approx(optokerr::delta_m(2, p)));
  CHECK(s.energy_lab == doctest::Approx(optokerr::eigen_energy(2, 4, p, Frame::kLab)));
  CHECK(s.energy_rotating == doctest::Approx(optokerr::eigen_energy(2, 4, p, Frame::kRotating)));
}
