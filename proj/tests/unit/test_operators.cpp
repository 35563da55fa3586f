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
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "optokerr/errors.hpp"
#include "optokerr/model.hpp"
#include "optokerr/operators.hpp"
#include "optokerr/specfun.hpp"

using optokerr::cplx;
using optokerr::HilbertSpec;
using optokerr::SystemParams;

namespace {

constexpr double kPi = std::numbers::pi;

SystemParams blockade_point() {
  SystemParams p;
  p.g0 = 0.7;
  p.g_ck = 0.175;
  p.kappa = 0.1;
  p.drive_amp = 0.05;
  p.detuning = 0.4;
  return p;
}

SystemParams cat_point() {
  SystemParams p;
  p.g0 = 1.2;
  p.g_ck = 0.3;
  return p;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

// Rows whose displaced images stay well inside a truncated basis of size dim.
int interior_rows(int dim, double shift) {
  const double r = std::sqrt(static_cast<double>(dim)) - shift - 4.0;
  return r > 0.0 ? static_cast<int>(r * r) : 0;
}

double hermiticity(const Eigen::MatrixXcd& m) { return max_abs(m - m.adjoint()); }

// Max deviation over blocks m <= m_max, phonon indices n, l <= n_max.
double interior_dev(const optokerr::Operator& a, const optokerr::Operator& b, int m_max,
                    int n_max) {
  double worst = 0.0;
  for (int m = 0; m <= m_max; ++m) {
    worst = std::max(worst, max_abs(a.block(m, m).topLeftCorner(n_max + 1, n_max + 1) -
                                    b.block(m, m).topLeftCorner(n_max + 1, n_max + 1)));
  }
  return worst;
}

}  // namespace

TEST_CASE("HilbertSpec") {
  const HilbertSpec s{3, 7};
  CHECK(s.dim() == 21);
  CHECK(s.index(2, 4) == 18);
  CHECK_THROWS_AS(optokerr::validate(HilbertSpec{1, 10}), optokerr::DomainError);
  CHECK_THROWS_AS(optokerr::validate(HilbertSpec{3, 1}), optokerr::DomainError);
}

TEST_CASE("mode operators") {
  const HilbertSpec s{4, 6};
  const auto ops = optokerr::build_mode_operators(s);
  CHECK(ops.a.matrix(s.index(0, 2), s.index(1, 2)) == cplx(1.0));
  CHECK(ops.b.matrix(s.index(2, 3), s.index(2, 4)) == cplx(2.0));
  CHECK(max_abs(ops.a_dag.matrix - ops.a.matrix.adjoint()) == 0.0);
  for (int m = 0; m < s.n_cav; ++m) {
    for (int n = 0; n < s.n_mech; ++n) {
      CHECK(ops.n_a.matrix(s.index(m, n), s.index(m, n)) == cplx(m));
      CHECK(ops.n_b.matrix(s.index(m, n), s.index(m, n)) == cplx(n));
    }
  }
  CHECK(max_abs(ops.n_a.matrix - Eigen::MatrixXcd(ops.n_a.matrix.diagonal().asDiagonal())) == 0.0);
  const Eigen::MatrixXcd comm = ops.a.matrix * ops.a_dag.matrix - ops.a_dag.matrix * ops.a.matrix;
  for (int i = 0; i < s.dim(); ++i) {
    const double expect = i < s.index(s.n_cav - 1, 0) ? 1.0 : -(s.n_cav - 1.0);
    CHECK(comm(i, i).real() == doctest::Approx(expect));
  }
  CHECK(max_abs(comm - Eigen::MatrixXcd(comm.diagonal().asDiagonal())) == 0.0);
  CHECK(ops.a.sparse().nonZeros() == (s.n_cav - 1) * s.n_mech);
}

TEST_CASE("H_gom") {
  const HilbertSpec s{3, 60};
  SystemParams free;
  const auto h0 = optokerr::build_h_gom(s, free);
  for (int m = 0; m < s.n_cav; ++m) {
    for (int n = 0; n < s.n_mech; ++n) {
      CHECK(h0.matrix(s.index(m, n), s.index(m, n)).real() ==
            doctest::Approx(m * free.omega_c + n));
    }
  }
  CHECK(max_abs(h0.matrix - Eigen::MatrixXcd(h0.matrix.diagonal().asDiagonal())) == 0.0);

  const SystemParams p = blockade_point();
  const auto h = optokerr::build_h_gom(s, p);
  CHECK(hermiticity(h.matrix) <= 1e-12);
  CHECK(h.matrix(s.index(2, 5), s.index(2, 4)).real() == doctest::Approx(-0.7 * 2 * std::sqrt(5.0)));
  const auto ops = optokerr::build_mode_operators(s);
  CHECK(max_abs(ops.n_a.matrix * h.matrix - h.matrix * ops.n_a.matrix) == 0.0);

  // Low-lying levels of a wider basis against the closed-form spectrum.
  const HilbertSpec wide{3, 200};
  const auto hw = optokerr::build_h_gom(wide, p);
  for (int m = 0; m < wide.n_cav; ++m) {
    const Eigen::MatrixXcd blk = hw.block(m, m);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(blk);
    const int levels = interior_rows(wide.n_mech, std::abs(optokerr::xi_m(m, p)));
    REQUIRE(levels >= 30);
    for (int n = 0; n < levels; ++n) {
      CHECK(std::abs(es.eigenvalues()(n) -
                     optokerr::eigen_energy(m, n, p, optokerr::Frame::kLab)) <= 1e-8);
    }
  }
}

TEST_CASE("rotating and driven Hamiltonians") {
  const HilbertSpec s{4, 12};
  SystemParams p = blockade_point();
  const auto hr = optokerr::build_h_rotating(s, p);
  const auto hd = optokerr::build_h_driven(s, p);
  CHECK(hr.matrix(s.index(2, 0), s.index(2, 0)).real() ==
        doctest::Approx(2 * p.detuning));
  CHECK(hermiticity(hd.matrix) <= 1e-12);
  const Eigen::MatrixXcd drive = hd.matrix - hr.matrix;
  for (int m = 0; m < s.n_cav; ++m) {
    for (int mp = 0; mp < s.n_cav; ++mp) {
      const double blk = max_abs(drive.block(m * s.n_mech, mp * s.n_mech, s.n_mech, s.n_mech));
      if (std::abs(m - mp) == 1) {
        CHECK(blk == doctest::Approx(p.drive_amp * std::sqrt(std::max(m, mp))));
      } else {
        CHECK(blk == 0.0);
      }
    }
  }
  p.drive_amp = 0.0;
  CHECK(max_abs(optokerr::build_h_driven(s, p).matrix - optokerr::build_h_rotating(s, p).matrix) ==
        0.0);
}

TEST_CASE("H_eff") {
  const HilbertSpec s{3, 20};
  SystemParams p = blockade_point();
  const auto he = optokerr::build_h_eff(s, p);
  const auto hd = optokerr::build_h_driven(s, p);
  const Eigen::MatrixXcd anti = (he.matrix - he.matrix.adjoint()) / cplx(0.0, 2.0);
  for (int m = 0; m < s.n_cav; ++m) {
    for (int n = 0; n < s.n_mech; ++n) {
      CHECK(he.matrix(s.index(m, n), s.index(m, n)).imag() == doctest::Approx(-p.kappa * m / 2));
      CHECK(anti(s.index(m, n), s.index(m, n)).real() == doctest::Approx(-p.kappa * m / 2));
    }
  }
  CHECK(max_abs(he.matrix.real() - hd.matrix.real()) == 0.0);

  p.drive_amp = 0.0;
  const auto undriven = optokerr::build_h_eff(s, p);
  for (int m = 0; m < s.n_cav; ++m) {
    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(Eigen::MatrixXcd(undriven.block(m, m)));
    for (int i = 0; i < s.n_mech; ++i) {
      CHECK(es.eigenvalues()(i).imag() == doctest::Approx(-p.kappa * m / 2).epsilon(1e-10));
    }
  }
  p.kappa = 0.0;
  CHECK(hermiticity(optokerr::build_h_eff(s, p).matrix) <= 1e-12);
}

TEST_CASE("propagator factors") {
  const SystemParams p = cat_point();
  const HilbertSpec s{3, 10};
  const auto f0 = optokerr::propagator_factors(0.0, p, s);
  for (int m = 0; m < s.n_cav; ++m) {
    CHECK(f0.mu[m] == 0.0);
    CHECK(f0.nu[m] == 0.0);
    CHECK(std::abs(f0.lambda[m]) == 0.0);
  }
  const double ts = kPi / 0.7;
  const auto fs = optokerr::propagator_factors(ts, p, s);
  CHECK(std::abs(fs.lambda[1] - cplx(1.2 / 0.7 * 2, 0.0)) < 1e-12);
  CHECK(std::abs(fs.lambda[0] - 1.2 * (1.0 - std::polar(1.0, -ts))) < 1e-12);
  for (int m = 0; m < s.n_cav; ++m) {
    const double w = 1.0 - m * p.g_ck;
    for (int k = 1; k <= 3; ++k) {
      CHECK(std::abs(optokerr::propagator_factors(2 * kPi * k / w, p, s).lambda[m]) < 1e-12);
    }
    const double n1 = optokerr::propagator_factors(1.0, p, s).nu[m];
    CHECK(optokerr::propagator_factors(3.7, p, s).nu[m] == doctest::Approx(3.7 * n1));
    CHECK(n1 == doctest::Approx(p.g_ck * p.g0 * p.g0 / (w * w)));
  }
  CHECK(fs.mu[1] == doctest::Approx(1.44 * (ts - std::sin(0.7 * ts)) / 0.49));
  SystemParams bad = p;
  bad.g_ck = 0.6;
  CHECK_THROWS_AS(optokerr::propagator_factors(1.0, bad, s), optokerr::SingularDenominator);
}

TEST_CASE("factored propagator: identity, blocks, unitarity") {
  const SystemParams p = cat_point();
  const HilbertSpec s{3, 60};
  const auto u0 = optokerr::propagator_factored(0.0, p, s);
  CHECK(max_abs(u0.matrix - Eigen::MatrixXcd::Identity(s.dim(), s.dim())) <= 1e-14);

  // Unitarity on a spec wide enough for every block.
  const HilbertSpec wide{3, 400};
  for (double t : {0.9, 3.1, 4.487989505128276, 7.5}) {
    const auto f = optokerr::propagator_factors(t, p, wide);
    const auto u = optokerr::propagator_factored(t, p, s);
    for (int m = 0; m < s.n_cav; ++m) {
      for (int mp = 0; mp < s.n_cav; ++mp) {
        if (m != mp) {
          CHECK(max_abs(u.block(m, mp)) == 0.0);
        }
      }
    }
    const auto uw = optokerr::propagator_factored(t, p, wide);
    for (int m = 0; m < wide.n_cav; ++m) {
      const Eigen::MatrixXcd b = uw.block(m, m);
      const int interior = interior_rows(wide.n_mech, m * std::abs(f.lambda[m]));
      REQUIRE(interior >= 10);
      const Eigen::MatrixXcd g = (b.adjoint() * b).topLeftCorner(interior, interior);
      CHECK(max_abs(g - Eigen::MatrixXcd::Identity(interior, interior)) <= 1e-8);
    }
  }
}

TEST_CASE("factored propagator matches a padded exponential") {
  const SystemParams p = cat_point();
  const HilbertSpec s{3, 60};
  const std::vector<double> times{0.0, 1.3, 4.487989505128276, 6.0, 2 * kPi / 0.7};
  const auto ref = optokerr::propagator_expm(times, p, s, 600);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const auto u = optokerr::propagator_factored(times[k], p, s);
    CHECK(interior_dev(u, ref[k], 2, s.n_mech - 12) <= 1e-6);
  }
  CHECK_THROWS_AS(optokerr::propagator_expm(times, p, s, 40), optokerr::DomainError);
}

TEST_CASE("reversed cubic phase is detected") {
  const SystemParams p = cat_point();
  const HilbertSpec s{3, 60};
  const std::vector<double> times{4.487989505128276};
  const auto ref = optokerr::propagator_expm(times, p, s, 600);
  optokerr::PropagatorOptions flip;
  flip.flip_nu_sign = true;
  const auto u = optokerr::propagator_factored(times[0], p, s, flip);
  CHECK(interior_dev(u, ref[0], 2, 48) > 0.1);
}

TEST_CASE("factored propagator composes and is stable under truncation") {
  SystemParams p;
  p.g0 = 0.5;
  p.g_ck = 0.1;
  const HilbertSpec s{3, 100};
  const auto u1 = optokerr::propagator_factored(1.7, p, s);
  const auto u2 = optokerr::propagator_factored(2.9, p, s);
  const auto u12 = optokerr::propagator_factored(4.6, p, s);
  const optokerr::Operator prod{s, u1.matrix * u2.matrix};
  CHECK(interior_dev(prod, u12, 2, 40) <= 1e-6);

  const HilbertSpec bigger{3, 110};
  const auto ub = optokerr::propagator_factored(4.6, p, bigger);
  double worst = 0.0;
  for (int m = 0; m < 3; ++m) {
    worst = std::max(worst, max_abs(u12.block(m, m).topLeftCorner(80, 80) -
                                    ub.block(m, m).topLeftCorner(80, 80)));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("expm") {
  const Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(5, 5);
  CHECK(max_abs(optokerr::expm(z) - Eigen::MatrixXcd::Identity(5, 5)) == 0.0);
  Eigen::MatrixXcd one(1, 1);
  one(0, 0) = 1.0;
  CHECK(std::abs(optokerr::expm(one, cplx(0.0, kPi))(0, 0) - cplx(-1.0)) < 1e-14);
  CHECK_THROWS_AS(optokerr::expm(Eigen::MatrixXcd::Zero(2, 3)), optokerr::DimensionMismatch);

  const int n = 120;
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    b(k - 1, k) = std::sqrt(static_cast<double>(k));
  }
  const double x = 1.4;
  const Eigen::MatrixXcd d = optokerr::expm(Eigen::MatrixXcd(b.adjoint() - b), x);
  const Eigen::MatrixXcd ref = optokerr::displacement_matrix(n, x);
  CHECK(max_abs(d.topLeftCorner(60, 60) - ref.topLeftCorner(60, 60)) <= 1e-8);

  const optokerr::Operator op{HilbertSpec{2, 2}, Eigen::MatrixXcd::Identity(4, 4)};
  CHECK(std::abs(optokerr::expm(op, 2.0).matrix(3, 3) - std::exp(2.0)) < 1e-12);
}
