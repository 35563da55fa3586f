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

#include "optokerr/quasiprob.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "optokerr/errors.hpp"
#include "optokerr/specfun.hpp"

namespace optokerr {

namespace {

constexpr double kTwoOverPi = 2.0 / std::numbers::pi;

void check_tail(const Eigen::MatrixXcd& rho_b) {
  if (rho_b.rows() != rho_b.cols() || rho_b.rows() == 0) {
    throw DimensionMismatch("mechanical density matrix must be square and non-empty");
  }
  const auto last = rho_b.rows() - 1;
  const double top = rho_b(last, last).real();
  if (top > 1e-6) {
    throw TruncationLoss("top Fock level population " + std::to_string(top) +
                         " exceeds 1e-6; raise n_mech");
  }
}

double trapezoid(const std::vector<double>& v, double h) {
  if (v.size() < 2) {
    return 0.0;
  }
  double s = 0.5 * (v.front() + v.back());
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    s += v[i];
  }
  return s * h;
}

}  // namespace

std::vector<double> Axis::points() const {
  std::vector<double> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    p[i] = at(i);
  }
  return p;
}

double PhaseSpaceGrid::integral() const {
  if (kind == GridKind::kQuadrature) {
    return trapezoid(values, re.step());
  }
  std::vector<double> rows(static_cast<std::size_t>(re.n));
  for (int i = 0; i < re.n; ++i) {
    std::vector<double> col(values.begin() + static_cast<std::ptrdiff_t>(i) * im.n,
                            values.begin() + static_cast<std::ptrdiff_t>(i + 1) * im.n);
    rows[i] = trapezoid(col, im.step());
  }
  return trapezoid(rows, re.step());
}

double wigner_cat_point(double t, Branch b, const SystemParams& p, cplx eta) {
  const double norm = cat_norm(t, b, p);
  const BetaTheta bt = beta_theta(t, p);
  const cplx beta = bt.beta;
  const double e0 = std::exp(-2.0 * std::norm(eta));
  const double e1 = std::exp(-2.0 * std::norm(beta - eta));
  const cplx cross = std::exp(cplx{0.0, -bt.theta} - 0.5 * std::norm(beta) +
                              2.0 * std::conj(beta) * eta - 2.0 * std::norm(eta));
  return kTwoOverPi * norm * norm * (e0 + e1 + branch_sign(b) * 2.0 * cross.real());
}

PhaseSpaceGrid wigner_cat_analytic(double t, Branch b, const SystemParams& p, const Axis& re,
                                   const Axis& im) {
  PhaseSpaceGrid g;
  g.kind = GridKind::kWigner;
  g.re = re;
  g.im = im;
  g.values.resize(static_cast<std::size_t>(re.n) * im.n);
  for (int i = 0; i < re.n; ++i) {
    for (int j = 0; j < im.n; ++j) {
      g.values[static_cast<std::size_t>(i) * im.n + j] =
          wigner_cat_point(t, b, p, {re.at(i), im.at(j)});
    }
  }
  return g;
}

cplx wigner_point(const Eigen::MatrixXcd& rho_b, cplx eta) {
  const int n = static_cast<int>(rho_b.rows());
  const Eigen::MatrixXcd d = displacement_matrix(n, 2.0 * eta);
  cplx s = 0.0;
  for (int j = 0; j < n; ++j) {
    const double parity = (j % 2 == 0) ? 1.0 : -1.0;
    cplx col = 0.0;
    for (int k = 0; k < n; ++k) {
      col += rho_b(j, k) * d(k, j);
    }
    s += parity * col;
  }
  return kTwoOverPi * s;
}

double wigner_point_parity_sum(const Eigen::MatrixXcd& rho_b, cplx eta, int l_max) {
  const int n = static_cast<int>(rho_b.rows());
  const int dim = std::max(n, l_max);
  const Eigen::MatrixXcd d = displacement_matrix(dim, eta);
  // ⟨l|D†ρD|l⟩ = Σ_jk conj(D_jl) ρ_jk D_kl with j, k < n and l < l_max.
  const Eigen::MatrixXcd dl = d.topLeftCorner(n, l_max);
  const Eigen::MatrixXcd m = dl.adjoint() * rho_b * dl;
  cplx s = 0.0;
  for (int l = 0; l < l_max; ++l) {
    s += ((l % 2 == 0) ? 1.0 : -1.0) * m(l, l);
  }
  return kTwoOverPi * s.real();
}

PhaseSpaceGrid wigner_numeric(const Eigen::MatrixXcd& rho_b, const Axis& re, const Axis& im) {
  check_tail(rho_b);
  PhaseSpaceGrid g;
  g.kind = GridKind::kWigner;
  g.re = re;
  g.im = im;
  g.values.resize(static_cast<std::size_t>(re.n) * im.n);
  for (int i = 0; i < re.n; ++i) {
    for (int j = 0; j < im.n; ++j) {
      const cplx w = wigner_point(rho_b, {re.at(i), im.at(j)});
      g.max_imag = std::max(g.max_imag, std::abs(w.imag()));
      g.values[static_cast<std::size_t>(i) * im.n + j] = w.real();
    }
  }
  return g;
}

Eigen::VectorXcd quadrature_overlaps(double x, double theta, int n_max) {
  Eigen::VectorXcd v(n_max);
  for (int n = 0; n < n_max; ++n) {
    v(n) = hermite_function(n, x) * std::polar(1.0, -theta * n);
  }
  return v;
}

double quadrature_cat_point(double t, Branch b, double theta, const SystemParams& p, double x) {
  const double norm = cat_norm(t, b, p);
  const BetaTheta bt = beta_theta(t, p);
  const double r2 = std::norm(bt.beta);
  const cplx vac = hermite_function(0, x);
  cplx coh = 0.0;
  if (r2 == 0.0) {
    coh = vac;
  } else {
    const double log_r = 0.5 * std::log(r2);
    const double arg = std::arg(bt.beta);
    // Terms peak near n ≈ |β|²; stop on the far side once negligible.
    for (int n = 0; n < 1000; ++n) {
      const double mag = std::exp(n * log_r - 0.5 * r2 - 0.5 * log_factorial(n));
      const cplx term = mag * hermite_function(n, x) * std::polar(1.0, n * (arg - theta));
      coh += term;
      if (n > r2 && mag < 1e-14) {
        break;
      }
    }
  }
  const cplx amp = vac + branch_sign(b) * std::polar(1.0, bt.theta) * coh;
  return norm * norm * std::norm(amp);
}

PhaseSpaceGrid quadrature_dist_cat(double t, Branch b, double theta, const SystemParams& p,
                                   const Axis& x) {
  PhaseSpaceGrid g;
  g.kind = GridKind::kQuadrature;
  g.re = x;
  g.theta = theta;
  g.values.resize(static_cast<std::size_t>(x.n));
  for (int i = 0; i < x.n; ++i) {
    g.values[i] = quadrature_cat_point(t, b, theta, p, x.at(i));
  }
  return g;
}

double quadrature_point(const Eigen::MatrixXcd& rho_b, double theta, double x) {
  const Eigen::VectorXcd v = quadrature_overlaps(x, theta, static_cast<int>(rho_b.rows()));
  // Σ_jk ⟨X|j⟩ ρ_jk ⟨k|X⟩.
  return (v.transpose() * rho_b * v.conjugate())(0, 0).real();
}

PhaseSpaceGrid quadrature_dist_numeric(const Eigen::MatrixXcd& rho_b, double theta, const Axis& x) {
  check_tail(rho_b);
  PhaseSpaceGrid g;
  g.kind = GridKind::kQuadrature;
  g.re = x;
  g.theta = theta;
  g.values.resize(static_cast<std::size_t>(x.n));
  for (int i = 0; i < x.n; ++i) {
    g.values[i] = quadrature_point(rho_b, theta, x.at(i));
  }
  return g;
}

double wigner_marginal(const Eigen::MatrixXcd& rho_b, double theta, double x, double v_max,
                       int n_v) {
  const Axis v{-v_max, v_max, n_v};
  const cplx rot = std::polar(1.0, theta);
  std::vector<double> w(static_cast<std::size_t>(n_v));
  for (int i = 0; i < n_v; ++i) {
    w[i] = wigner_point(rho_b, cplx{x / std::numbers::sqrt2, v.at(i)} * rot).real();
  }
  return trapezoid(w, v.step()) / std::numbers::sqrt2;
}

double perpendicular_angle(const SystemParams& p) {
  return std::arg(beta_theta(detection_time(p), p).beta) - 0.5 * std::numbers::pi;
}

double fringe_contrast(const Eigen::MatrixXcd& rho_b, cplx beta, double half_width, int n) {
  const double r = std::abs(beta);
  if (r == 0.0) {
    throw DomainError("fringe_contrast: zero displacement has no fringe axis");
  }
  const cplx dir = cplx{0.0, 1.0} * beta / r;
  const Axis s{-half_width, half_width, n};
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i = 0; i < n; ++i) {
    const double w = wigner_point(rho_b, 0.5 * beta + s.at(i) * dir).real();
    lo = std::min(lo, w);
    hi = std::max(hi, w);
  }
  return hi - lo;
}

double oscillation_amplitude(const PhaseSpaceGrid& quad, double window) {
  if (quad.kind != GridKind::kQuadrature) {
    throw DomainError("oscillation_amplitude expects a quadrature distribution");
  }
  double max_peak = -std::numeric_limits<double>::infinity();
  double min_dip = std::numeric_limits<double>::infinity();
  bool has_dip = false;
  for (int i = 1; i + 1 < quad.re.n; ++i) {
    if (std::abs(quad.re.at(i)) > window) {
      continue;
    }
    const double a = quad.values[i - 1];
    const double c = quad.values[i];
    const double e = quad.values[i + 1];
    if (c > a && c > e) {
      max_peak = std::max(max_peak, c);
    }
    if (c < a && c < e) {
      min_dip = std::min(min_dip, c);
      has_dip = true;
    }
  }
  if (!has_dip || !std::isfinite(max_peak)) {
    return 0.0;
  }
  return max_peak - min_dip;
}

}  // namespace optokerr
