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

#include "optokerr/catstate.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "optokerr/errors.hpp"
#include "optokerr/specfun.hpp"

namespace optokerr {

namespace {

constexpr double kDegenerate = 1e-12;
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

double branch_weight(const BetaTheta& bt, Branch b) {
  return 1.0 + branch_sign(b) * std::cos(bt.theta) * std::exp(-0.5 * std::norm(bt.beta));
}

void require_two_level_cavity(const HilbertSpec& spec) {
  validate(spec);
  if (spec.n_cav < 2) {
    throw DomainError("cat protocol needs n_cav >= 2");
  }
}

}  // namespace

const char* to_string(Branch b) { return b == Branch::kPlus ? "plus" : "minus"; }

BetaTheta beta_theta(double t, const SystemParams& p) {
  const double w = shifted_mech_freq(1, p);
  BetaTheta bt;
  bt.beta = p.g0 * (1.0 - std::polar(1.0, -w * t)) / w;
  bt.theta = -p.omega_c * t + p.g0 * p.g0 * (w * t - std::sin(w * t)) / (w * w);
  return bt;
}

double detection_time(const SystemParams& p) {
  return std::numbers::pi / shifted_mech_freq(1, p);
}

CatSnapshot cat_snapshot(double t, const SystemParams& p) {
  const BetaTheta bt = beta_theta(t, p);
  CatSnapshot s;
  s.t = t;
  s.beta = bt.beta;
  s.theta = bt.theta;
  const double wp = branch_weight(bt, Branch::kPlus);
  const double wm = branch_weight(bt, Branch::kMinus);
  const double inf = std::numeric_limits<double>::infinity();
  s.norm_plus = wp < kDegenerate ? inf : 1.0 / std::sqrt(2.0 * wp);
  s.norm_minus = wm < kDegenerate ? inf : 1.0 / std::sqrt(2.0 * wm);
  // 𝒫± = 1/(4𝒩±²) = (1 ± cos ϑ e^{−|β|²/2})/2, which sums to one exactly.
  s.prob_plus = 0.5 * wp;
  s.prob_minus = 0.5 * wm;
  return s;
}

double cat_norm(double t, Branch b, const SystemParams& p) {
  const double w = branch_weight(beta_theta(t, p), b);
  if (w < kDegenerate) {
    throw DegenerateCat(std::string("cat branch '") + to_string(b) + "' has vanishing norm at t = " +
                        std::to_string(t));
  }
  return 1.0 / std::sqrt(2.0 * w);
}

Eigen::VectorXcd coherent_state(cplx beta, int n_mech) {
  if (n_mech < 1) {
    throw DomainError("coherent_state: n_mech must be positive");
  }
  const double r2 = std::norm(beta);
  Eigen::VectorXcd v(n_mech);
  for (int n = 0; n < n_mech; ++n) {
    // β^n e^{−|β|²/2}/√n! via its logarithm.
    if (r2 == 0.0) {
      v(n) = n == 0 ? 1.0 : 0.0;
      continue;
    }
    const double log_mag = 0.5 * n * std::log(r2) - 0.5 * r2 - 0.5 * log_factorial(n);
    v(n) = std::polar(std::exp(log_mag), n * std::arg(beta));
  }
  const double tail = 1.0 - v.squaredNorm();
  if (tail > 1e-8) {
    throw TruncationLoss("coherent state |beta| = " + std::to_string(std::sqrt(r2)) +
                         " loses weight " + std::to_string(tail) + " beyond n_mech");
  }
  return v;
}

Eigen::VectorXcd cat_state_vector(double t, Branch b, const SystemParams& p, int n_mech) {
  const double norm = cat_norm(t, b, p);
  const BetaTheta bt = beta_theta(t, p);
  Eigen::VectorXcd v = branch_sign(b) * std::polar(1.0, bt.theta) * coherent_state(bt.beta, n_mech);
  v(0) += 1.0;
  return norm * v;
}

ClosedCheckReport closed_evolution_check(double t, const SystemParams& p, const HilbertSpec& spec,
                                         double tol) {
  require_two_level_cavity(spec);
  const Operator u = propagator_factored(t, p, spec);
  Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(spec.dim());
  psi0(spec.index(0, 0)) = kInvSqrt2;
  psi0(spec.index(1, 0)) = kInvSqrt2;
  const Eigen::VectorXcd psi = u.matrix * psi0;

  const BetaTheta bt = beta_theta(t, p);
  Eigen::VectorXcd expect = Eigen::VectorXcd::Zero(spec.dim());
  expect(spec.index(0, 0)) = kInvSqrt2;
  // The coherent amplitudes are evaluated exactly, without a truncation
  // guard: the propagator columns are exact restrictions as well.
  for (int n = 0; n < spec.n_mech; ++n) {
    expect(spec.index(1, n)) = kInvSqrt2 * std::polar(1.0, bt.theta) *
                               displacement_element(n, 0, bt.beta);
  }

  ClosedCheckReport r;
  r.t = t;
  r.max_deviation = (psi - expect).cwiseAbs().maxCoeff();
  r.branch_norm_deviation =
      std::abs(psi.segment(spec.index(1, 0), spec.n_mech).norm() - kInvSqrt2);
  r.passed = r.max_deviation < tol;
  return r;
}

std::pair<double, double> branch_probabilities(const DensityMatrix& d) {
  require_two_level_cavity(d.spec);
  const int nm = d.spec.n_mech;
  double diag = 0.0;
  double cross = 0.0;
  for (int j = 0; j < nm; ++j) {
    diag += (d.rho(j, j) + d.rho(nm + j, nm + j)).real();
    cross += (d.rho(j, nm + j) + d.rho(nm + j, j)).real();
  }
  return {0.5 * (diag + cross), 0.5 * (diag - cross)};
}

ConditionalState condition_branch(const DensityMatrix& d, Branch b) {
  require_two_level_cavity(d.spec);
  const int nm = d.spec.n_mech;
  const double s = branch_sign(b);
  ConditionalState c;
  c.branch = b;
  c.theta = d.rho.block(0, 0, nm, nm) + d.rho.block(nm, nm, nm, nm) +
            s * (d.rho.block(0, nm, nm, nm) + d.rho.block(nm, 0, nm, nm));
  c.prob = 0.5 * c.theta.trace().real();
  if (c.prob < kDegenerate) {
    throw DegenerateBranch(std::string("detection branch '") + to_string(b) +
                           "' has probability below 1e-12");
  }
  c.rho_b = c.theta / (2.0 * c.prob);
  return c;
}

std::pair<ConditionalState, ConditionalState> condition_open_system(const DensityMatrix& d) {
  return {condition_branch(d, Branch::kPlus), condition_branch(d, Branch::kMinus)};
}

double fidelity_vs_target(const ConditionalState& c, double t, const SystemParams& p) {
  const double norm = cat_norm(t, c.branch, p);
  const BetaTheta bt = beta_theta(t, p);
  const double s = branch_sign(c.branch);
  const int nm = static_cast<int>(c.theta.rows());
  // u_k = δ_{k,0} ± e^{iϑ} e^{−|β|²/2} β^k/√k!, so ⟨Φ|j⟩ ∝ conj(u_j).
  Eigen::VectorXcd u(nm);
  const double r2 = std::norm(bt.beta);
  for (int k = 0; k < nm; ++k) {
    cplx coh = 0.0;
    if (r2 == 0.0) {
      coh = k == 0 ? 1.0 : 0.0;
    } else {
      coh = std::polar(std::exp(0.5 * k * std::log(r2) - 0.5 * r2 - 0.5 * log_factorial(k)),
                       k * std::arg(bt.beta));
    }
    u(k) = (k == 0 ? 1.0 : 0.0) + s * std::polar(1.0, bt.theta) * coh;
  }
  cplx sum = 0.0;
  for (int j = 0; j < nm; ++j) {
    for (int k = 0; k < nm; ++k) {
      sum += c.theta(j, k) * std::conj(u(j)) * u(k);
    }
  }
  return (norm * norm / (2.0 * c.prob) * sum).real();
}

double fidelity_direct(const ConditionalState& c, double t, const SystemParams& p) {
  const Eigen::VectorXcd phi = cat_state_vector(t, c.branch, p, static_cast<int>(c.rho_b.rows()));
  return (phi.adjoint() * c.rho_b * phi)(0, 0).real();
}

DensityMatrix cat_initial_state(const HilbertSpec& spec) {
  require_two_level_cavity(spec);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(spec.dim());
  psi(spec.index(0, 0)) = kInvSqrt2;
  psi(spec.index(1, 0)) = kInvSqrt2;
  return DensityMatrix::pure(spec, psi);
}

std::vector<DensityMatrix> evolve_cat(const SystemParams& p, const HilbertSpec& spec,
                                      const std::vector<double>& times, const EvolveOptions& opts) {
  require_two_level_cavity(spec);
  SystemParams slow = p;
  slow.omega_c = 0.0;
  const LindbladSpec l = make_lindblad(build_h_gom(spec, slow), p);
  std::vector<DensityMatrix> out = evolve(l, cat_initial_state(spec), times, opts);
  const int nm = spec.n_mech;
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double t = times[k];
    for (int m = 0; m < spec.n_cav; ++m) {
      for (int n = 0; n < spec.n_cav; ++n) {
        if (m == n) {
          continue;
        }
        out[k].rho.block(m * nm, n * nm, nm, nm) *= std::polar(1.0, -p.omega_c * t * (m - n));
      }
    }
  }
  return out;
}

CatRunPoint summarize_cat(const DensityMatrix& rho, double t, const SystemParams& p) {
  CatRunPoint r;
  r.t = t;
  r.trace = rho.trace();
  const auto [pp, pm] = branch_probabilities(rho);
  r.prob_plus = pp;
  r.prob_minus = pm;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto fid = [&](Branch b) {
    try {
      return fidelity_vs_target(condition_branch(rho, b), t, p);
    } catch (const DegenerateBranch&) {
      return nan;
    } catch (const DegenerateCat&) {
      return nan;
    }
  };
  r.fid_plus = fid(Branch::kPlus);
  r.fid_minus = fid(Branch::kMinus);
  return r;
}

}  // namespace optokerr
