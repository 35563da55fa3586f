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

#include "optokerr/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "optokerr/catstate.hpp"
#include "optokerr/errors.hpp"
#include "optokerr/quasiprob.hpp"
#include "optokerr/specfun.hpp"

namespace optokerr {

namespace {

int interior_m(const VerifyConfig& c) {
  return c.interior_m >= 0 ? std::min(c.interior_m, c.spec.n_cav - 1)
                           : std::min(2, c.spec.n_cav - 1);
}

int interior_n(const VerifyConfig& c) {
  return c.interior_n >= 0 ? std::min(c.interior_n, c.spec.n_mech - 1) : 4 * c.spec.n_mech / 5;
}

CheckResult finish(std::string name, double value, double tol, std::string detail) {
  CheckResult r;
  r.name = std::move(name);
  r.value = value;
  r.tol = tol;
  // NaN must fail, hence the negated comparison.
  r.passed = value <= tol;
  r.detail = std::move(detail);
  return r;
}

// max that keeps NaN once seen.
double nan_max(double a, double b) { return (std::isnan(a) || std::isnan(b)) ? NAN : std::max(a, b); }

void check_config(const VerifyConfig& c) {
  validate(c.spec);
  validate(c.params, c.spec.n_cav - 1);
  if (c.n_pad < c.spec.n_mech) {
    throw DomainError("verify: n_pad must be at least n_mech");
  }
}

}  // namespace

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& r) { return r.passed; });
}

std::vector<double> verify_times(const VerifyConfig& c) {
  if (!c.times.empty()) {
    return c.times;
  }
  const double t_max = 2.0 * std::numbers::pi / shifted_mech_freq(1, c.params);
  std::vector<double> t(static_cast<std::size_t>(std::max(c.n_times, 1)));
  for (std::size_t i = 0; i < t.size(); ++i) {
    t[i] = t.size() > 1 ? t_max * static_cast<double>(i) / static_cast<double>(t.size() - 1) : 0.0;
  }
  return t;
}

CheckResult check_propagator(const VerifyConfig& c) {
  check_config(c);
  const auto times = verify_times(c);
  const auto ref = propagator_expm(times, c.params, c.spec, c.n_pad);
  const int mm = interior_m(c);
  const int nn = interior_n(c);
  double worst = 0.0;
  double worst_t = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    PropagatorOptions opts;
    opts.flip_nu_sign = c.flip_nu_sign;
    const Operator u = propagator_factored(times[k], c.params, c.spec, opts);
    for (int m = 0; m <= mm; ++m) {
      const double d = (u.block(m, m).topLeftCorner(nn + 1, nn + 1) -
                        ref[k].block(m, m).topLeftCorner(nn + 1, nn + 1))
                           .cwiseAbs()
                           .maxCoeff();
      if (!std::isnan(worst) && !(d <= worst)) {
        worst = d;
        worst_t = times[k];
      }
    }
  }
  std::ostringstream os;
  os << times.size() << " times, m <= " << mm << ", n <= " << nn << ", n_pad " << c.n_pad
     << ", worst at t = " << worst_t;
  return finish("propagator_vs_expm", worst, c.propagator_tol, os.str());
}

CheckResult check_unitarity(const VerifyConfig& c) {
  check_config(c);
  HilbertSpec big = c.spec;
  big.n_mech = c.n_pad;
  const int mm = interior_m(c);
  const int nn = interior_n(c);
  double worst = 0.0;
  for (double t : verify_times(c)) {
    PropagatorOptions opts;
    opts.flip_nu_sign = c.flip_nu_sign;
    const Operator u = propagator_factored(t, c.params, big, opts);
    for (int m = 0; m <= mm; ++m) {
      // Only columns inside the interior are needed; rows run over n_pad.
      const Eigen::MatrixXcd cols = u.block(m, m).leftCols(nn + 1);
      const Eigen::MatrixXcd g = cols.adjoint() * cols;
      const double d =
          (g - Eigen::MatrixXcd::Identity(nn + 1, nn + 1)).cwiseAbs().maxCoeff();
      worst = nan_max(worst, d);
    }
  }
  std::ostringstream os;
  os << "columns n <= " << nn << " summed over " << c.n_pad << " levels";
  return finish("unitarity", worst, c.unitarity_tol, os.str());
}

CheckResult check_franck_condon_completeness(const VerifyConfig& c) {
  check_config(c);
  const int nn = interior_n(c);
  double worst = 0.0;
  for (int m = 0; m + 1 < c.spec.n_cav; ++m) {
    const Eigen::MatrixXcd d =
        displacement_matrix(c.n_pad, xi_m(m + 1, c.params) - xi_m(m, c.params));
    for (int n = 0; n <= nn; ++n) {
      const double s = d.row(n).squaredNorm();
      worst = nan_max(worst, std::abs(s - 1.0));
    }
  }
  std::ostringstream os;
  os << "blocks m -> m+1 for m < " << c.spec.n_cav - 1 << ", n <= " << nn;
  return finish("franck_condon_completeness", worst, c.completeness_tol, os.str());
}

CheckResult check_wigner_marginal(const VerifyConfig& c) {
  check_config(c);
  const int dim = c.spec.n_mech;
  const double ts = detection_time(c.params);
  const double theta0 = perpendicular_angle(c.params);

  struct Case {
    const char* name;
    Eigen::VectorXcd psi;
    double theta;
  };
  std::vector<Case> cases;
  Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(dim);
  vac(0) = 1.0;
  cases.push_back({"vacuum", vac, 0.3});
  cases.push_back({"coherent", coherent_state(cplx{0.8, 0.6}, dim), 1.1});
  cases.push_back({"cat+", cat_state_vector(ts, Branch::kPlus, c.params, dim), theta0});

  const Axis x{-4.0, 7.0, 23};
  double worst = 0.0;
  std::string worst_case = "none";
  for (const auto& cs : cases) {
    const Eigen::MatrixXcd rho = cs.psi * cs.psi.adjoint();
    for (int i = 0; i < x.n; ++i) {
      const double d = std::abs(wigner_marginal(rho, cs.theta, x.at(i)) -
                                quadrature_point(rho, cs.theta, x.at(i)));
      if (!std::isnan(worst) && !(d <= worst)) {
        worst = d;
        worst_case = cs.name;
      }
    }
  }
  return finish("wigner_marginal", worst, c.marginal_tol, "worst case: " + worst_case);
}

VerifyReport run_verify(const VerifyConfig& c) {
  VerifyReport r;
  r.checks.push_back(check_propagator(c));
  r.checks.push_back(check_unitarity(c));
  r.checks.push_back(check_franck_condon_completeness(c));
  r.checks.push_back(check_wigner_marginal(c));
  return r;
}

}  // namespace optokerr
