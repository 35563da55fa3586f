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

#include "optokerr/operators.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "optokerr/errors.hpp"
#include "optokerr/specfun.hpp"

namespace optokerr {

namespace {

Eigen::MatrixXcd lowering(int dim) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

Eigen::MatrixXcd number(int dim) {
  Eigen::VectorXcd d(dim);
  for (int n = 0; n < dim; ++n) {
    d(n) = static_cast<double>(n);
  }
  return d.asDiagonal();
}

// Mechanical block of H_gom (or its rotating form) for photon number m on
// n_mech levels: (photon_freq·m) I + w_m b†b − g0 m (b + b†).
Eigen::MatrixXcd mech_block(int m, int n_mech, double photon_freq, const SystemParams& p) {
  const Eigen::MatrixXcd b = lowering(n_mech);
  Eigen::MatrixXcd h = (p.omega_m - m * p.g_ck) * number(n_mech);
  h -= p.g0 * m * (b + b.adjoint());
  h.diagonal().array() += photon_freq * m;
  return h;
}

Operator h_block_diagonal(const HilbertSpec& spec, const SystemParams& p, double photon_freq) {
  validate(spec);
  Operator h{spec, Eigen::MatrixXcd::Zero(spec.dim(), spec.dim())};
  for (int m = 0; m < spec.n_cav; ++m) {
    h.matrix.block(m * spec.n_mech, m * spec.n_mech, spec.n_mech, spec.n_mech) =
        mech_block(m, spec.n_mech, photon_freq, p);
  }
  return h;
}

}  // namespace

void validate(const HilbertSpec& spec) {
  if (spec.n_cav < 2 || spec.n_mech < 2) {
    throw DomainError("HilbertSpec: n_cav and n_mech must both be >= 2");
  }
}

SparseMatrix Operator::sparse() const { return matrix.sparseView(0.0, 0.0); }

ModeOperators build_mode_operators(const HilbertSpec& spec) {
  validate(spec);
  const Eigen::MatrixXcd ic = Eigen::MatrixXcd::Identity(spec.n_cav, spec.n_cav);
  const Eigen::MatrixXcd im = Eigen::MatrixXcd::Identity(spec.n_mech, spec.n_mech);
  const Eigen::MatrixXcd a = Eigen::kroneckerProduct(lowering(spec.n_cav), im);
  const Eigen::MatrixXcd b = Eigen::kroneckerProduct(ic, lowering(spec.n_mech));
  ModeOperators ops;
  ops.a = {spec, a};
  ops.a_dag = {spec, a.adjoint()};
  ops.b = {spec, b};
  ops.b_dag = {spec, b.adjoint()};
  ops.n_a = {spec, Eigen::kroneckerProduct(number(spec.n_cav), im)};
  ops.n_b = {spec, Eigen::kroneckerProduct(ic, number(spec.n_mech))};
  return ops;
}

Operator build_h_gom(const HilbertSpec& spec, const SystemParams& p) {
  return h_block_diagonal(spec, p, p.omega_c);
}

Operator build_h_rotating(const HilbertSpec& spec, const SystemParams& p) {
  return h_block_diagonal(spec, p, p.detuning);
}

Operator build_h_driven(const HilbertSpec& spec, const SystemParams& p) {
  Operator h = build_h_rotating(spec, p);
  if (p.drive_amp != 0.0) {
    const ModeOperators ops = build_mode_operators(spec);
    h.matrix += p.drive_amp * (ops.a.matrix + ops.a_dag.matrix);
  }
  return h;
}

Operator build_h_eff(const HilbertSpec& spec, const SystemParams& p) {
  Operator h = build_h_driven(spec, p);
  for (int m = 0; m < spec.n_cav; ++m) {
    for (int n = 0; n < spec.n_mech; ++n) {
      const int i = spec.index(m, n);
      h.matrix(i, i) -= cplx{0.0, 0.5 * p.kappa * m};
    }
  }
  return h;
}

PropagatorFactors propagator_factors(double t, const SystemParams& p, const HilbertSpec& spec) {
  PropagatorFactors f;
  f.t = t;
  f.mu.resize(spec.n_cav);
  f.nu.resize(spec.n_cav);
  f.lambda.resize(spec.n_cav);
  for (int m = 0; m < spec.n_cav; ++m) {
    const double w = shifted_mech_freq(m, p);
    f.mu[m] = p.g0 * p.g0 * (p.omega_m * t - std::sin(w * t)) / (w * w);
    f.nu[m] = p.g_ck * p.g0 * p.g0 * t / (w * w);
    f.lambda[m] = p.g0 * (1.0 - std::polar(1.0, -w * t)) / w;
  }
  return f;
}

Operator propagator_factored(double t, const SystemParams& p, const HilbertSpec& spec,
                             PropagatorOptions opts) {
  validate(spec);
  const PropagatorFactors f = propagator_factors(t, p, spec);
  const int nm = spec.n_mech;
  Operator u{spec, Eigen::MatrixXcd::Zero(spec.dim(), spec.dim())};
  for (int m = 0; m < spec.n_cav; ++m) {
    const double w = shifted_mech_freq(m, p);
    const double nu = opts.flip_nu_sign ? -f.nu[m] : f.nu[m];
    const double mf = m;
    const double photon_phase = -mf * p.omega_c * t + f.mu[m] * mf * mf - nu * mf * mf * mf;
    const cplx pre = std::polar(1.0, photon_phase);
    const Eigen::MatrixXcd d = displacement_matrix(nm, mf * f.lambda[m]);
    for (int l = 0; l < nm; ++l) {
      const cplx col = pre * std::polar(1.0, -w * t * l);
      for (int n = 0; n < nm; ++n) {
        u.matrix(m * nm + n, m * nm + l) = d(n, l) * col;
      }
    }
  }
  return u;
}

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a, cplx s) {
  if (a.rows() != a.cols()) {
    throw DimensionMismatch("expm: matrix is not square");
  }
  const Eigen::MatrixXcd scaled = s * a;
  return scaled.exp();
}

Operator expm(const Operator& a, cplx s) { return {a.spec, expm(a.matrix, s)}; }

std::vector<Operator> propagator_expm(const std::vector<double>& times, const SystemParams& p,
                                     const HilbertSpec& spec, int n_pad) {
  validate(spec);
  if (n_pad < spec.n_mech) {
    throw DomainError("propagator_expm: padding below the mechanical cutoff");
  }
  const int nm = spec.n_mech;
  std::vector<Operator> out(times.size(),
                            Operator{spec, Eigen::MatrixXcd::Zero(spec.dim(), spec.dim())});
  for (int m = 0; m < spec.n_cav; ++m) {
    // The photon energy m·ω_c is a scalar on the block; it is applied as a
    // phase so the diagonalized part stays O(n_pad).
    const Eigen::MatrixXd h = mech_block(m, n_pad, 0.0, p).real();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    const Eigen::MatrixXd v = es.eigenvectors().topRows(nm);
    for (std::size_t k = 0; k < times.size(); ++k) {
      const double t = times[k];
      Eigen::VectorXcd phase(n_pad);
      for (int j = 0; j < n_pad; ++j) {
        phase(j) = std::polar(1.0, -es.eigenvalues()(j) * t);
      }
      const Eigen::MatrixXcd um = v.cast<cplx>() * phase.asDiagonal() * v.transpose().cast<cplx>();
      out[k].matrix.block(m * nm, m * nm, nm, nm) = std::polar(1.0, -m * p.omega_c * t) * um;
    }
  }
  return out;
}

}  // namespace optokerr
