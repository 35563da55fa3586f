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

#include "optokerr/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>

#include <Eigen/SparseLU>

#include "optokerr/errors.hpp"

namespace optokerr {

using Triplet = Eigen::Triplet<cplx>;

DensityMatrix DensityMatrix::basis(const HilbertSpec& spec, int m, int n) {
  DensityMatrix d{spec, Eigen::MatrixXcd::Zero(spec.dim(), spec.dim())};
  d.rho(spec.index(m, n), spec.index(m, n)) = 1.0;
  return d;
}

DensityMatrix DensityMatrix::pure(const HilbertSpec& spec, const Eigen::VectorXcd& psi) {
  if (psi.size() != spec.dim()) {
    throw DimensionMismatch("DensityMatrix::pure: state size does not match spec");
  }
  return {spec, psi * psi.adjoint()};
}

LindbladSpec make_lindblad(const Operator& hamiltonian, const SystemParams& p) {
  const ModeOperators ops = build_mode_operators(hamiltonian.spec);
  LindbladSpec l;
  l.spec = hamiltonian.spec;
  l.hamiltonian = hamiltonian.sparse();
  const double down = p.gamma_m * (p.nbar_m + 1.0);
  const double up = p.gamma_m * p.nbar_m;
  if (p.kappa > 0.0) {
    l.channels.push_back({"a", ops.a.sparse(), p.kappa});
  }
  if (down > 0.0) {
    l.channels.push_back({"b", ops.b.sparse(), down});
  }
  if (up > 0.0) {
    l.channels.push_back({"b_dag", ops.b_dag.sparse(), up});
  }
  return l;
}

LindbladSpec make_lindblad(const HilbertSpec& spec, const SystemParams& p) {
  return make_lindblad(build_h_driven(spec, p), p);
}

namespace {

SparseMatrix effective_hamiltonian(const LindbladSpec& l) {
  SparseMatrix h = l.hamiltonian;
  for (const auto& c : l.channels) {
    const SparseMatrix od = c.op.adjoint();
    const SparseMatrix oo = od * c.op;
    h -= cplx{0.0, 0.5 * c.rate} * oo;
  }
  h.makeCompressed();
  return h;
}

void check_dims(const LindbladSpec& l, const Eigen::MatrixXcd& rho) {
  const int d = l.spec.dim();
  if (rho.rows() != d || rho.cols() != d || l.hamiltonian.rows() != d) {
    throw DimensionMismatch("Liouvillian and density matrix dimensions differ");
  }
}

// Precomputed sparse pieces of the Liouvillian for repeated application.
struct LiouvillianKernel {
  SparseMatrix heff;
  std::vector<std::pair<SparseMatrix, double>> jumps;

  explicit LiouvillianKernel(const LindbladSpec& l) : heff(effective_hamiltonian(l)) {
    for (const auto& c : l.channels) {
      jumps.emplace_back(c.op, c.rate);
    }
  }

  void apply(const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out) const {
    const cplx mi{0.0, -1.0};
    // −i(Heff ρ − ρ Heff†) = −i Heff ρ + (−i Heff ρ†)†.
    Eigen::MatrixXcd hr = heff * rho;
    Eigen::MatrixXcd hrd = heff * rho.adjoint();
    out.noalias() = mi * hr;
    out += (mi * hrd).adjoint();
    for (const auto& [o, r] : jumps) {
      const Eigen::MatrixXcd orho = o * rho;
      out += r * (o * orho.adjoint()).adjoint();
    }
  }
};

}  // namespace

Eigen::MatrixXcd apply_liouvillian(const LindbladSpec& l, const Eigen::MatrixXcd& rho) {
  check_dims(l, rho);
  Eigen::MatrixXcd out(rho.rows(), rho.cols());
  LiouvillianKernel(l).apply(rho, out);
  return out;
}

Eigen::MatrixXcd apply_liouvillian(const LindbladSpec& l, const DensityMatrix& rho) {
  return apply_liouvillian(l, rho.rho);
}

void integrate_rk45(
    const std::function<void(double, const Eigen::MatrixXcd&, Eigen::MatrixXcd&)>& f,
    Eigen::MatrixXcd y, const std::vector<double>& t_grid,
    const std::function<void(std::size_t, const Eigen::MatrixXcd&)>& observer,
    const EvolveOptions& opts) {
  // Dormand–Prince 5(4) tableau.
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    if (t_grid[k] < t_grid[k - 1]) {
      throw DomainError("integrate_rk45: time grid must be non-decreasing");
    }
  }
  if (!t_grid.empty() && t_grid.front() < 0.0) {
    throw DomainError("integrate_rk45: time grid must start at t >= 0");
  }

  const auto rows = y.rows();
  const auto cols = y.cols();
  Eigen::MatrixXcd k1(rows, cols), k2(rows, cols), k3(rows, cols), k4(rows, cols),
      k5(rows, cols), k6(rows, cols), k7(rows, cols), tmp(rows, cols), y_new(rows, cols);

  double t = 0.0;
  double h = opts.initial_step;
  double err_prev = 1e-4;
  long steps = 0;
  f(t, y, k1);

  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    const double target = t_grid[k];
    while (t < target) {
      if (++steps > opts.max_steps) {
        throw StepSizeUnderflow("integrate_rk45: step budget exhausted");
      }
      if (opts.max_step > 0.0) {
        h = std::min(h, opts.max_step);
      }
      const bool last = t + h >= target;
      const double step = last ? target - t : h;
      if (step < 1e-14 * std::max(1.0, std::abs(t))) {
        if (last) {
          // Grid point numerically coincides with t.
          t = target;
          break;
        }
        throw StepSizeUnderflow("integrate_rk45: step size underflow at t = " + std::to_string(t));
      }

      tmp = y + step * a21 * k1;
      f(t + c2 * step, tmp, k2);
      tmp = y + step * (a31 * k1 + a32 * k2);
      f(t + c3 * step, tmp, k3);
      tmp = y + step * (a41 * k1 + a42 * k2 + a43 * k3);
      f(t + c4 * step, tmp, k4);
      tmp = y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
      f(t + c5 * step, tmp, k5);
      tmp = y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
      f(t + step, tmp, k6);
      y_new = y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      f(t + step, y_new, k7);
      tmp = step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

      const Eigen::ArrayXXd scale =
          opts.atol + opts.rtol * y.cwiseAbs().array().max(y_new.cwiseAbs().array());
      double err = (tmp.cwiseAbs().array() / scale).maxCoeff();
      if (!std::isfinite(err)) {
        err = 1e10;
      }

      if (err <= 1.0) {
        t = last ? target : t + step;
        if (opts.symmetrize) {
          y = 0.5 * (y_new + y_new.adjoint());
        } else {
          y = y_new;
        }
        k1.swap(k7);
        const double e = std::max(err, 1e-10);
        double fac = 0.9 * std::pow(e, -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
        fac = std::clamp(fac, 0.2, 5.0);
        // A step shortened to land on the grid does not shrink the next one.
        h = std::max(h, step) * fac;
        err_prev = e;
      } else {
        h = step * std::max(0.2, 0.9 * std::pow(err, -0.2));
      }
    }
    observer(k, y);
  }
}

std::vector<DensityMatrix> evolve(const LindbladSpec& l, const DensityMatrix& rho0,
                                  const std::vector<double>& t_grid, const EvolveOptions& opts) {
  check_dims(l, rho0.rho);
  const LiouvillianKernel kernel(l);
  std::vector<DensityMatrix> out;
  out.reserve(t_grid.size());
  integrate_rk45(
      [&](double, const Eigen::MatrixXcd& r, Eigen::MatrixXcd& d) { kernel.apply(r, d); }, rho0.rho,
      t_grid, [&](std::size_t, const Eigen::MatrixXcd& r) { out.push_back({l.spec, r}); }, opts);
  return out;
}

const char* to_string(SteadyStateMethod m) {
  switch (m) {
    case SteadyStateMethod::kSectorSolve:
      return "sector";
    case SteadyStateMethod::kVectorized:
      return "vectorized";
    case SteadyStateMethod::kIntegrate:
      return "integrate";
  }
  return "unknown";
}

namespace {

// Column-major vec: vec(A X B) = (Bᵀ ⊗ A) vec(X).
SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(a.nonZeros()) * static_cast<std::size_t>(b.nonZeros()));
  for (int ka = 0; ka < a.outerSize(); ++ka) {
    for (SparseMatrix::InnerIterator ia(a, ka); ia; ++ia) {
      for (int kb = 0; kb < b.outerSize(); ++kb) {
        for (SparseMatrix::InnerIterator ib(b, kb); ib; ++ib) {
          t.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                         ia.value() * ib.value());
        }
      }
    }
  }
  SparseMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  r.setFromTriplets(t.begin(), t.end());
  return r;
}

SparseMatrix identity(int n) {
  SparseMatrix i(n, n);
  i.setIdentity();
  return i;
}

// Superoperator of ρ ↦ −i(Hl ρ − ρ Hr†) + Σ r Ol ρ Or† on matrices of
// shape rows(Hl) × rows(Hr).
SparseMatrix superoperator(const SparseMatrix& hl, const SparseMatrix& hr,
                           const std::vector<std::tuple<SparseMatrix, SparseMatrix, double>>& jumps) {
  const cplx i1{0.0, 1.0};
  const SparseMatrix hr_conj = hr.conjugate();
  SparseMatrix l = -i1 * kron(identity(static_cast<int>(hr.rows())), hl) +
                   i1 * kron(hr_conj, identity(static_cast<int>(hl.rows())));
  for (const auto& [ol, orr, r] : jumps) {
    if (ol.nonZeros() == 0 || orr.nonZeros() == 0) {
      continue;
    }
    const SparseMatrix or_conj = orr.conjugate();
    l += r * kron(or_conj, ol);
  }
  l.makeCompressed();
  return l;
}

// Operator split into photon-number blocks of size n_mech.
struct Blocked {
  int nb = 0;
  std::vector<SparseMatrix> blocks;  // row-major nb × nb
  std::vector<char> nonzero;

  Blocked(const SparseMatrix& op, int n_blocks, int bs) : nb(n_blocks) {
    std::vector<std::vector<Triplet>> trip(static_cast<std::size_t>(nb * nb));
    for (int k = 0; k < op.outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(op, k); it; ++it) {
        const int br = static_cast<int>(it.row()) / bs;
        const int bc = static_cast<int>(it.col()) / bs;
        trip[br * nb + bc].emplace_back(it.row() % bs, it.col() % bs, it.value());
      }
    }
    blocks.resize(trip.size());
    nonzero.resize(trip.size());
    for (std::size_t i = 0; i < trip.size(); ++i) {
      blocks[i].resize(bs, bs);
      blocks[i].setFromTriplets(trip[i].begin(), trip[i].end());
      blocks[i].makeCompressed();
      nonzero[i] = trip[i].empty() ? 0 : 1;
    }
  }

  [[nodiscard]] const SparseMatrix& at(int r, int c) const { return blocks[r * nb + c]; }
  [[nodiscard]] bool has(int r, int c) const { return nonzero[r * nb + c] != 0; }
};

struct Sector {
  int p = 0;
  int q = 0;
  SparseMatrix op;
  bool trace_row = false;
  std::unique_ptr<Eigen::SparseLU<SparseMatrix>> lu;
};

double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

double sparse_max_abs(const SparseMatrix& m) {
  double v = 0.0;
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      v = std::max(v, std::abs(it.value()));
    }
  }
  return v;
}

std::optional<SteadyStateResult> sector_solve(const LindbladSpec& l, const SteadyStateOptions& opts) {
  const int nc = l.spec.n_cav;
  const int nm = l.spec.n_mech;
  const SparseMatrix heff = effective_hamiltonian(l);
  const Blocked hb(heff, nc, nm);
  const SparseMatrix heff_dag = heff.adjoint();
  const Blocked hdb(heff_dag, nc, nm);
  std::vector<std::pair<Blocked, Blocked>> jb;
  std::vector<double> rates;
  for (const auto& c : l.channels) {
    const SparseMatrix od = c.op.adjoint();
    jb.emplace_back(Blocked(c.op, nc, nm), Blocked(od, nc, nm));
    rates.push_back(c.rate);
  }

  // Sectors ordered from high to low photon number; the remaining sectors
  // follow from ρ_qp = ρ_pq†.
  std::vector<Sector> sectors;
  int closed_count = 0;
  for (int p = nc - 1; p >= 0; --p) {
    for (int q = p; q >= 0; --q) {
      Sector s;
      s.p = p;
      s.q = q;
      std::vector<std::tuple<SparseMatrix, SparseMatrix, double>> diag;
      for (std::size_t c = 0; c < jb.size(); ++c) {
        diag.emplace_back(jb[c].first.at(p, p), jb[c].first.at(q, q), rates[c]);
      }
      s.op = superoperator(hb.at(p, p), hb.at(q, q), diag);
      if (p == q) {
        // Trace-preserving diagonal sector: its generator alone conserves
        // tr ρ_pp, so one equation is replaced by the normalization.
        Eigen::VectorXcd tr_row = Eigen::VectorXcd::Zero(nm * nm);
        for (int i = 0; i < nm; ++i) {
          tr_row(i * nm + i) = 1.0;
        }
        const Eigen::VectorXcd leak = SparseMatrix(s.op.adjoint()) * tr_row;
        const double scale = std::max(1.0, sparse_max_abs(s.op));
        if (leak.cwiseAbs().maxCoeff() < 1e-12 * scale) {
          s.trace_row = true;
          ++closed_count;
          SparseMatrix replaced = s.op;
          replaced.prune([](Eigen::Index r, Eigen::Index, const cplx&) { return r != 0; });
          std::vector<Triplet> t;
          for (int i = 0; i < nm; ++i) {
            t.emplace_back(0, i * nm + i, 1.0);
          }
          SparseMatrix tm(nm * nm, nm * nm);
          tm.setFromTriplets(t.begin(), t.end());
          s.op = replaced + tm;
          s.op.makeCompressed();
        }
      }
      s.lu = std::make_unique<Eigen::SparseLU<SparseMatrix>>();
      s.lu->compute(s.op);
      if (s.lu->info() != Eigen::Success) {
        return std::nullopt;
      }
      sectors.push_back(std::move(s));
    }
  }
  if (closed_count != 1) {
    return std::nullopt;
  }

  const int d = l.spec.dim();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  rho(0, 0) = 1.0;
  auto blk = [&](int r, int c) { return rho.block(r * nm, c * nm, nm, nm); };

  // Block (p, q) of Lρ with the sector's own term excluded, i.e. the
  // coupling to every other sector.
  auto coupling = [&](int p, int q) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(nm, nm);
    const cplx mi{0.0, -1.0};
    for (int k = 0; k < nc; ++k) {
      if (k != p && hb.has(p, k)) {
        acc += mi * (hb.at(p, k) * blk(k, q));
      }
      if (k != q && hdb.has(k, q)) {
        acc -= mi * (blk(p, k) * hdb.at(k, q));
      }
    }
    for (std::size_t c = 0; c < jb.size(); ++c) {
      const Blocked& o = jb[c].first;
      const Blocked& od = jb[c].second;
      for (int k = 0; k < nc; ++k) {
        if (!o.has(p, k)) {
          continue;
        }
        for (int m = 0; m < nc; ++m) {
          if (!od.has(m, q) || (k == p && m == q)) {
            continue;
          }
          const Eigen::MatrixXcd left = o.at(p, k) * blk(k, m);
          acc += rates[c] * (left * od.at(m, q));
        }
      }
    }
    return acc;
  };

  int sweep = 0;
  for (; sweep < opts.max_sweeps; ++sweep) {
    bool converged = true;
    for (auto& s : sectors) {
      const Eigen::MatrixXcd c = coupling(s.p, s.q);
      Eigen::VectorXcd rhs = -Eigen::Map<const Eigen::VectorXcd>(c.data(), nm * nm);
      if (s.trace_row) {
        double others = 0.0;
        for (int k = 0; k < nc; ++k) {
          if (k != s.p) {
            others += blk(k, k).trace().real();
          }
        }
        rhs(0) = 1.0 - others;
      }
      const Eigen::VectorXcd x = s.lu->solve(rhs);
      if (s.lu->info() != Eigen::Success || !x.allFinite()) {
        return std::nullopt;
      }
      Eigen::MatrixXcd next = Eigen::Map<const Eigen::MatrixXcd>(x.data(), nm, nm);
      if (s.p == s.q) {
        next = 0.5 * (next + next.adjoint()).eval();
      }
      const double change = max_abs(next - blk(s.p, s.q));
      const double size = max_abs(next);
      if (change > opts.sector_rtol * size + 1e-300) {
        converged = false;
      }
      blk(s.p, s.q) = next;
      if (s.p != s.q) {
        blk(s.q, s.p) = next.adjoint();
      }
    }
    if (converged) {
      break;
    }
  }
  if (sweep == opts.max_sweeps) {
    return std::nullopt;
  }

  SteadyStateResult res;
  res.rho = {l.spec, rho};
  res.method_used = SteadyStateMethod::kSectorSolve;
  res.iterations = sweep + 1;
  res.residual = max_abs(apply_liouvillian(l, rho));
  return res;
}

SteadyStateResult vectorized_solve(const LindbladSpec& l) {
  const int d = l.spec.dim();
  const SparseMatrix heff = effective_hamiltonian(l);
  std::vector<std::tuple<SparseMatrix, SparseMatrix, double>> jumps;
  for (const auto& c : l.channels) {
    jumps.emplace_back(c.op, c.op, c.rate);
  }
  SparseMatrix lv = superoperator(heff, heff, jumps);
  lv.prune([](Eigen::Index r, Eigen::Index, const cplx&) { return r != 0; });
  std::vector<Triplet> t;
  for (int i = 0; i < d; ++i) {
    t.emplace_back(0, i * d + i, 1.0);
  }
  SparseMatrix tm(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(d) * d);
  tm.setFromTriplets(t.begin(), t.end());
  lv += tm;
  lv.makeCompressed();

  Eigen::SparseLU<SparseMatrix> lu;
  lu.compute(lv);
  if (lu.info() != Eigen::Success) {
    throw NonConvergence("vectorized steady state: Liouvillian factorization failed");
  }
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(d) * d);
  rhs(0) = 1.0;
  const Eigen::VectorXcd x = lu.solve(rhs);
  if (lu.info() != Eigen::Success || !x.allFinite()) {
    throw NonConvergence("vectorized steady state: solve failed");
  }
  Eigen::MatrixXcd rho = Eigen::Map<const Eigen::MatrixXcd>(x.data(), d, d);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  SteadyStateResult res;
  res.rho = {l.spec, rho};
  res.method_used = SteadyStateMethod::kVectorized;
  res.iterations = 1;
  res.residual = max_abs(apply_liouvillian(l, rho));
  return res;
}

double cavity_loss(const LindbladSpec& l) {
  for (const auto& c : l.channels) {
    if (c.name == "a") {
      return c.rate;
    }
  }
  return 0.0;
}

SteadyStateResult integrate_solve(const LindbladSpec& l, const SteadyStateOptions& opts) {
  const double kappa = cavity_loss(l);
  const double window = 10.0 / kappa;
  const double t_max = 200.0 / kappa;
  const LiouvillianKernel kernel(l);
  // Tight enough that integration noise sits below the stopping test.
  EvolveOptions eo;
  eo.rtol = 1e-12;
  eo.atol = 1e-14;
  Eigen::MatrixXcd rho = DensityMatrix::basis(l.spec, 0, 0).rho;
  Eigen::MatrixXcd deriv(rho.rows(), rho.cols());
  double t = 0.0;
  int windows = 0;
  while (t < t_max) {
    const Eigen::MatrixXcd prev = rho;
    integrate_rk45([&](double, const Eigen::MatrixXcd& r, Eigen::MatrixXcd& dr) { kernel.apply(r, dr); },
                   prev, {window}, [&](std::size_t, const Eigen::MatrixXcd& r) { rho = r; }, eo);
    t += window;
    ++windows;
    kernel.apply(rho, deriv);
    if (max_abs(deriv) < opts.derivative_tol || max_abs(rho - prev) < opts.derivative_tol) {
      SteadyStateResult res;
      res.rho = {l.spec, rho};
      res.method_used = SteadyStateMethod::kIntegrate;
      res.iterations = windows;
      res.residual = max_abs(deriv);
      return res;
    }
  }
  throw NonConvergence("steady state by integration did not settle before t = 200/kappa");
}

}  // namespace

SteadyStateResult steady_state(const LindbladSpec& l, const SteadyStateOptions& opts) {
  if (!(cavity_loss(l) > 0.0)) {
    throw DomainError("steady_state requires kappa > 0");
  }
  switch (opts.method) {
    case SteadyStateMethod::kSectorSolve: {
      if (auto r = sector_solve(l, opts)) {
        return *r;
      }
      if (!opts.allow_fallback) {
        throw NonConvergence("sector steady-state iteration did not converge");
      }
      return vectorized_solve(l);
    }
    case SteadyStateMethod::kVectorized:
      return vectorized_solve(l);
    case SteadyStateMethod::kIntegrate:
      return integrate_solve(l, opts);
  }
  throw DomainError("unknown steady-state method");
}

Observables observables(const DensityMatrix& d, bool require_g2) {
  const HilbertSpec& s = d.spec;
  if (d.rho.rows() != s.dim() || d.rho.cols() != s.dim()) {
    throw DimensionMismatch("observables: density matrix does not match spec");
  }
  Observables o;
  double fact2 = 0.0;
  for (int m = 0; m < s.n_cav; ++m) {
    double pm = 0.0;
    for (int n = 0; n < s.n_mech; ++n) {
      const double v = d.rho(s.index(m, n), s.index(m, n)).real();
      pm += v;
      o.n_b += n * v;
    }
    if (m == 0) {
      o.p0 = pm;
    } else if (m == 1) {
      o.p1 = pm;
    } else if (m == 2) {
      o.p2 = pm;
    }
    o.n_a += m * pm;
    fact2 += m * (m - 1.0) * pm;
  }
  if (o.n_a < 1e-14) {
    if (require_g2) {
      throw ZeroPhotonNumber("mean photon number below 1e-14; g2 undefined");
    }
    o.g2 = std::numeric_limits<double>::quiet_NaN();
  } else {
    o.g2 = fact2 / (o.n_a * o.n_a);
  }
  return o;
}

}  // namespace optokerr
