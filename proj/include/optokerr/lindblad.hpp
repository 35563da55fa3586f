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

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "optokerr/model.hpp"
#include "optokerr/operators.hpp"

namespace optokerr {

struct DensityMatrix {
  HilbertSpec spec;
  Eigen::MatrixXcd rho;

  [[nodiscard]] double trace() const { return rho.trace().real(); }
  /// |m, n⟩⟨m, n|.
  static DensityMatrix basis(const HilbertSpec& spec, int m, int n);
  static DensityMatrix pure(const HilbertSpec& spec, const Eigen::VectorXcd& psi);
};

struct JumpChannel {
  std::string name;
  SparseMatrix op;
  double rate = 0.0;
};

struct LindbladSpec {
  HilbertSpec spec;
  SparseMatrix hamiltonian;
  std::vector<JumpChannel> channels;
};

/// Channels (a, κ), (b, γ_M(n̄+1)) and (b†, γ_M n̄) around the given
/// Hamiltonian. Channels with zero rate are dropped.
LindbladSpec make_lindblad(const Operator& hamiltonian, const SystemParams& p);

/// Same, with the driven rotating-frame Hamiltonian.
LindbladSpec make_lindblad(const HilbertSpec& spec, const SystemParams& p);

/// −i[H, ρ] + Σ rate (o ρ o† − ½{o†o, ρ}).
Eigen::MatrixXcd apply_liouvillian(const LindbladSpec& l, const Eigen::MatrixXcd& rho);
Eigen::MatrixXcd apply_liouvillian(const LindbladSpec& l, const DensityMatrix& rho);

struct EvolveOptions {
  double rtol = 1e-8;
  double atol = 1e-10;
  double initial_step = 1e-3;
  double max_step = 0.0;  ///< 0 means unbounded
  long max_steps = 50'000'000;
  /// Replace ρ by (ρ + ρ†)/2 after each accepted step.
  bool symmetrize = true;
};

/// Adaptive Dormand–Prince 5(4) integration of the master equation.
/// Returns ρ at every time of t_grid, which must be non-decreasing and start
/// at or after 0 (ρ0 is taken at t = 0). Trace is never renormalized.
std::vector<DensityMatrix> evolve(const LindbladSpec& l, const DensityMatrix& rho0,
                                  const std::vector<double>& t_grid, const EvolveOptions& opts = {});

/// Generic driver used by evolve: integrates dρ/dt = f(t, ρ) and calls
/// observer(k, ρ) when t_grid[k] is reached.
void integrate_rk45(const std::function<void(double, const Eigen::MatrixXcd&, Eigen::MatrixXcd&)>& f,
                    Eigen::MatrixXcd rho, const std::vector<double>& t_grid,
                    const std::function<void(std::size_t, const Eigen::MatrixXcd&)>& observer,
                    const EvolveOptions& opts = {});

enum class SteadyStateMethod {
  /// Block Gauss–Seidel over photon-coherence sectors ρ_pq, each sector
  /// factored once. Falls back to kVectorized if it does not converge.
  kSectorSolve,
  /// Sparse LU of the full vectorized Liouvillian, trace row in place of
  /// the first equation.
  kVectorized,
  /// Time integration from the vacuum until dρ/dt vanishes.
  kIntegrate,
};

const char* to_string(SteadyStateMethod m);

struct SteadyStateOptions {
  SteadyStateMethod method = SteadyStateMethod::kSectorSolve;
  double sector_rtol = 1e-12;
  int max_sweeps = 200;
  bool allow_fallback = true;
  /// Integration: stop once ‖dρ/dt‖_max falls below this.
  double derivative_tol = 1e-10;
};

struct SteadyStateResult {
  DensityMatrix rho;
  SteadyStateMethod method_used = SteadyStateMethod::kSectorSolve;
  int iterations = 0;
  double residual = 0.0;  ///< ‖L ρ‖_max
};

/// Throws DomainError without cavity loss and NonConvergence when no
/// method reaches a steady state.
SteadyStateResult steady_state(const LindbladSpec& l, const SteadyStateOptions& opts = {});

struct Observables {
  double p0 = 0.0, p1 = 0.0, p2 = 0.0;
  double n_a = 0.0;  ///< ⟨a†a⟩
  double n_b = 0.0;  ///< ⟨b†b⟩
  double g2 = 0.0;   ///< ⟨a†a†aa⟩/⟨a†a⟩², NaN when not requested and undefined
};

/// Throws ZeroPhotonNumber when ⟨a†a⟩ < 1e-14 and require_g2 is set.
Observables observables(const DensityMatrix& rho, bool require_g2 = true);

}  // namespace optokerr
