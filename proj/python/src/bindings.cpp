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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "optokerr/blockade.hpp"
#include "optokerr/catstate.hpp"
#include "optokerr/errors.hpp"
#include "optokerr/lindblad.hpp"
#include "optokerr/model.hpp"
#include "optokerr/operators.hpp"
#include "optokerr/quasiprob.hpp"
#include "optokerr/specfun.hpp"
#include "optokerr/sweeps.hpp"
#include "optokerr/verify.hpp"

namespace py = pybind11;
using namespace optokerr;

namespace {

// Grid values as a (re.n, im.n) array for Wigner grids, 1-D otherwise.
py::array_t<double> grid_array(const PhaseSpaceGrid& g) {
  if (g.kind == GridKind::kWigner) {
    py::array_t<double> a({g.re.n, g.im.n});
    std::copy(g.values.begin(), g.values.end(), a.mutable_data());
    return a;
  }
  py::array_t<double> a(static_cast<py::ssize_t>(g.values.size()));
  std::copy(g.values.begin(), g.values.end(), a.mutable_data());
  return a;
}

py::dict stats_dict(const PhotonStats& s) {
  py::dict d;
  d["p0"] = s.p0;
  d["p1"] = s.p1;
  d["p2"] = s.p2;
  d["g2"] = s.g2;
  d["method"] = to_string(s.method);
  return d;
}

SteadyStateMethod parse_method(const std::string& m) {
  if (m == "sector") {
    return SteadyStateMethod::kSectorSolve;
  }
  if (m == "vectorized") {
    return SteadyStateMethod::kVectorized;
  }
  if (m == "integrate") {
    return SteadyStateMethod::kIntegrate;
  }
  throw py::value_error("method must be 'sector', 'vectorized' or 'integrate'");
}

Branch parse_branch(const std::string& b) {
  if (b == "plus" || b == "+") {
    return Branch::kPlus;
  }
  if (b == "minus" || b == "-") {
    return Branch::kMinus;
  }
  throw py::value_error("branch must be 'plus' or 'minus'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Photon blockade and cat-state generation in optomechanics with cross-Kerr coupling";

  // Errors: one Python class per C++ type, all deriving from optokerr.Error.
  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<SingularDenominator>(m, "SingularDenominator", base);
  py::register_exception<DomainError>(m, "DomainError", base);
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base);
  py::register_exception<NonConvergedSum>(m, "NonConvergedSum", base);
  py::register_exception<StepSizeUnderflow>(m, "StepSizeUnderflow", base);
  py::register_exception<NonConvergence>(m, "NonConvergence", base);
  py::register_exception<ZeroPhotonNumber>(m, "ZeroPhotonNumber", base);
  py::register_exception<DegenerateCat>(m, "DegenerateCat", base);
  py::register_exception<DegenerateBranch>(m, "DegenerateBranch", base);
  py::register_exception<TruncationLoss>(m, "TruncationLoss", base);

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init([](double omega_c, double omega_m, double g0, double g_ck, double kappa,
                       double gamma_m, double nbar_m, double detuning, double drive_amp) {
             return SystemParams{omega_c, omega_m, g0,       g_ck,     kappa,
                                 gamma_m, nbar_m,  detuning, drive_amp};
           }),
           py::kw_only(), py::arg("omega_c") = 100.0, py::arg("omega_m") = 1.0,
           py::arg("g0") = 0.0, py::arg("g_ck") = 0.0, py::arg("kappa") = 0.0,
           py::arg("gamma_m") = 0.0, py::arg("nbar_m") = 0.0, py::arg("detuning") = 0.0,
           py::arg("drive_amp") = 0.0)
      .def_readwrite("omega_c", &SystemParams::omega_c)
      .def_readwrite("omega_m", &SystemParams::omega_m)
      .def_readwrite("g0", &SystemParams::g0)
      .def_readwrite("g_ck", &SystemParams::g_ck)
      .def_readwrite("kappa", &SystemParams::kappa)
      .def_readwrite("gamma_m", &SystemParams::gamma_m)
      .def_readwrite("nbar_m", &SystemParams::nbar_m)
      .def_readwrite("detuning", &SystemParams::detuning)
      .def_readwrite("drive_amp", &SystemParams::drive_amp)
      .def("__repr__", [](const SystemParams& p) {
        return "SystemParams(omega_c=" + std::to_string(p.omega_c) +
               ", g0=" + std::to_string(p.g0) + ", g_ck=" + std::to_string(p.g_ck) +
               ", kappa=" + std::to_string(p.kappa) + ", detuning=" + std::to_string(p.detuning) +
               ")";
      });

  py::class_<HilbertSpec>(m, "HilbertSpec")
      .def(py::init([](int n_cav, int n_mech) { return HilbertSpec{n_cav, n_mech}; }),
           py::arg("n_cav") = 4, py::arg("n_mech") = 30)
      .def_readwrite("n_cav", &HilbertSpec::n_cav)
      .def_readwrite("n_mech", &HilbertSpec::n_mech)
      .def_property_readonly("dim", &HilbertSpec::dim);

  // Model
  m.def("xi_m", &xi_m, py::arg("m"), py::arg("params"));
  m.def("delta_m", &delta_m, py::arg("m"), py::arg("params"));
  m.def(
      "eigen_energy",
      [](int mm, int n, const SystemParams& p, bool rotating) {
        return eigen_energy(mm, n, p, rotating ? Frame::kRotating : Frame::kLab);
      },
      py::arg("m"), py::arg("n"), py::arg("params"), py::arg("rotating") = false);
  m.def(
      "optimal_detuning",
      [](const std::string& kind, int n, const SystemParams& p) {
        if (kind != "single" && kind != "two") {
          throw py::value_error("kind must be 'single' or 'two'");
        }
        return optimal_detuning(kind == "single" ? Resonance::kSinglePhoton : Resonance::kTwoPhoton,
                                n, p);
      },
      py::arg("kind"), py::arg("n"), py::arg("params"));
  m.def("resonance_curve_g0", &resonance_curve_g0, py::arg("n"), py::arg("g_ck"),
        py::arg("omega_m") = 1.0);

  // Special functions
  m.def("log_factorial", &log_factorial, py::arg("n"));
  m.def("laguerre_assoc", &laguerre_assoc, py::arg("n"), py::arg("k"), py::arg("x"));
  m.def("hermite_function", &hermite_function, py::arg("n"), py::arg("x"));
  m.def("displacement_element", &displacement_element, py::arg("n"), py::arg("l"), py::arg("x"));
  m.def("displacement_matrix", &displacement_matrix, py::arg("dim"), py::arg("x"));
  m.def("franck_condon", &franck_condon, py::arg("n"), py::arg("m"), py::arg("l"),
        py::arg("m_prime"), py::arg("params"));

  // Operators
  m.def(
      "hamiltonian",
      [](const SystemParams& p, const HilbertSpec& s, const std::string& kind) {
        if (kind == "gom") {
          return build_h_gom(s, p).matrix;
        }
        if (kind == "rotating") {
          return build_h_rotating(s, p).matrix;
        }
        if (kind == "driven") {
          return build_h_driven(s, p).matrix;
        }
        if (kind == "effective") {
          return build_h_eff(s, p).matrix;
        }
        throw py::value_error("kind must be 'gom', 'rotating', 'driven' or 'effective'");
      },
      py::arg("params"), py::arg("spec"), py::arg("kind") = "gom");
  m.def(
      "propagator_factored",
      [](double t, const SystemParams& p, const HilbertSpec& s, bool flip_nu_sign) {
        return propagator_factored(t, p, s, PropagatorOptions{flip_nu_sign}).matrix;
      },
      py::arg("t"), py::arg("params"), py::arg("spec"), py::arg("flip_nu_sign") = false);
  m.def(
      "propagator_expm",
      [](const std::vector<double>& times, const SystemParams& p, const HilbertSpec& s,
         int n_pad) {
        std::vector<Eigen::MatrixXcd> out;
        for (auto& op : propagator_expm(times, p, s, n_pad)) {
          out.push_back(std::move(op.matrix));
        }
        return out;
      },
      py::arg("times"), py::arg("params"), py::arg("spec"), py::arg("n_pad"));

  // Blockade
  m.def(
      "photon_stats_exact",
      [](const SystemParams& p, const HilbertSpec& s) { return stats_dict(photon_stats_exact(p, s)); },
      py::arg("params"), py::arg("spec") = HilbertSpec{});
  m.def(
      "photon_stats_lamb_dicke",
      [](const SystemParams& p) { return stats_dict(photon_stats_lamb_dicke(p)); },
      py::arg("params"));
  m.def("g2_single_photon_resonance", &g2_single_photon_resonance, py::arg("params"));
  m.def("g2_two_photon_resonance", &g2_two_photon_resonance, py::arg("params"));
  m.def(
      "steady_state",
      [](const SystemParams& p, const HilbertSpec& s, const std::string& method) {
        SteadyStateOptions o;
        o.method = parse_method(method);
        SteadyStateResult r;
        {
          py::gil_scoped_release release;
          r = steady_state(make_lindblad(s, p), o);
        }
        const Observables obs = observables(r.rho, false);
        py::dict d;
        d["rho"] = r.rho.rho;
        d["method_used"] = to_string(r.method_used);
        d["iterations"] = r.iterations;
        d["residual"] = r.residual;
        d["p0"] = obs.p0;
        d["p1"] = obs.p1;
        d["p2"] = obs.p2;
        d["n_a"] = obs.n_a;
        d["n_b"] = obs.n_b;
        d["g2"] = obs.g2;
        return d;
      },
      py::arg("params"), py::arg("spec") = HilbertSpec{}, py::arg("method") = "sector");
  m.def(
      "table1",
      [](const SystemParams& p, const HilbertSpec& s, double lo, double hi, double step,
         bool numeric, int jobs) {
        BlockadeOptions o;
        o.numeric = numeric;
        Table1Result r;
        {
          py::gil_scoped_release release;
          r = table1(p, s, lo, hi, step, o, jobs);
        }
        py::list rows;
        for (const auto& row : r.rows) {
          py::dict d;
          d["kind"] = row.kind == Resonance::kSinglePhoton ? "single" : "two";
          d["n"] = row.n;
          d["predicted"] = row.predicted;
          d["detected_analytic"] = row.detected_analytic;
          d["detected_numeric"] = row.detected_numeric;
          d["g2_analytic"] = row.g2_analytic;
          d["g2_numeric"] = row.g2_numeric;
          d["prob_peak_analytic"] = row.prob_peak_analytic;
          d["prob_peak_numeric"] = row.prob_peak_numeric;
          rows.append(d);
        }
        return rows;
      },
      py::arg("params"), py::arg("spec") = HilbertSpec{}, py::arg("lo") = -3.8,
      py::arg("hi") = 1.8, py::arg("step") = 0.005, py::arg("numeric") = false,
      py::arg("jobs") = 1);

  // Cat states
  m.def("detection_time", &detection_time, py::arg("params"));
  m.def(
      "beta_theta",
      [](double t, const SystemParams& p) {
        const BetaTheta bt = beta_theta(t, p);
        return py::make_tuple(bt.beta, bt.theta);
      },
      py::arg("t"), py::arg("params"));
  m.def(
      "cat_snapshot",
      [](double t, const SystemParams& p) {
        const CatSnapshot s = cat_snapshot(t, p);
        py::dict d;
        d["t"] = s.t;
        d["beta"] = s.beta;
        d["theta"] = s.theta;
        d["norm_plus"] = s.norm_plus;
        d["norm_minus"] = s.norm_minus;
        d["prob_plus"] = s.prob_plus;
        d["prob_minus"] = s.prob_minus;
        return d;
      },
      py::arg("t"), py::arg("params"));
  m.def(
      "cat_state_vector",
      [](double t, const std::string& b, const SystemParams& p, int n_mech) {
        return cat_state_vector(t, parse_branch(b), p, n_mech);
      },
      py::arg("t"), py::arg("branch"), py::arg("params"), py::arg("n_mech") = 60);
  m.def(
      "evolve_cat",
      [](const SystemParams& p, const HilbertSpec& s, const std::vector<double>& times,
         double rtol, double atol) {
        EvolveOptions o;
        o.rtol = rtol;
        o.atol = atol;
        std::vector<DensityMatrix> rhos;
        {
          py::gil_scoped_release release;
          rhos = evolve_cat(p, s, times, o);
        }
        py::list out;
        for (std::size_t i = 0; i < times.size(); ++i) {
          const CatRunPoint r = summarize_cat(rhos[i], times[i], p);
          py::dict d;
          d["t"] = r.t;
          d["prob_plus"] = r.prob_plus;
          d["prob_minus"] = r.prob_minus;
          d["fid_plus"] = r.fid_plus;
          d["fid_minus"] = r.fid_minus;
          d["trace"] = r.trace;
          d["rho"] = rhos[i].rho;
          out.append(d);
        }
        return out;
      },
      py::arg("params"), py::arg("spec") = HilbertSpec{2, 60}, py::arg("times"),
      py::arg("rtol") = 1e-8, py::arg("atol") = 1e-10);
  m.def(
      "condition_branch",
      [](const Eigen::MatrixXcd& rho, const HilbertSpec& s, const std::string& b) {
        DensityMatrix dm{s, rho};
        const ConditionalState c = condition_branch(dm, parse_branch(b));
        return py::make_tuple(c.rho_b, c.prob);
      },
      py::arg("rho"), py::arg("spec"), py::arg("branch"));

  // Phase space
  m.def(
      "wigner_cat",
      [](double t, const std::string& b, const SystemParams& p, std::tuple<double, double, int> re,
         std::tuple<double, double, int> im) {
        const auto [rl, rh, rn] = re;
        const auto [il, ih, in] = im;
        return grid_array(wigner_cat_analytic(t, parse_branch(b), p, Axis{rl, rh, rn}, Axis{il, ih, in}));
      },
      py::arg("t"), py::arg("branch"), py::arg("params"),
      py::arg("re") = std::make_tuple(-2.0, 5.0, 141),
      py::arg("im") = std::make_tuple(-3.5, 3.5, 141));
  m.def(
      "wigner_numeric",
      [](const Eigen::MatrixXcd& rho_b, std::tuple<double, double, int> re,
         std::tuple<double, double, int> im) {
        const auto [rl, rh, rn] = re;
        const auto [il, ih, in] = im;
        return grid_array(wigner_numeric(rho_b, Axis{rl, rh, rn}, Axis{il, ih, in}));
      },
      py::arg("rho_b"), py::arg("re") = std::make_tuple(-2.0, 5.0, 141),
      py::arg("im") = std::make_tuple(-3.5, 3.5, 141));
  m.def(
      "wigner_point", [](const Eigen::MatrixXcd& rho_b, cplx eta) { return wigner_point(rho_b, eta).real(); },
      py::arg("rho_b"), py::arg("eta"));
  m.def(
      "quadrature_cat",
      [](double t, const std::string& b, double theta, const SystemParams& p,
         std::tuple<double, double, int> x) {
        const auto [xl, xh, xn] = x;
        return grid_array(quadrature_dist_cat(t, parse_branch(b), theta, p, Axis{xl, xh, xn}));
      },
      py::arg("t"), py::arg("branch"), py::arg("theta"), py::arg("params"),
      py::arg("x") = std::make_tuple(-4.0, 7.0, 551));
  m.def(
      "quadrature_numeric",
      [](const Eigen::MatrixXcd& rho_b, double theta, std::tuple<double, double, int> x) {
        const auto [xl, xh, xn] = x;
        return grid_array(quadrature_dist_numeric(rho_b, theta, Axis{xl, xh, xn}));
      },
      py::arg("rho_b"), py::arg("theta"), py::arg("x") = std::make_tuple(-4.0, 7.0, 551));
  m.def("perpendicular_angle", &perpendicular_angle, py::arg("params"));
  m.def("fringe_contrast", &fringe_contrast, py::arg("rho_b"), py::arg("beta"),
        py::arg("half_width") = 2.0, py::arg("n") = 401);

  // Verification
  m.def(
      "verify",
      [](const SystemParams& p, const HilbertSpec& s, bool flip_nu_sign, int n_pad,
         std::vector<double> times) {
        VerifyConfig c;
        c.params = p;
        c.spec = s;
        c.flip_nu_sign = flip_nu_sign;
        c.n_pad = n_pad;
        c.times = std::move(times);
        VerifyReport r;
        {
          py::gil_scoped_release release;
          r = run_verify(c);
        }
        py::list out;
        for (const auto& ch : r.checks) {
          py::dict d;
          d["name"] = ch.name;
          d["deviation"] = ch.value;
          d["tolerance"] = ch.tol;
          d["passed"] = ch.passed;
          d["detail"] = ch.detail;
          out.append(d);
        }
        return out;
      },
      py::arg("params"), py::arg("spec") = HilbertSpec{3, 60}, py::arg("flip_nu_sign") = false,
      py::arg("n_pad") = 600, py::arg("times") = std::vector<double>{});
}
