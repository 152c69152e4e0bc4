// Copyright 2026 The floqrylov Authors
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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <iostream>

#include "floqrylov/cli.hpp"

namespace py = pybind11;
using namespace floqrylov;

namespace {

Liouvillian liouvillian_for(const CMatrix& u, const std::string& mode) {
  const UnitaryMatrix um = UnitaryMatrix::from_matrix(u);
  if (mode == "state") return Liouvillian::unitary_on_state(um);
  if (mode == "operator") return Liouvillian::unitary_conjugation(um);
  throw UsageError("mode must be 'state' or 'operator'");
}

std::string default_initial(const std::string& mode) {
  return mode == "state" ? "random_state" : "random_hermitian_operator";
}

py::dict krylov(const CMatrix& u, const std::string& mode, std::string initial, std::uint64_t seed, double tol,
                int max_dim) {
  const Liouvillian l = liouvillian_for(u, mode);
  if (initial.empty()) initial = default_initial(mode);
  const KrylovVector v0 = initial_vector(InitialCondition::parse(initial), l.dim_hilbert(), seed);
  const KrylovBasis basis = arnoldi_iterate(l, v0, max_dim > 0 ? max_dim : l.max_krylov_dim(), tol);
  py::dict out;
  out["dk"] = basis.dk;
  out["terminated"] = basis.terminated;
  out["hessenberg"] = basis.hessenberg;
  out["subdiagonal"] = subdiagonal(basis);
  out["dk_max"] = l.max_krylov_dim();
  return out;
}

py::dict complexity(const CMatrix& u, const std::string& mode, std::string initial, std::uint64_t seed, double tol,
                    std::optional<int> steps, double window_fraction) {
  const Liouvillian l = liouvillian_for(u, mode);
  if (initial.empty()) initial = default_initial(mode);
  const KrylovVector v0 = initial_vector(InitialCondition::parse(initial), l.dim_hilbert(), seed);
  const KrylovBasis basis = arnoldi_iterate(l, v0, l.max_krylov_dim(), tol);
  const int n_steps = steps.value_or(4 * basis.dk);
  const AmplitudeSeries direct = amplitudes_direct(basis, l, v0, n_steps);
  const AmplitudeSeries recursive = amplitudes_recursive(basis.hessenberg, basis.dk, n_steps);
  const ComplexityTrace trace = complexity_trace(direct, window_fraction);
  py::dict out;
  out["dk"] = basis.dk;
  out["k_complexity"] = trace.k_values;
  out["k_entropy"] = trace.s_values;
  out["saturation_mean"] = trace.saturation_mean;
  out["saturation_std"] = trace.saturation_std;
  out["route_max_diff"] = max_abs(direct.amps - recursive.amps);
  return out;
}

py::dict lanczos(const CMatrix& h, const std::string& mode, std::string initial, std::uint64_t seed, double tol) {
  const Liouvillian l = mode == "state" ? Liouvillian::hermitian_on_state(h) : Liouvillian::hermitian_commutator(h);
  if (mode != "state" && mode != "operator") throw UsageError("mode must be 'state' or 'operator'");
  if (initial.empty()) initial = default_initial(mode);
  const KrylovVector v0 = initial_vector(InitialCondition::parse(initial), l.dim_hilbert(), seed);
  const LanczosData data = lanczos_iterate(l, v0, l.max_krylov_dim(), tol);
  py::dict out;
  out["a"] = data.a;
  out["b"] = data.b;
  out["dk"] = data.dk;
  out["terminated"] = data.terminated;
  return out;
}

py::dict spectrum(const std::vector<double>& phases, int n_bins, double s_max) {
  QuasiEnergySpectrum s;
  s.phases = phases;
  const SpectrumStats stats = spectrum_stats(s, n_bins, s_max);
  py::dict out;
  out["spacings"] = stats.spacings;
  out["r_mean"] = stats.r_mean;
  out["bin_centers"] = stats.histogram.bin_centers;
  out["density"] = stats.histogram.density;
  out["l1_to_poisson"] = stats.histogram.l1_to_poisson();
  out["l1_to_gue"] = stats.histogram.l1_to_gue();
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Krylov subspaces and complexity for Floquet quantum maps";
  m.attr("__version__") = kVersion;

  static py::exception<Error> base_error(m, "FloqrylovError", PyExc_RuntimeError);
  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  m.def(
      "build_toral_qkr",
      [](int n, double kappa, double alpha, double beta) {
        return build_toral_qkr(FloquetParams::make(n, kappa, alpha, beta)).matrix();
      },
      py::arg("n"), py::arg("kappa"), py::arg("alpha") = 0.0, py::arg("beta") = 0.0,
      "Toral kicked-rotor Floquet matrix.");
  m.def(
      "build_kicked_harper", [](int n, double kappa) { return build_kicked_harper(n, kappa).matrix(); },
      py::arg("n"), py::arg("kappa"), "Kicked Harper Floquet matrix.");
  m.def("unitarity_defect", &unitarity_defect, py::arg("u"), "max |U^dag U - I|.");
  m.def(
      "quasi_energies", [](const CMatrix& u) { return quasi_energies(UnitaryMatrix::from_matrix(u)).phases; },
      py::arg("u"), "Sorted quasi-energies in (-pi, pi], eigenvalues exp(-i eps).");
  m.def(
      "effective_hamiltonian", [](const CMatrix& u) { return effective_hamiltonian(UnitaryMatrix::from_matrix(u)); },
      py::arg("u"), "Principal-branch H with exp(-iH) = U.");

  m.def("krylov", &krylov, py::arg("u"), py::arg("mode") = "state", py::arg("initial") = "", py::arg("seed") = 0,
        py::arg("tol") = kDefaultKrylovTolerance, py::arg("max_dim") = 0,
        "Arnoldi iteration; returns dk, terminated, hessenberg, subdiagonal, dk_max.");
  m.def("complexity", &complexity, py::arg("u"), py::arg("mode") = "state", py::arg("initial") = "",
        py::arg("seed") = 0, py::arg("tol") = kDefaultKrylovTolerance, py::arg("steps") = std::nullopt,
        py::arg("window_fraction") = kDefaultSaturationWindow,
        "K-complexity and K-entropy traces (default 4 * D_K steps).");
  m.def("lanczos", &lanczos, py::arg("h"), py::arg("mode") = "state", py::arg("initial") = "", py::arg("seed") = 0,
        py::arg("tol") = kDefaultKrylovTolerance, "Lanczos coefficients for a Hermitian generator.");
  m.def(
      "evolve_chain",
      [](const std::vector<double>& a, const std::vector<double>& b, const std::vector<double>& times) {
        return evolve_chain(a, b, times).amps;
      },
      py::arg("a"), py::arg("b"), py::arg("times"), "Krylov-chain amplitudes phi_n(t), one row per time.");
  m.def("spectrum_stats", &spectrum, py::arg("phases"), py::arg("n_bins") = kDefaultBins,
        py::arg("s_max") = kDefaultSpacingMax, "Circular spacings, r statistic and histogram distances.");
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        py::gil_scoped_release release;
        return cli::run(args, std::cout, std::cerr);
      },
      py::arg("args"), "Runs the command-line front end; returns the exit code.");
}
