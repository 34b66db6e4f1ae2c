// Copyright 2026 The uddtd Authors
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

#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "uddtd/errors.hpp"
#include "uddtd/operators.hpp"
#include "uddtd/piecewise.hpp"
#include "uddtd/propagator.hpp"
#include "uddtd/sequence.hpp"
#include "uddtd/spectral.hpp"

namespace py = pybind11;
using namespace uddtd;

namespace {

PulseAxis axis_of(const std::string& s) { return parse_axis(s); }

SwitchingFunction switching(const std::vector<double>& breakpoints) {
  return SwitchingFunction(breakpoints);
}

py::dict fit_dict(const LogLogFit& f) {
  py::dict d;
  d["slope"] = f.slope;
  d["intercept"] = f.intercept;
  d["r_squared"] = f.r_squared;
  d["points"] = f.points;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dynamical decoupling sequences, ordered integrals and propagators";

  py::register_exception<NoAsymptoticWindow>(m, "NoAsymptoticWindow", PyExc_RuntimeError);
  static py::exception<NumericalFailure> numerical(m, "NumericalFailure", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const NumericalFailure& e) {
      py::set_error(numerical, e.what());
    }
  });

  py::class_<PulseSequence>(m, "PulseSequence")
      .def(py::init([](const std::vector<std::pair<double, std::string>>& pulses,
                       double duration) {
             std::vector<Pulse> p;
             for (const auto& [t, a] : pulses) p.push_back({t, axis_of(a)});
             return PulseSequence(std::move(p), duration);
           }),
           py::arg("pulses"), py::arg("duration") = 1.0)
      .def_property_readonly("instants", &PulseSequence::instants)
      .def_property_readonly("axes",
                             [](const PulseSequence& s) {
                               std::vector<std::string> out;
                               for (const auto& p : s.pulses()) out.emplace_back(1, axis_name(p.axis));
                               return out;
                             })
      .def_property_readonly("duration", &PulseSequence::duration)
      .def("rescaled", &PulseSequence::rescaled)
      .def("to_json", [](const PulseSequence& s) { return to_json(s).dump(); })
      .def("__len__", &PulseSequence::size);

  m.def("udd_times", &udd_times, py::arg("n"));
  m.def(
      "udd_sequence",
      [](int n, const std::string& axis, double duration) {
        return udd_sequence(n, axis_of(axis), duration);
      },
      py::arg("n"), py::arg("axis") = "X", py::arg("duration") = 1.0);
  m.def(
      "qdd_sequence",
      [](int n_outer, int n_inner, const std::string& outer, const std::string& inner,
         double duration) {
        return qdd_sequence(n_outer, n_inner, axis_of(outer), axis_of(inner), duration);
      },
      py::arg("n_outer"), py::arg("n_inner"), py::arg("outer_axis") = "X",
      py::arg("inner_axis") = "Z", py::arg("duration") = 1.0);

  m.def(
      "ordered_coefficient",
      [](const std::vector<double>& breakpoints, const std::vector<int>& powers) {
        return ordered_coefficient({powers, switching(breakpoints)});
      },
      py::arg("breakpoints"), py::arg("powers"),
      "Nested integral of prod_j F(t_j) t_j^p_j over the ordered simplex.");
  m.def(
      "mc_oracle",
      [](const std::vector<double>& breakpoints, const std::vector<int>& powers,
         std::size_t samples, std::uint64_t seed) {
        const auto e = mc_oracle({powers, switching(breakpoints)}, samples, seed);
        return py::make_tuple(e.estimate, e.standard_error);
      },
      py::arg("breakpoints"), py::arg("powers"), py::arg("samples"), py::arg("seed"));
  m.def(
      "magnus_integrals",
      [](const std::vector<double>& breakpoints, double t_p) {
        const auto mi = magnus_integrals(switching(breakpoints), t_p);
        py::dict d;
        d["I1"] = mi.i1;
        d["J2"] = mi.j2;
        d["I31"] = mi.i31;
        d["I32"] = mi.i32;
        return d;
      },
      py::arg("breakpoints"), py::arg("t_p") = 1.0);

  m.def("fourier_coefficient", &fourier_coefficient, py::arg("n"), py::arg("r"));
  m.def("in_spectrum", &in_spectrum, py::arg("n"), py::arg("r"));
  m.def(
      "f_coefficient",
      [](int n, const std::vector<int>& q) { return f_coefficient(n, q); }, py::arg("n"),
      py::arg("q"));
  m.def(
      "f_coefficient_series",
      [](int n, const std::vector<int>& q, int k_max) {
        return f_coefficient_series(n, q, k_max);
      },
      py::arg("n"), py::arg("q"), py::arg("k_max") = 50);
  m.def(
      "cos_chain", [](const std::vector<int>& s) { return cos_chain(s); }, py::arg("s"));
  m.def(
      "cos_chain_reduced", [](const std::vector<int>& s) { return cos_chain_reduced(s); },
      py::arg("s"));

  py::class_<HamiltonianSeries>(m, "HamiltonianSeries")
      .def_readonly("bath_dim", &HamiltonianSeries::bath_dim)
      .def_property_readonly("degree", &HamiltonianSeries::degree)
      .def("at", &HamiltonianSeries::at, py::arg("t"))
      .def("d0", &HamiltonianSeries::d0, py::arg("t") = 0.0)
      .def("d1", &HamiltonianSeries::d1, py::arg("t") = 0.0);

  m.def(
      "random_hamiltonian",
      [](int d, int degree, std::uint64_t seed, bool transverse, bool longitudinal) {
        RandomHamiltonianOptions opts;
        opts.transverse = transverse;
        opts.longitudinal = longitudinal;
        return random_hamiltonian(d, degree, seed, opts);
      },
      py::arg("d"), py::arg("degree"), py::arg("seed"), py::arg("transverse") = true,
      py::arg("longitudinal") = true);
  m.def("eta2", &eta2);
  m.def("d1_eta2_commutator", &d1_eta2_commutator);
  m.def(
      "magnus_terms",
      [](const HamiltonianSeries& h, const std::vector<double>& breakpoints, double t_p) {
        const auto mt = magnus_terms(h, switching(breakpoints), t_p);
        py::dict d;
        d["H1"] = mt.h1;
        d["H2"] = mt.h2;
        d["H3"] = mt.h3;
        return d;
      },
      py::arg("h"), py::arg("breakpoints"), py::arg("t_p"));

  m.def(
      "evolve",
      [](const HamiltonianSeries& h, const PulseSequence& seq, double total_time, int steps) {
        return evolve({h, seq, total_time, steps});
      },
      py::arg("h"), py::arg("sequence"), py::arg("total_time"), py::arg("steps") = 8);
  m.def("toggling_frame", &toggling_frame, py::arg("u"), py::arg("sequence"));
  m.def(
      "error_metric",
      [](const Matrix& u, const std::string& mode) { return error_metric(u, parse_mode(mode)); },
      py::arg("u"), py::arg("mode") = "dephasing");
  m.def(
      "scaling_sweep",
      [](const HamiltonianSeries& h, const PulseSequence& seq, const std::string& mode,
         const std::vector<double>& times, unsigned threads) {
        const auto r = scaling_sweep({h, seq, parse_mode(mode)}, times, threads);
        py::dict d = fit_dict(r.fit);
        std::vector<std::pair<double, double>> samples;
        for (const auto& s : r.samples) samples.emplace_back(s.time, s.error);
        d["samples"] = samples;
        return d;
      },
      py::arg("h"), py::arg("sequence"), py::arg("mode"), py::arg("times"),
      py::arg("threads") = 1);
  m.def("log_grid", &log_grid, py::arg("start"), py::arg("stop"), py::arg("points"));
  m.def(
      "effective_hamiltonian",
      [](const PulseSequence& seq, const HamiltonianSeries& h, double t, double rel_step) {
        return effective_hamiltonian(seq, h, t, rel_step);
      },
      py::arg("sequence"), py::arg("h"), py::arg("t"),
      py::arg("rel_step") = kDefaultFiniteDifferenceStep);
  m.def(
      "fit_effective_hamiltonian",
      [](const PulseSequence& seq, const HamiltonianSeries& h, const std::vector<double>& times) {
        const auto f = fit_effective_hamiltonian(seq, h, times);
        py::dict d;
        d["kappa"] = f.kappa;
        d["relative_error"] = f.relative_error;
        d["quadratic"] = f.quadratic;
        d["predicted"] = f.predicted;
        return d;
      },
      py::arg("sequence"), py::arg("h"), py::arg("times"));
}
