// Copyright 2026 The dissipa Authors
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
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "dissipa/experiment.hpp"

namespace py = pybind11;
using namespace dissipa;

namespace {

py::dict trajectory_dict(const TrajectoryRecord& r) {
  py::dict d;
  d["t"] = r.times;
  d["V"] = r.v;
  d["Vdot"] = r.vdot;
  d["Vdot_free"] = r.vdot_free;
  d["controls"] = r.controls;
  py::dict pops;
  for (const auto& label : r.population_labels) pops[py::str(label)] = r.population(label);
  d["populations"] = pops;
  d["min_eigenvalues"] = r.min_eigenvalues;
  d["max_renormalization"] = r.max_renormalization;
  d["final_state"] = r.final_state;
  return d;
}

py::dict stationarity_dict(const StationarityReport& r) {
  py::dict d;
  d["hamiltonian_residual"] = r.hamiltonian_residual;
  d["h_annihilates_target"] = r.h_annihilates_target;
  d["lindblad_residuals"] = r.lindblad_residuals;
  d["lindblad_annihilates_target"] = r.lindblad_annihilates_target;
  d["lindblad_feed_norms"] = r.lindblad_feed_norms;
  d["target_reachable"] = r.target_reachable;
  d["complement_drive_norms"] = r.complement_drive_norms;
  d["complement_driven"] = r.complement_driven;
  d["all_pass"] = r.all_pass();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Open quantum system state preparation with Lyapunov feedback";

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<PropagationError>(m, "PropagationError", PyExc_RuntimeError);

  // operator algebra
  m.def("kron", [](const ComplexMatrix& a, const ComplexMatrix& b) { return kron(a, b); });
  m.def("commutator", &commutator);
  m.def("hermitian_eigen", [](const ComplexMatrix& a) {
    const auto e = hermitian_eigen(a);
    ComplexMatrix vecs(a.rows(), a.cols());
    for (std::size_t i = 0; i < e.eigenvectors.size(); ++i) {
      vecs.col(static_cast<Eigen::Index>(i)) = e.eigenvectors[i];
    }
    return py::make_tuple(e.eigenvalues, vecs);
  }, "Ascending eigenvalues and eigenvectors as columns.");

  // lindblad engine
  m.def("dissipator",
        py::overload_cast<const std::vector<ComplexMatrix>&, const ComplexMatrix&>(&dissipator),
        py::arg("lindblad_ops"), py::arg("rho"));
  m.def("noise_superoperator", [](const ComplexMatrix& h_s, double eta, const ComplexMatrix& rho) {
    return noise_superoperator({NoiseChannel(h_s, eta)}, rho);
  }, py::arg("h_s"), py::arg("eta"), py::arg("rho"));

  // model catalog
  py::class_<LambdaParams>(m, "LambdaParams")
      .def(py::init<>())
      .def_readwrite("omega0", &LambdaParams::omega0)
      .def_readwrite("theta", &LambdaParams::theta)
      .def_readwrite("phi", &LambdaParams::phi)
      .def_readwrite("gamma1", &LambdaParams::gamma1)
      .def_readwrite("gamma2", &LambdaParams::gamma2)
      .def_readwrite("mu1", &LambdaParams::mu1)
      .def_readwrite("mu2", &LambdaParams::mu2)
      .def_readwrite("eta", &LambdaParams::eta);

  py::class_<TwoAtomParams>(m, "TwoAtomParams")
      .def(py::init<>())
      .def_readwrite("omega0", &TwoAtomParams::omega0)
      .def_readwrite("omega_mw", &TwoAtomParams::omega_mw)
      .def_readwrite("delta", &TwoAtomParams::delta)
      .def_readwrite("lambda_c", &TwoAtomParams::lambda_c)
      .def_readwrite("kappa", &TwoAtomParams::kappa)
      .def_readwrite("gamma1", &TwoAtomParams::gamma1)
      .def_readwrite("gamma2", &TwoAtomParams::gamma2)
      .def_readwrite("mu1", &TwoAtomParams::mu1)
      .def_readwrite("mu2", &TwoAtomParams::mu2)
      .def_readwrite("n_max", &TwoAtomParams::n_max);

  py::class_<CatalogModel>(m, "Model")
      .def_property_readonly("dim", [](const CatalogModel& c) { return c.model.dim(); })
      .def_readonly("target", &CatalogModel::target)
      .def_readonly("states", &CatalogModel::states)
      .def_readonly("default_initial", &CatalogModel::default_initial)
      .def_property_readonly("lindblad_ops", [](const CatalogModel& c) { return c.model.lindblad_ops; })
      .def_property_readonly("controls", [](const CatalogModel& c) { return c.model.controls; })
      .def("hamiltonian", [](const CatalogModel& c, double t) { return c.model.hamiltonian.evaluate(t); },
           py::arg("t") = 0.0)
      .def("rhs", [](const CatalogModel& c, double t, const ComplexMatrix& rho,
                     const std::vector<double>& f) { return master_rhs(c.model, t, rho, f); },
           py::arg("t"), py::arg("rho"), py::arg("controls"))
      .def("control_amplitudes", [](const CatalogModel& c, const ComplexMatrix& rho) {
        return control_amplitudes(c.model, DensityMatrix(rho));
      })
      .def("speed", [](const CatalogModel& c, double t, const ComplexMatrix& rho, bool controls_on) {
        const auto r = evolution_speed(c.model, t, DensityMatrix(rho), controls_on);
        py::dict d;
        d["v"] = r.v;
        d["vdot_free"] = r.vdot_free;
        d["vdot_controlled"] = r.vdot_controlled;
        d["control_contribution"] = r.control_contribution;
        d["controls"] = r.controls;
        return d;
      }, py::arg("t"), py::arg("rho"), py::arg("controls_on") = true)
      .def("verify", [](const CatalogModel& c) {
        return stationarity_dict(verify_stationarity(c.model, c.target, c.complement));
      })
      .def("propagate", [](const CatalogModel& c, const std::string& initial, double t_final,
                           double dt, int record_stride, bool controls_on) {
        PropagationOptions o;
        o.t_final = t_final;
        o.dt = dt;
        o.record_stride = record_stride;
        const auto rho0 = DensityMatrix::pure(c.state(initial));
        TrajectoryRecord r;
        {
          py::gil_scoped_release release;
          if (controls_on) {
            const LyapunovController law(c.model);
            r = propagate(c.model, rho0, o, &law);
          } else {
            r = propagate(c.model, rho0, o);
          }
        }
        return trajectory_dict(r);
      }, py::arg("initial"), py::arg("t_final"), py::arg("dt") = 1e-3,
         py::arg("record_stride") = 1, py::arg("controls_on") = false);

  m.def("build_lambda_full", &build_lambda_full);
  m.def("build_lambda_effective", &build_lambda_effective);
  m.def("build_two_atom_full", &build_two_atom_full);
  m.def("build_two_atom_effective", &build_two_atom_effective);
  m.def("cooperativity", &cooperativity);
  m.def("zeno_reduce", [](const ComplexMatrix& h_p, const ComplexMatrix& h_q, double eigenvalue) {
    const auto z = zeno_reduce(h_p, h_q, eigenvalue);
    return py::make_tuple(z.projector, z.effective_h);
  }, py::arg("h_p"), py::arg("h_q"), py::arg("eigenvalue_select"));

  // experiment runner
  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def_static("parse", [](const std::string& text) { return ExperimentConfig::parse(text); })
      .def_static("load", &ExperimentConfig::load)
      .def("set", [](ExperimentConfig& c, const std::string& path, double v) { c.set(path, v); })
      .def("build", &ExperimentConfig::build)
      .def("clear_sweep", [](ExperimentConfig& c) { c.sweep.clear(); })
      .def_property_readonly("model", [](const ExperimentConfig& c) { return to_string(c.model); })
      .def_readwrite("controls_enabled", &ExperimentConfig::controls_enabled)
      .def_readwrite("initial_state", &ExperimentConfig::initial_state)
      .def_readwrite("t_final", &ExperimentConfig::t_final)
      .def_readwrite("dt", &ExperimentConfig::dt)
      .def_readwrite("record_stride", &ExperimentConfig::record_stride)
      .def_readwrite("output_dir", &ExperimentConfig::output_dir);

  m.def("simulate", [](const ExperimentConfig& c) {
    TrajectoryRecord r;
    {
      py::gil_scoped_release release;
      r = simulate(c);
    }
    return trajectory_dict(r);
  });
  m.def("sweep", [](const ExperimentConfig& c, int jobs) {
    SweepResult r;
    {
      py::gil_scoped_release release;
      r = sweep(c, jobs);
    }
    py::list cells;
    for (const auto& cell : r.cells) {
      py::dict d;
      d["values"] = cell.values;
      d["F_S"] = cell.fidelity;
      d["max_Vdot"] = cell.max_vdot;
      d["max_abs_controls"] = cell.max_abs_controls;
      cells.append(d);
    }
    std::vector<std::string> axes;
    for (const auto& a : r.axes) axes.push_back(a.path);
    return py::make_tuple(axes, cells);
  }, py::arg("config"), py::arg("jobs") = 1);
  m.def("verify", [](const ExperimentConfig& c) { return stationarity_dict(verify(c)); });
  m.def("noise_scan", [](const ExperimentConfig& c, const std::vector<double>& etas, int jobs) {
    std::vector<NoiseRow> rows;
    {
      py::gil_scoped_release release;
      rows = noise_scan(c, etas, jobs);
    }
    py::list out;
    for (const auto& r : rows) out.append(py::make_tuple(r.eta, r.gamma, r.fidelity));
    return out;
  }, py::arg("config"), py::arg("etas"), py::arg("jobs") = 1);
  m.def("compare_zeno", [](const ExperimentConfig& c) {
    const auto z = compare_zeno(c);
    py::dict d;
    d["full"] = trajectory_dict(z.full);
    d["effective"] = trajectory_dict(z.effective);
    d["max_abs_delta_P_S"] = z.max_abs_delta_ps;
    return d;
  });
  m.def("format_double", &format_double);
}
