#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "faddeev/checks.hpp"
#include "faddeev/config.hpp"

namespace py = pybind11;
using namespace faddeev;

namespace {

py::array_t<double> to_numpy(const ScalarField& f) {
  const int n = f.grid().nx();
  py::array_t<double> out({n, n});  // [j, i], x_1 fastest
  std::copy(f.values().begin(), f.values().end(), out.mutable_data());
  return out;
}

py::dict trajectory_dict(const Trajectory& tr) {
  py::dict d;
  d["status"] = std::string(to_string(tr.status));
  d["message"] = tr.message;
  d["dt"] = tr.dt;
  d["steps"] = tr.steps;
  d["t"] = py::array(py::cast(tr.series.times()));
  py::dict cols;
  for (const std::string& c : tr.series.columns()) cols[py::str(c)] = py::array(py::cast(tr.series.column(c)));
  d["series"] = cols;
  const FieldState& last = tr.snapshots.back();
  py::dict fin;
  fin["t"] = last.t;
  fin["L"] = last.grid.half_width();
  fin["n1"] = to_numpy(last.n1);
  fin["n2"] = to_numpy(last.n2);
  fin["m1"] = to_numpy(last.m1);
  fin["m2"] = to_numpy(last.m2);
  d["final"] = fin;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Small-data Faddeev model solver and diagnostics";

  py::register_exception<Error>(m, "FaddeevError", PyExc_RuntimeError);

  m.def(
      "simulate",
      [](const std::string& config_json) {
        const AppConfig cfg = parse_config(config_json);
        Trajectory tr;
        {
          py::gil_scoped_release release;
          tr = run(cfg.run);
        }
        return trajectory_dict(tr);
      },
      py::arg("config_json") = "{}", "Run the solver from a JSON config string.");

  m.def(
      "check",
      [](const std::string& suite, int nx) {
        py::gil_scoped_release release;
        return run_check(suite, nx);
      },
      py::arg("suite"), py::arg("nx_override") = 0);
  m.def(
      "oracle",
      [](const std::string& sub, int nx) {
        py::gil_scoped_release release;
        return run_oracle(sub, nx);
      },
      py::arg("sub"), py::arg("nx_override") = 0);
  py::class_<SuiteReport>(m, "SuiteReport")
      .def_readonly("name", &SuiteReport::name)
      .def_readonly("lines", &SuiteReport::lines)
      .def_readonly("passed", &SuiteReport::passed)
      .def("__bool__", [](const SuiteReport& r) { return r.passed; })
      .def("__repr__", [](const SuiteReport& r) {
        return "<SuiteReport " + r.name + (r.passed ? " PASS>" : " FAIL>");
      });
  m.def("check_suites", &check_suite_names);
  m.def("oracles", &oracle_names);

  m.def(
      "fit_decay",
      [](const std::vector<double>& t, const std::vector<double>& v, double t0, double t1) {
        const DecayFit f = fit_decay(t, v, {t0, t1});
        py::dict d;
        d["gamma"] = f.gamma;
        d["amplitude"] = f.amplitude;
        d["rms"] = f.rms;
        d["samples"] = f.samples;
        return d;
      },
      py::arg("t"), py::arg("values"), py::arg("t0") = 10.0, py::arg("t1") = 40.0,
      "Fit values ~ amplitude (1 + t)^gamma over [t0, t1].");

  m.def(
      "evolve_free",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> u0,
         py::array_t<double, py::array::c_style | py::array::forcecast> u1, double half_width, double t) {
        if (u0.ndim() != 2 || u0.shape(0) != u0.shape(1) || u1.ndim() != 2 || u1.shape(0) != u0.shape(0) ||
            u1.shape(1) != u0.shape(1))
          throw Error(ErrorKind::InvalidArgument, "evolve_free: u0 and u1 must be equal square arrays");
        const Grid2D g(static_cast<int>(u0.shape(0)), half_width);
        const ScalarField a(g, std::vector<double>(u0.data(), u0.data() + u0.size()));
        const ScalarField b(g, std::vector<double>(u1.data(), u1.data() + u1.size()));
        return to_numpy(evolve_homogeneous(a, b, t));
      },
      py::arg("u0"), py::arg("u1"), py::arg("half_width"), py::arg("t"),
      "Free wave evolution on the periodic box [-L, L)^2.");
}
