#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "imcf/cli.hpp"
#include "imcf/errors.hpp"
#include "imcf/flow.hpp"
#include "imcf/geometry.hpp"
#include "imcf/isoperimetry.hpp"
#include "imcf/regsolver.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace imcf;

PYBIND11_MODULE(_imcflab, m) {
  m.doc() = "Radial inverse mean curvature flow and isoperimetric bounds";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ArithmeticError);

  py::class_<RadialMetric>(m, "RadialMetric")
      .def_property_readonly("name", &RadialMetric::name)
      .def_property_readonly("s_min", &RadialMetric::s_min)
      .def_property_readonly("s_max", &RadialMetric::s_max)
      .def_property_readonly("asymptotically_flat", &RadialMetric::asymptotically_flat)
      .def("A", &RadialMetric::A)
      .def("R", &RadialMetric::R)
      .def("volume", &RadialMetric::volume);

  m.def("make_preset", &make_preset, py::arg("name"), py::arg("params") = std::map<std::string, double>{});
  m.def("scalar_curvature", py::overload_cast<const RadialMetric&, double>(&scalar_curvature));
  m.def("hawking_mass", [](const RadialMetric& g, double s) { return sphere_geometry(g, s).hawking_mass; });
  m.def("adm_mass", [](const RadialMetric& g) { return adm_mass(g).mass; });

  py::class_<FlowSample>(m, "FlowSample")
      .def_readonly("t", &FlowSample::t)
      .def_readonly("s", &FlowSample::s)
      .def_readonly("B", &FlowSample::B)
      .def_readonly("m", &FlowSample::m)
      .def_readonly("v", &FlowSample::v)
      .def_readonly("H", &FlowSample::H);
  py::class_<JumpEvent>(m, "JumpEvent")
      .def_readonly("t1", &JumpEvent::t1)
      .def_readonly("s_before", &JumpEvent::s_before)
      .def_readonly("s_after", &JumpEvent::s_after)
      .def_readonly("v_before", &JumpEvent::v_before)
      .def_readonly("v_after", &JumpEvent::v_after)
      .def_readonly("initial", &JumpEvent::initial);
  py::class_<FlowProfile>(m, "FlowProfile")
      .def_readonly("samples", &FlowProfile::samples)
      .def_readonly("jumps", &FlowProfile::jumps)
      .def_readonly("truncated", &FlowProfile::truncated)
      .def("max_volume", &FlowProfile::max_volume);

  m.def("exact_flow", &exact_flow, py::arg("metric"), py::arg("s0"), py::arg("t_max"), py::arg("n"));
  m.def("t_of_v", &t_of_v);
  m.def("theorem1_rhs", [](const FlowProfile& p, double v) { return theorem1_rhs(p, v).value; });
  m.def("classical_isoperimetric_area", &classical_isoperimetric_area);
  m.def("check_bound", [](const FlowProfile& p, const std::vector<double>& grid) {
    py::list out;
    for (const auto& r : check_bound(p, grid))
      out.append(py::dict("v"_a = r.v, "B"_a = r.B, "rhs"_a = r.rhs, "slack"_a = r.slack,
                          "verdict"_a = to_string(r.verdict)));
    return out;
  });

  py::enum_<OracleMode>(m, "OracleMode").value("Full", OracleMode::Full).value("Exterior", OracleMode::Exterior);
  m.def("oracle_A", [](const RadialMetric& g, double v, OracleMode mode) {
    const auto r = oracle_A(g, v, mode);
    return py::dict("area"_a = r.area, "s_inner"_a = r.s_inner, "s_outer"_a = r.s_outer,
                    "candidate"_a = r.candidate);
  }, py::arg("metric"), py::arg("v"), py::arg("mode") = OracleMode::Full);
  m.def("meeks_yau_bound", py::overload_cast<double, double>(&meeks_yau_bound), py::arg("K"), py::arg("r"));

  m.def("solve_regularized", [](const RadialMetric& g, double s0, double L, double eps, int n) {
    const auto r = solve_newton(make_problem(g, s0, L, eps, n));
    return py::dict("s"_a = r.s, "u"_a = r.u, "residual_norm"_a = r.residual_norm,
                    "iterations"_a = r.newton_iterations, "converged"_a = r.converged);
  }, py::arg("metric"), py::arg("s0"), py::arg("L"), py::arg("epsilon"), py::arg("n"));
  m.def("auto_level", &auto_level);

  m.def("cli_main", [](std::vector<std::string> args) {
    args.insert(args.begin(), "imcflab");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return cli::main(int(argv.size()), argv.data());
  });
}
