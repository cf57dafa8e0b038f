#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lnratio/acceptance.hpp"
#include "lnratio/analysis.hpp"
#include "lnratio/core_eval.hpp"
#include "lnratio/densities.hpp"
#include "lnratio/jet.hpp"
#include "lnratio/opmon.hpp"
#include "lnratio/reports.hpp"
#include "lnratio/representations.hpp"

namespace py = pybind11;
using namespace lnratio;

namespace {

FunctionId fn_id(const std::string& name) {
  if (auto fn = parse_function_id(name)) return *fn;
  throw py::value_error("unknown function id '" + name + "'");
}

RepresentationId rep_id(const std::string& name) {
  if (auto rep = parse_representation_id(name)) return *rep;
  throw py::value_error("unknown representation '" + name + "'");
}

BoundaryQuantity boundary_quantity(const std::string& name) {
  for (auto q : {BoundaryQuantity::RE_G, BoundaryQuantity::IM_G, BoundaryQuantity::IM_INV_Z2H}) {
    if (to_string(q) == name) return q;
  }
  throw py::value_error("unknown boundary quantity '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_lnratio, m) {
  m.doc() = "Evaluation, representation and property checks for ln z / ln((1+z^2)/(1+z))";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

  m.def("eval", [](const std::string& fn, cplx z) { return eval(fn_id(fn), CutPlanePoint::make(z)); },
        py::arg("fn"), py::arg("z"));
  m.def("eval_real", [](const std::string& fn, double x) { return eval_real(fn_id(fn), x); },
        py::arg("fn"), py::arg("x"));
  m.def(
      "boundary_limit",
      [](double t, const std::string& which, double tol) {
        const auto r = boundary_limit(t, boundary_quantity(which), tol);
        return py::make_tuple(r.value, r.error_estimate, r.converged);
      },
      py::arg("t"), py::arg("which"), py::arg("tol") = 1e-10);

  m.def("rho", &rho, py::arg("t"));
  m.def("g2", &g2, py::arg("t"));
  m.def("varrho_paper", &varrho_paper, py::arg("t"));
  m.def("sigma", &sigma, py::arg("t"));
  m.def("sigma_discrepancy_json", [] { return to_json(sigma_calibration()).dump(); });

  m.def(
      "verify_json",
      [](const std::string& rep, std::optional<double> tol) {
        const auto id = rep_id(rep);
        return to_json(verify_representation(id, default_points(id), tol.value_or(default_tolerance(id))))
            .dump();
      },
      py::arg("rep"), py::arg("tol") = py::none());

  m.def(
      "taylor_jet",
      [](const std::string& fn, double x, int order) {
        const auto j = taylor_jet(fn_id(fn), x, order);
        return py::make_tuple(j.coeffs(), j.loss_of_significance);
      },
      py::arg("fn"), py::arg("x"), py::arg("order"));
  m.def("degree_ratio", [](const std::string& fn, double x) { return degree_ratio(fn_id(fn), x); },
        py::arg("fn"), py::arg("x"));

  m.def(
      "check_json",
      [](const std::string& kind, const std::string& fn, const std::string& grid, int order, double tol) {
        const auto g = GridSpec::parse(grid);
        const auto id = fn_id(fn);
        if (kind == "cm") return to_json(check_cm(id, g, order, tol)).dump();
        if (kind == "lcm") return to_json(check_lcm(id, g, order, tol)).dump();
        if (kind == "bernstein") return to_json(check_bernstein(id, g, order, tol)).dump();
        throw py::value_error("kind must be cm, lcm or bernstein");
      },
      py::arg("kind"), py::arg("fn"), py::arg("grid") = "log:0.01:100:50", py::arg("order") = 10,
      py::arg("tol") = kDefaultSignTol);
  m.def(
      "stieltjes_json",
      [](const std::string& fn) {
        return to_json(check_stieltjes_geometric(stieltjes_target(fn_id(fn)), upper_half_plane_grid()))
            .dump();
      },
      py::arg("fn"));
  m.def(
      "opmon_json",
      [](const std::string& fn, int dim, int trials, std::uint64_t seed) {
        return to_json(check_operator_monotone(parse_scalar_function(fn), dim, trials, seed)).dump();
      },
      py::arg("fn"), py::arg("dim"), py::arg("trials"), py::arg("seed"));

  m.def(
      "run_criterion",
      [](int id) {
        const auto r = run_criterion(id);
        return py::make_tuple(r.pass, format_line(r));
      },
      py::arg("id"));
}
