#include "onecut/asymptotics.hpp"
#include "onecut/cli.hpp"
#include "onecut/equilibrium.hpp"
#include "onecut/errors.hpp"
#include "onecut/recurrence.hpp"
#include "onecut/rh_expansion.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace onecut;

namespace {

// Extended-precision values cross the boundary as decimal strings; the
// Python side turns them into decimal.Decimal.
std::string text(const Real& x, int digits) { return to_string(x, static_cast<unsigned>(digits)); }

py::dict equilibrium(const std::string& spec, unsigned bits, int digits) {
  const PrecisionScope scope(bits);
  const Potential p = Potential::parse(spec);
  const EquilibriumMeasure m = compute_equilibrium(p);
  py::dict d;
  d["a"] = text(m.a(), digits);
  d["b"] = text(m.b(), digits);
  d["regular"] = m.regular();
  if (m.lagrange()) d["lagrange"] = text(*m.lagrange(), digits);
  return d;
}

std::vector<std::tuple<int, std::string, std::string>> recurrence(const std::string& spec, int n_max,
                                                                  unsigned bits, int digits, unsigned threads) {
  const PrecisionScope scope(bits);
  RecurrenceOptions opts;
  opts.digits_target = digits;
  opts.threads = threads;
  RecurrenceTable t;
  {
    py::gil_scoped_release release;
    t = compute_recurrence(Potential::parse(spec), n_max, opts);
  }
  std::vector<std::tuple<int, std::string, std::string>> rows;
  for (const auto& e : t.entries) rows.emplace_back(e.n, text(e.a, digits), text(e.b, digits));
  return rows;
}

py::dict beta1(const std::string& spec, unsigned bits, int digits) {
  const PrecisionScope scope(bits);
  const Potential p = Potential::parse(spec);
  const EquilibriumMeasure m = compute_equilibrium(p);
  m.require_regular();
  py::dict d;
  d["closed"] = text(beta1_closed(m), digits);
  d["via_R"] = text(beta1_via_R(m, p), digits);
  return d;
}

py::tuple run(const std::vector<std::string>& args, const std::string& input) {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = run_cli(args, in, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Equilibrium measures and diagonal recurrence coefficients at extended precision";

  py::register_exception<Error>(m, "OnecutError", PyExc_RuntimeError);

  m.def("equilibrium", &equilibrium, py::arg("spec"), py::arg("precision_bits") = 256, py::arg("digits") = 30);
  m.def("recurrence", &recurrence, py::arg("spec"), py::arg("n_max"), py::arg("precision_bits") = 256,
        py::arg("digits") = 30, py::arg("threads") = 0);
  m.def("beta1", &beta1, py::arg("spec"), py::arg("precision_bits") = 256, py::arg("digits") = 30);
  m.def("run", &run, py::arg("args"), py::arg("input") = "",
        "Runs the command-line tool in-process; returns (exit_code, stdout, stderr).");
  m.attr("__version__") = ONECUT_VERSION;
}
