// Thin pybind11 layer. Vectors cross the boundary as lists of exact decimal or
// fraction strings; verdicts come back as the same JSON text the CLI writes.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "catamaj/cli.hpp"
#include "catamaj/coherence.hpp"
#include "catamaj/report.hpp"

namespace py = pybind11;
using namespace catamaj;

namespace {

ProbVector prob(const std::vector<std::string>& raw, bool normalize) {
  return make_prob_vector(raw, {.normalize = normalize});
}

TrumpingConfig trumping_config(std::size_t degree_cap, bool oracle) {
  TrumpingConfig c;
  c.sympoly.degree_cap = degree_cap;
  c.run_oracle = oracle;
  return c;
}

py::tuple run(const std::vector<std::string>& args, const std::string& problem) {
  std::istringstream in(problem);
  std::ostringstream out, err;
  int code;
  {
    py::gil_scoped_release release;
    code = run_command(args, in, out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_catamaj, m) {
  m.doc() = "Exact majorization and catalytic trumping checks";
  set_float_precision(256);

  py::register_exception<Error>(m, "CatamajError", PyExc_ValueError);

  m.attr("REPORT_SCHEMA") = kReportSchema;

  m.def("run", &run, py::arg("args"), py::arg("problem") = "",
        "Runs a CLI subcommand with `problem` as stdin; returns (exit_code, stdout, stderr).");

  m.def(
      "majorizes",
      [](const std::vector<std::string>& y, const std::vector<std::string>& x, bool normalize) {
        return majorizes(prob(y, normalize), prob(x, normalize));
      },
      py::arg("y"), py::arg("x"), py::arg("normalize") = false, "True when y majorizes x (x ≺ y).");

  m.def(
      "renyi_entropy",
      [](const std::vector<std::string>& x, const std::string& p) {
        return renyi_entropy(prob(x, false), Scalar::parse(p, Backend::Exact)).to_string();
      },
      py::arg("x"), py::arg("p"), "Rényi entropy in bits as a decimal string (\"-inf\" when unbounded).");

  m.def(
      "check_trumping",
      [](const std::vector<std::string>& x, const std::vector<std::string>& y, bool normalize,
         std::size_t degree_cap, bool oracle, bool summary) {
        TrumpingVerdict v;
        {
          const ProbVector px = prob(x, normalize), py_ = prob(y, normalize);
          py::gil_scoped_release release;
          v = check_trumping(px, py_, trumping_config(degree_cap, oracle));
        }
        return to_json(v, !summary).dump();
      },
      py::arg("x"), py::arg("y"), py::arg("normalize") = false, py::arg("degree_cap") = kDefaultDegreeCap,
      py::arg("oracle") = true, py::arg("summary") = true);

  m.def(
      "check_coherent_trumping",
      [](const std::vector<std::string>& psi, const std::vector<std::string>& phi, std::size_t degree_cap,
         bool summary) {
        const CoherentVerdict v = check_coherent_trumping(PureState::from_amplitudes(psi),
                                                          PureState::from_amplitudes(phi),
                                                          trumping_config(degree_cap, true));
        return to_json(v, !summary).dump();
      },
      py::arg("psi"), py::arg("phi"), py::arg("degree_cap") = kDefaultDegreeCap, py::arg("summary") = true);

  m.def(
      "verify_catalyst",
      [](const std::vector<std::string>& x, const std::vector<std::string>& y, const std::vector<std::string>& c,
         bool normalize) {
        return verify_catalyst(prob(x, normalize), prob(y, normalize), Catalyst{prob(c, false)}, LoccMode{});
      },
      py::arg("x"), py::arg("y"), py::arg("catalyst"), py::arg("normalize") = false);

  m.def(
      "search_catalyst",
      [](const std::vector<std::string>& x, const std::vector<std::string>& y, std::size_t dim,
         const std::string& resolution, bool normalize, unsigned threads) {
        const ProbVector px = prob(x, normalize), py_ = prob(y, normalize);
        SearchResult r;
        {
          py::gil_scoped_release release;
          r = search_catalyst(px.span(), py_.span(), dim, parse_rational(resolution), LoccMode{}, {.threads = threads});
        }
        return to_json(r).dump();
      },
      py::arg("x"), py::arg("y"), py::arg("dim"), py::arg("resolution") = "0.01", py::arg("normalize") = false,
      py::arg("threads") = 1);
}
