#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lphodge/config.hpp"
#include "lphodge/discrete.hpp"
#include "lphodge/json_io.hpp"
#include "lphodge/pinching.hpp"
#include "lphodge/roots.hpp"
#include "lphodge/suites.hpp"

namespace py = pybind11;
using namespace lphodge;
using io::json;

namespace {

py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

json from_py(const py::object& o) { return json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>()); }

roots::RootDatum root_datum(const std::string& group, std::optional<int> restricted_cn) {
  const auto [type, rank] = roots::parse_group(group);
  if (!restricted_cn) return roots::build_root_system(type, rank);
  if (type != roots::RootType::C) throw std::invalid_argument("restricted_cn needs a C_n group");
  return roots::restricted_root_system_Cn(*restricted_cn, rank);
}

py::object symmetric(const std::string& group, int k, std::optional<std::string> p, std::optional<int> restricted_cn) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  const auto rd = root_datum(group, restricted_cn);
  if (p) return to_py(io::to_json(roots::gromov_verdict(rd, k, Rational::parse(*p))));
  json out = io::to_json(roots::gromov_verdict(rd, k, Rational(2)));
  out["p"] = nullptr;
  out["verdict"] = nullptr;
  out["criterion"] = nullptr;
  return to_py(out);
}

py::object pinched(int n, int k, double delta, double p, std::optional<double> q) {
  pinching::PinchSpec spec{n, k, delta, p, q};
  return to_py(io::to_json(pinching::reduced_thresholds(spec)));
}

py::object gromov_table() {
  json rows = json::array();
  for (const auto& r : roots::cases_table())
    rows.push_back(json{{"family", r.family}, {"group", r.group}, {"rank", r.rank}, {"n1", r.n1}, {"n2", r.n2},
                        {"weight_sum", r.n1 + 2 * r.n2}, {"rule", r.rule}});
  return to_py(rows);
}

py::object solve(const py::object& complex, const py::object& z, double p, const std::string& problem) {
  if (problem != "primitive" && problem != "representative")
    throw std::invalid_argument("problem must be 'primitive' or 'representative'");
  discrete::CochainComplex cx;
  discrete::Cochain c;
  try {
    cx = io::complex_from_json(from_py(complex));
    c = io::cochain_from_json(from_py(z));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed input: ") + e.what());
  }
  discrete::SolverConfig cfg;
  cfg.p = p;
  const auto r = problem == "primitive" ? discrete::pcoclosed_primitive(cx, c, cfg)
                                        : discrete::pharmonic_representative(cx, c, cfg);
  return to_py(io::to_json(r));
}

py::object verify(const std::string& suite, std::optional<std::uint64_t> seed, std::optional<std::size_t> n_mc,
                  bool parallel) {
  Config cfg;
  if (seed) cfg.seed = *seed;
  if (n_mc) cfg.n_mc = *n_mc;
  cfg.parallel = parallel;
  io::Report report;
  report.command = "verify " + suite;
  report.config_hash = cfg.hash();
  {
    py::gil_scoped_release release;
    report.records = suite == "all" ? suites::run_all(cfg) : suites::run_suite(suite, cfg);
  }
  return to_py(report.to_json());
}

}  // namespace

PYBIND11_MODULE(_lphodge, m) {
  m.doc() = "L^p cohomology vanishing thresholds and discrete p-Hodge solvers";

  m.def("symmetric", &symmetric, py::arg("group"), py::arg("k"), py::arg("p") = py::none(),
        py::arg("restricted_cn") = py::none(),
        "Thresholds and verdict for a symmetric space. p is a decimal or fraction string.");
  m.def("pinched", &pinched, py::arg("n"), py::arg("k"), py::arg("delta"), py::arg("p"), py::arg("q") = py::none());
  m.def("gromov_table", &gromov_table);
  m.def("gromov_table_csv", &roots::cases_table_csv);
  m.def("solve", &solve, py::arg("complex"), py::arg("z"), py::arg("p"), py::arg("problem") = "primitive");
  m.def("verify", &verify, py::arg("suite") = "all", py::arg("seed") = py::none(), py::arg("n_mc") = py::none(),
        py::arg("parallel") = true);
  m.def("low_threshold", &pinching::low_threshold, py::arg("n"), py::arg("k"), py::arg("delta"));
  m.def("high_threshold", &pinching::high_threshold, py::arg("n"), py::arg("k"), py::arg("delta"));
}
