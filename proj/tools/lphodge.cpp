// lphodge: threshold queries, table reproduction, verification suites and the
// discrete solvers. Exit codes: 0 success, 1 verification failure, 2 input error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lphodge/config.hpp"
#include "lphodge/discrete.hpp"
#include "lphodge/json_io.hpp"
#include "lphodge/pinching.hpp"
#include "lphodge/roots.hpp"
#include "lphodge/suites.hpp"

using namespace lphodge;
using io::json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kInputError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot read '" + path + "'");
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void emit(const json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(path);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"L_p Hodge theory toolkit: vanishing thresholds, model-geometry checks and discrete solvers"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n_mc;
  std::string convention;
  bool serial = false;
  app.add_option("--config", config_path, "key = value config file")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "override quadrature.seed");
  app.add_option("--n-mc", n_mc, "override quadrature.n_mc");
  app.add_option("--convention", convention, "override bochner.convention (positive|analyst)");
  app.add_flag("--serial", serial, "run verification cases on one thread");

  // vanish
  auto* vanish = app.add_subcommand("vanish", "vanishing thresholds and verdicts");
  vanish->require_subcommand(1);

  auto* sym = vanish->add_subcommand("symmetric", "symmetric space of a simple root system");
  std::string group;
  std::optional<int> restricted_cn;
  int sym_k = 0;
  std::optional<std::string> sym_p;
  sym->add_option("--group", group, "root system, e.g. A3, E8, C4")->required();
  sym->add_option("--restricted-cn", restricted_cn, "restricted C_n case 1..4");
  sym->add_option("--k", sym_k, "form degree")->required();
  sym->add_option("--p", sym_p, "exponent (decimal or a/b)");

  auto* pin = vanish->add_subcommand("pinched", "manifolds with -1 <= sec <= -delta^2");
  pinching::PinchSpec spec;
  std::optional<double> pin_q;
  pin->add_option("--n", spec.n, "dimension")->required();
  pin->add_option("--k", spec.k, "form degree")->required();
  pin->add_option("--delta", spec.delta, "pinching constant in (0, 1]")->required();
  pin->add_option("--p", spec.p, "exponent")->required();
  pin->add_option("--q", pin_q, "second exponent for the injectivity check");

  // table
  auto* table = app.add_subcommand("table", "reproduce case tables");
  table->require_subcommand(1);
  auto* gromov = table->add_subcommand("gromov", "weight counts of the split families and restricted C_n cases");
  std::string table_format = "csv";
  gromov->add_option("--format", table_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  // verify
  auto* verify = app.add_subcommand("verify", "run invariant suites");
  std::string suite;
  std::string verify_json;
  std::vector<std::string> choices = suites::suite_names();
  choices.push_back("all");
  verify->add_option("suite", suite, "suite name or all")->required()->check(CLI::IsMember(choices));
  verify->add_option("--json", verify_json, "write the report to this file");

  // solve
  auto* solve = app.add_subcommand("solve", "discrete p-coclosed primitive or p-harmonic representative");
  std::string problem, complex_path, z_path, solve_out;
  double solve_p = 2.0;
  solve->add_option("problem", problem, "primitive or representative")
      ->required()
      ->check(CLI::IsMember({"primitive", "representative"}));
  solve->add_option("--complex", complex_path, "complex JSON")->required();
  solve->add_option("--z", z_path, "cochain JSON")->required();
  solve->add_option("--p", solve_p, "exponent > 1")->required();
  solve->add_option("--json", solve_out, "write the report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  std::ostringstream echo;
  for (int i = 0; i < argc; ++i) echo << (i ? " " : "") << argv[i];

  try {
    Config cfg = config_path.empty() ? Config{} : load_config(config_path);
    if (seed) cfg.set("quadrature.seed", std::to_string(*seed));
    if (n_mc) cfg.set("quadrature.n_mc", std::to_string(*n_mc));
    if (!convention.empty()) cfg.set("bochner.convention", convention);
    if (serial) cfg.parallel = false;

    io::Report report;
    report.command = echo.str();
    report.config_hash = cfg.hash();

    if (*sym) {
      const auto [type, rank] = roots::parse_group(group);
      roots::RootDatum rd;
      if (restricted_cn) {
        if (type != roots::RootType::C) throw std::invalid_argument("--restricted-cn needs a C_n group");
        rd = roots::restricted_root_system_Cn(*restricted_cn, rank);
      } else {
        rd = roots::build_root_system(type, rank);
      }
      if (sym_k < 0) throw std::invalid_argument("--k must be non-negative");
      io::Record rec;
      rec.id = "vanish/symmetric";
      rec.inputs = json{{"group", rd.label()}, {"k", sym_k}, {"p", sym_p ? json(*sym_p) : json(nullptr)}};
      if (sym_p) {
        rec.outputs = io::to_json(roots::gromov_verdict(rd, sym_k, Rational::parse(*sym_p)));
      } else {
        // Thresholds only: evaluate at an arbitrary exponent and drop the verdict.
        json out = io::to_json(roots::gromov_verdict(rd, sym_k, Rational(2)));
        out["p"] = nullptr;
        out["verdict"] = nullptr;
        out["criterion"] = nullptr;
        rec.outputs = out;
      }
      report.records.push_back(rec);
      emit(report.to_json(), "");
      return kOk;
    }

    if (*pin) {
      spec.q = pin_q;
      io::Record rec;
      rec.id = "vanish/pinched";
      rec.inputs = json{{"n", spec.n}, {"k", spec.k}, {"delta", spec.delta}, {"p", spec.p},
                        {"q", pin_q ? json(*pin_q) : json(nullptr)}};
      rec.outputs = io::to_json(pinching::reduced_thresholds(spec));
      report.records.push_back(rec);
      emit(report.to_json(), "");
      return kOk;
    }

    if (*gromov) {
      if (table_format == "csv") {
        std::cout << roots::cases_table_csv();
        return kOk;
      }
      for (const auto& row : roots::cases_table()) {
        io::Record rec;
        rec.id = "table/gromov/" + row.group + (row.family.find("restricted") != std::string::npos ? "/" + row.family : "");
        rec.inputs = json{{"family", row.family}, {"group", row.group}, {"rank", row.rank}};
        rec.outputs = json{{"n1", row.n1}, {"n2", row.n2}, {"weight_sum", row.n1 + 2 * row.n2}, {"rule", row.rule}};
        report.records.push_back(rec);
      }
      emit(report.to_json(), "");
      return kOk;
    }

    if (*verify) {
      const auto t0 = std::chrono::steady_clock::now();
      report.records = suite == "all" ? suites::run_all(cfg) : suites::run_suite(suite, cfg);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      json j = report.to_json();
      j["summary"]["seconds"] = secs;
      if (!verify_json.empty()) emit(j, verify_json);
      for (const auto& r : report.records)
        if (r.pass && !*r.pass) std::cout << "FAIL " << io::to_json(r).dump() << "\n";
      std::cout << "verify " << suite << ": " << report.passed() << "/" << report.records.size() << " passed, "
                << report.failed() << " failed in " << secs << " s (config " << report.config_hash << ")\n";
      return report.failed() == 0 ? kOk : kFailed;
    }

    if (*solve) {
      discrete::CochainComplex cx;
      discrete::Cochain z;
      try {
        cx = io::complex_from_json(read_json_file(complex_path));
        z = io::cochain_from_json(read_json_file(z_path));
      } catch (const json::exception& e) {
        throw InputError(std::string("malformed input: ") + e.what());
      }
      discrete::SolverConfig scfg;
      scfg.p = solve_p;
      const auto result = problem == "primitive" ? discrete::pcoclosed_primitive(cx, z, scfg)
                                                 : discrete::pharmonic_representative(cx, z, scfg);
      io::Record rec;
      rec.id = "solve/" + problem;
      rec.inputs = json{{"complex", complex_path}, {"z", io::to_json(z)}, {"p", solve_p}};
      rec.outputs = io::to_json(result);
      rec.residual = result.el_residual;
      rec.tolerance = scfg.tol_grad;
      rec.pass = result.converged;
      report.records.push_back(rec);
      emit(report.to_json(), solve_out);
      return result.converged ? kOk : kFailed;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kOk;
}
