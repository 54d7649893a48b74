// Acceptance suite: one PASS/FAIL line per criterion. Criteria 1-5 are computed
// here; 6-12 are read from the report of a full `lphodge verify all` run, which
// criterion 13 times. Without --cli the suites run in-process instead.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lphodge/config.hpp"
#include "lphodge/exterior.hpp"
#include "lphodge/json_io.hpp"
#include "lphodge/roots.hpp"
#include "lphodge/suites.hpp"

using namespace lphodge;
using io::json;
using roots::RootType;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// ---------------------------------------------------------------- direct criteria

Outcome root_counts() {
  const auto t0 = Clock::now();
  struct Family {
    RootType t;
    int lo, hi;
    std::function<int(int)> n1;
  };
  const std::vector<Family> fams{
      {RootType::A, 1, 8, [](int n) { return 2 * n - 2; }},
      {RootType::B, 2, 8, [](int n) { return 4 * n - 6; }},
      {RootType::C, 2, 8, [](int n) { return 2 * n - 2; }},
      {RootType::D, 4, 8, [](int n) { return 4 * n - 8; }},
      {RootType::G, 2, 2, [](int) { return 4; }},
      {RootType::F, 4, 4, [](int) { return 14; }},
      {RootType::E, 6, 8, [](int n) { return n == 6 ? 20 : n == 7 ? 32 : 56; }},
  };
  int checked = 0;
  std::string bad;
  for (const auto& f : fams)
    for (int n = f.lo; n <= f.hi; ++n) {
      const auto prof = roots::weight_profile(roots::build_root_system(f.t, n));
      ++checked;
      if (prof.n1 != f.n1(n) || prof.n2 != 1)
        bad += std::string(1, roots::type_letter(f.t)) + std::to_string(n) + " ";
    }
  const double secs = seconds_since(t0);
  return {bad.empty() && secs < 1.0,
          std::to_string(checked) + " groups, " + fmt(secs) + " s" + (bad.empty() ? "" : ", mismatches: " + bad)};
}

Outcome restricted_table() {
  std::string bad;
  for (int n = 2; n <= 6; ++n) {
    const std::pair<int, int> want[4] = {{4 * n - 4, 1}, {8 * n - 8, 3}, {8 * n - 8, 1}, {16 * n - 16, 1}};
    for (int c = 1; c <= 4; ++c) {
      const auto prof = roots::restricted_profile_Cn(c, n);
      if (prof.n1 != want[c - 1].first || prof.n2 != want[c - 1].second)
        bad += "case" + std::to_string(c) + "/n" + std::to_string(n) + " ";
    }
  }
  return {bad.empty(), bad.empty() ? "20 (case, n) pairs match" : "mismatches: " + bad};
}

Outcome gromov_range() {
  std::vector<std::pair<RootType, int>> groups;
  for (int n = 1; n <= 8; ++n) groups.push_back({RootType::A, n});
  for (int n = 2; n <= 8; ++n) groups.push_back({RootType::B, n});
  for (int n = 2; n <= 8; ++n) groups.push_back({RootType::C, n});
  for (int n = 4; n <= 8; ++n) groups.push_back({RootType::D, n});
  groups.push_back({RootType::G, 2});
  groups.push_back({RootType::F, 4});
  for (int n = 6; n <= 8; ++n) groups.push_back({RootType::E, n});
  int cells = 0, equalities = 0;
  std::string bad;
  for (auto [t, n] : groups) {
    const auto prof = roots::weight_profile(roots::build_root_system(t, n));
    for (int k = 1; k < n; ++k) {
      ++cells;
      const Rational thr = roots::split_threshold(prof, k);
      // B2 and C2 are the same root system, so (B2, k = 1) is the C2 boundary case.
      const bool boundary = (t == RootType::A || t == RootType::C || (t == RootType::B && n == 2)) && k == n - 1;
      if (thr == Rational(2)) ++equalities;
      if (boundary ? thr != Rational(2) : !(thr > Rational(2)))
        bad += std::string(1, roots::type_letter(t)) + std::to_string(n) + "/k" + std::to_string(k) + " ";
    }
  }
  return {bad.empty(), std::to_string(cells) + " (group, k) cells, " + std::to_string(equalities) +
                           " equalities at A_n/C_n top degree" + (bad.empty() ? "" : ", violations: " + bad)};
}

exterior::FormVector random_form(const exterior::FramePtr& frame, int k, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  exterior::FormVector f(frame, k);
  for (double& c : f.coeffs()) c = g(rng);
  return f;
}

Outcome boundary_identity() {
  double worst = 0.0;
  std::mt19937_64 rng(2024);
  for (int n : {2, 3}) {
    const auto rd = roots::build_root_system(RootType::A, n);
    const auto frame = roots::iwasawa_frame(rd);
    for (int t = 0; t < 1000; ++t) {
      auto phi = random_form(frame, n - 1, rng);
      phi *= 1.0 / phi.norm();
      worst = std::max(worst, roots::bndry_identity(rd, phi).residual());
    }
  }
  return {worst < 1e-10, "max residual " + fmt(worst) + " over 2000 unit forms (A2, A3)"};
}

Outcome nonlinear_star() {
  double worst = 0.0;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> scale(0.25, 4.0);
  int forms = 0;
  for (int n = 1; n <= 8; ++n) {
    const auto frame = exterior::make_frame(n);
    for (double p : {1.1, 1.5, 2.0, 3.0, 10.0}) {
      const double q = p / (p - 1.0);
      for (int t = 0; t < 40; ++t) {
        const int k = t % (n + 1);
        auto f = random_form(frame, k, rng);
        f *= scale(rng) / f.norm();
        const auto s = exterior::nonlinear_star(f, p);
        const auto back = exterior::nonlinear_star(s, q);
        worst = std::max(worst, (back - exterior::star_sign(k, n) * f).norm() / f.norm());
        const double lhs = std::pow(s.norm(), q), rhs = std::pow(f.norm(), p);
        worst = std::max(worst, std::abs(lhs - rhs) / rhs);
        ++forms;
      }
    }
  }
  return {worst < 1e-12, "max relative defect " + fmt(worst) + " over " + std::to_string(forms) + " forms"};
}

// ---------------------------------------------------------------- report-based criteria

struct Report {
  std::vector<json> records;

  std::vector<json> select(const std::string& prefix) const {
    std::vector<json> out;
    for (const auto& r : records)
      if (r["case"].get<std::string>().rfind(prefix, 0) == 0) out.push_back(r);
    return out;
  }
};

bool passed(const json& r) { return r.contains("pass") && r["pass"].is_boolean() && r["pass"].get<bool>(); }

double residual(const json& r) {
  return r.contains("residual") && r["residual"].is_number() ? r["residual"].get<double>() : INFINITY;
}

// All records under prefix pass, at least `min_count` exist, and every reported residual stays below `tol`.
Outcome all_under(const Report& rep, const std::string& prefix, std::size_t min_count, double tol) {
  const auto rs = rep.select(prefix);
  double worst = 0.0;
  std::string bad;
  for (const auto& r : rs) {
    const double res = residual(r);
    if (std::isfinite(res)) worst = std::max(worst, res);
    const bool has_residual = r.contains("residual");
    if (!passed(r) || (has_residual && !(res <= tol))) bad += r["case"].get<std::string>() + " ";
  }
  const bool ok = rs.size() >= min_count && bad.empty();
  return {ok, std::to_string(rs.size()) + " cases, max residual " + fmt(worst) + (bad.empty() ? "" : ", failing: " + bad)};
}

Outcome combine(const std::vector<std::pair<std::string, Outcome>>& parts) {
  Outcome out{true, ""};
  for (const auto& [name, o] : parts) {
    out.pass = out.pass && o.pass;
    out.detail += (out.detail.empty() ? "" : "; ") + name + ": " + o.detail;
  }
  return out;
}

Outcome monotonicity(const Report& rep) {
  Outcome annulus = all_under(rep, "monotonicity/hyperbolic-annulus/", 9, 1e-6);
  double closed = 0.0;
  for (const auto& r : rep.select("monotonicity/hyperbolic-annulus/")) {
    const auto& o = r["outputs"];
    const double c = o.contains("closed_form_residual") && o["closed_form_residual"].is_number()
                         ? o["closed_form_residual"].get<double>()
                         : INFINITY;
    closed = std::max(closed, c);
  }
  annulus.pass = annulus.pass && closed < 1e-8;
  annulus.detail += ", closed form " + fmt(closed);
  return combine({{"flat ball", all_under(rep, "monotonicity/flat-ball/", 27, 1e-6)},
                  {"oracle annulus", annulus},
                  {"singular ball rejected", all_under(rep, "monotonicity/ball-around-singularity", 1, INFINITY)}});
}

Outcome limits(const Report& rep) {
  const auto rs = rep.select("limits/flat/");
  double worst = 0.0;
  bool ok = rs.size() >= 27;
  for (const auto& r : rs) {
    const auto& o = r["outputs"];
    const double dm = std::abs(o["mu_limit"].get<double>() - o["expected_mu"].get<double>());
    const double dw = std::abs(o["rw_limit"].get<double>() - o["expected_rw"].get<double>());
    worst = std::max({worst, dm, dw});
    ok = ok && passed(r) && dm < 1e-4 && dw < 1e-4;
  }
  return {ok, std::to_string(rs.size()) + " constant-form cases, max deviation " + fmt(worst)};
}

Outcome bochner(const Report& rep) {
  Outcome out{true, ""};
  for (const char* p : {"p2", "p3"}) {
    const auto rs = rep.select(std::string("bochner/order/") + p);
    const bool ok = rs.size() == 1 && passed(rs[0]) && rs[0]["outputs"]["order"].get<double>() >= 1.9;
    out.pass = out.pass && ok;
    out.detail += std::string(out.detail.empty() ? "" : ", ") + "order " + p + " " +
                  (rs.empty() ? "missing" : fmt(rs[0]["outputs"]["order"].get<double>()));
  }
  const auto conv = rep.select("bochner/convention");
  out.pass = out.pass && conv.size() == 1 && passed(conv[0]);
  out.detail += conv.empty() ? ", convention missing" : ", convention check " + std::string(passed(conv[0]) ? "ok" : "failed");
  return out;
}

Outcome pinching_bounds(const Report& rep) {
  const auto count = rep.select("pinching/bound/cell-count");
  const int cells = count.empty() ? 0 : count[0]["outputs"]["cells"].get<int>();
  Outcome o = all_under(rep, "pinching/bound/n", 25, 1e-9);
  o.pass = o.pass && cells >= 500;
  o.detail = std::to_string(cells) + " grid cells; " + o.detail;
  return o;
}

Outcome discrete_solvers(const Report& rep) {
  auto kind = [&](const std::string& suffix, double tol) {
    std::vector<json> rs;
    for (const auto& r : rep.select("discrete/")) {
      const auto id = r["case"].get<std::string>();
      if (id.size() >= suffix.size() && id.compare(id.size() - suffix.size(), suffix.size(), suffix) == 0)
        rs.push_back(r);
    }
    double worst = 0.0;
    bool ok = !rs.empty();
    for (const auto& r : rs) {
      worst = std::max(worst, residual(r));
      ok = ok && passed(r) && residual(r) < tol;
    }
    return Outcome{ok, std::to_string(rs.size()) + " cases, max " + fmt(worst)};
  };
  Outcome scalar = all_under(rep, "discrete/path-scalar-oracle/", 6, 1e-8);
  Outcome everything = all_under(rep, "discrete/", 200, INFINITY);
  return combine({{"p2 direct", kind("p2-direct", 1e-8)},
                  {"scalar oracle", scalar},
                  {"EL", kind("el", 1e-10)},
                  {"uniqueness", kind("uniqueness", 1e-6)},
                  {"norm minimality", kind("representative-norm", 1e-12)},
                  {"all discrete", everything}});
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--cli") cli = argv[i + 1];

  std::vector<std::pair<std::string, std::function<Outcome()>>> direct{
      {"root counts n_G(1) of the nine split families", root_counts},
      {"restricted C_n profiles for n = 2..6", restricted_table},
      {"Gromov range split_threshold >= 2 with equality only at A_n, C_n, k = n-1", gromov_range},
      {"boundary identity on A2 and A3", boundary_identity},
      {"nonlinear star duality", nonlinear_star},
  };

  int failures = 0;
  int index = 0;
  auto print = [&](const std::string& name, const Outcome& o) {
    ++index;
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << index << "] " << name << ": " << o.detail << std::endl;
  };
  for (const auto& [name, fn] : direct) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    print(name, o);
  }

  // Criterion 13 run; its report feeds 6-12.
  Report rep;
  Outcome end_to_end;
  const auto t0 = Clock::now();
  try {
    if (!cli.empty()) {
      const auto path = std::filesystem::temp_directory_path() / ("lphodge-acceptance-" + std::to_string(::getpid()) + ".json");
      const std::string cmd = "\"" + cli + "\" verify all --json \"" + path.string() + "\" > /dev/null";
      const int status = std::system(cmd.c_str());
      const double secs = seconds_since(t0);
      const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
      std::ifstream f(path);
      const json j = json::parse(f);
      std::filesystem::remove(path);
      for (const auto& r : j["records"]) rep.records.push_back(r);
      end_to_end = {code == 0 && secs < 120.0, "`lphodge verify all` exit " + std::to_string(code) + " in " + fmt(secs) +
                                                    " s, " + std::to_string(j["summary"]["passed"].get<int>()) + "/" +
                                                    std::to_string(j["summary"]["total"].get<int>()) + " cases passed"};
    } else {
      const auto records = suites::run_all(Config{});
      const double secs = seconds_since(t0);
      int failed = 0;
      for (const auto& r : records) {
        rep.records.push_back(io::to_json(r));
        if (r.pass && !*r.pass) ++failed;
      }
      end_to_end = {failed == 0 && secs < 120.0,
                    "in-process run of all suites in " + fmt(secs) + " s, " + std::to_string(failed) + " failed"};
    }
  } catch (const std::exception& e) {
    end_to_end = {false, std::string("error: ") + e.what()};
  }

  print("monotonicity identity (flat ball, hyperbolic annulus)", monotonicity(rep));
  print("small-radius limits of constant forms", limits(rep));
  print("ODE factor and sign-change detector",
        combine({{"cells", all_under(rep, "monotonicity/ode/", 61, 1e-6)},
                 {"crossing detector", all_under(rep, "monotonicity/ode/sign-change-detected", 1, INFINITY)}}));
  print("pointwise bound chains and exact minimum", pinching_bounds(rep));
  print("decay bound for the radial oracle", all_under(rep, "decay/", 30, 1.0));
  print("Bochner convergence order", bochner(rep));
  print("discrete solvers", discrete_solvers(rep));
  print("end-to-end verify all", end_to_end);

  std::cout << (failures == 0 ? "acceptance: all 13 criteria passed" : "acceptance: " + std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
