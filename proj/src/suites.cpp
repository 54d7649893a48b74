#include "lphodge/suites.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <thread>

#include <Eigen/Eigenvalues>

#include "lphodge/discrete.hpp"
#include "lphodge/exterior.hpp"
#include "lphodge/model.hpp"
#include "lphodge/pinching.hpp"
#include "lphodge/roots.hpp"

namespace lphodge::suites {

using io::json;
using io::Record;
using exterior::FormVector;

namespace {

struct Task {
  std::string id;
  std::function<std::vector<Record>()> run;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

Record make(std::string id, double residual, double tol, json inputs = json::object(),
            json outputs = json::object()) {
  Record r;
  r.id = std::move(id);
  r.inputs = std::move(inputs);
  r.outputs = std::move(outputs);
  r.residual = residual;
  r.tolerance = tol;
  r.pass = std::isfinite(residual) && residual <= tol;
  return r;
}

Record flag(std::string id, bool ok, json inputs = json::object(), json outputs = json::object()) {
  Record r;
  r.id = std::move(id);
  r.inputs = std::move(inputs);
  r.outputs = std::move(outputs);
  r.pass = ok;
  return r;
}

std::vector<Record> execute(std::vector<Task> tasks, bool parallel) {
  std::vector<std::vector<Record>> out(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < tasks.size();) {
      try {
        out[i] = tasks[i].run();
      } catch (const std::exception& e) {
        Record r = flag(tasks[i].id, false);
        r.outputs["error"] = e.what();
        out[i] = {r};
      }
    }
  };
  const unsigned threads = parallel ? std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 16u)) : 1u;
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<Record> all;
  for (auto& v : out)
    for (auto& r : v) all.push_back(std::move(r));
  std::stable_sort(all.begin(), all.end(), [](const Record& a, const Record& b) { return a.id < b.id; });
  return all;
}

std::uint64_t seed_of(const std::string& id) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : id) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

FormVector random_form(const exterior::FramePtr& frame, int k, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  FormVector f(frame, k);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = g(rng);
  return f;
}

// ---------------------------------------------------------------- exterior

std::vector<Record> exterior_operators(int n) {
  const std::string base = "exterior/operators/n" + std::to_string(n);
  std::mt19937_64 rng(seed_of(base));
  auto frame = exterior::make_frame(n);
  double adj = 0.0, anti = 0.0, star = 0.0;
  for (int k = 0; k <= n; ++k) {
    for (int trial = 0; trial < 4; ++trial) {
      const FormVector f = random_form(frame, k, rng);
      const FormVector star2 = exterior::hodge_star(exterior::hodge_star(f));
      star = std::max(star, (star2 - exterior::star_sign(k, n) * f).norm());
      star = std::max(star, std::abs(exterior::hodge_star(f).norm() - f.norm()));
      for (int a = 0; a < n; ++a) {
        if (k < n) {
          const FormVector g = random_form(frame, k + 1, rng);
          adj = std::max(adj, std::abs(exterior::inner(exterior::ext_mul(a, f), g) -
                                       exterior::inner(f, exterior::contract(a, g))));
        }
        for (int b = 0; b < n; ++b) {
          FormVector s = k < n ? exterior::contract(b, exterior::ext_mul(a, f)) : FormVector(frame, k);
          if (k > 0) s += exterior::ext_mul(a, exterior::contract(b, f));
          if (a == b) s -= f;
          anti = std::max(anti, s.norm());
        }
      }
    }
  }
  const json in{{"n", n}};
  return {make(base + "/adjoint", adj, 1e-12, in), make(base + "/anticommutation", anti, 1e-12, in),
          make(base + "/star-involution", star, 1e-12, in)};
}

std::vector<Record> nonlinear_star_case(int n, double p) {
  const std::string id = "exterior/nonlinear-star/n" + std::to_string(n) + "/p" + fmt(p);
  std::mt19937_64 rng(seed_of(id));
  std::uniform_real_distribution<double> scale(0.5, 2.0);
  auto frame = exterior::make_frame(n);
  const double q = p / (p - 1.0);
  double involution = 0.0, norm_gap = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int k = trial % (n + 1);
    FormVector f = random_form(frame, k, rng);
    f *= scale(rng) / f.norm();
    const FormVector sp = exterior::nonlinear_star(f, p);
    const FormVector back = exterior::nonlinear_star(sp, q);
    involution = std::max(involution, (back - exterior::star_sign(k, n) * f).norm() / f.norm());
    const double lhs = std::pow(sp.norm(), q);
    const double rhs = std::pow(f.norm(), p);
    norm_gap = std::max(norm_gap, std::abs(lhs - rhs) / rhs);
  }
  return {make(id, std::max(involution, norm_gap), 1e-12, json{{"n", n}, {"p", p}, {"forms", 100}},
               json{{"involution", involution}, {"norm_identity", norm_gap}})};
}

std::vector<Record> extremes_case(int n) {
  const std::string id = "exterior/extremes/n" + std::to_string(n);
  std::mt19937_64 rng(seed_of(id));
  std::uniform_real_distribution<double> u(-2.0, 3.0);
  std::vector<double> c(n);
  for (double& x : c) x = u(rng);
  auto frame = exterior::make_frame(n);
  double violation = 0.0;
  for (int k = 0; k <= n; ++k) {
    const auto ex = exterior::diagonal_form_extremes(c, k);
    for (int t = 0; t < 2000; ++t) {
      FormVector f = random_form(frame, k, rng);
      f *= 1.0 / f.norm();
      const double q = exterior::diagonal_quadratic_form(c, f);
      violation = std::max({violation, ex.min - q, q - ex.max});
    }
    exterior::Monomial lo = 0, hi = 0;
    for (int a : ex.argmin) lo |= exterior::Monomial{1} << a;
    for (int a : ex.argmax) hi |= exterior::Monomial{1} << a;
    violation = std::max(violation, std::abs(exterior::diagonal_quadratic_form(c, FormVector::monomial(frame, lo)) - ex.min));
    violation = std::max(violation, std::abs(exterior::diagonal_quadratic_form(c, FormVector::monomial(frame, hi)) - ex.max));
  }
  return {make(id, std::max(0.0, violation), 1e-12, json{{"n", n}, {"weights", c}, {"samples_per_degree", 2000}})};
}

std::vector<Record> boundary_case(int rank) {
  const std::string id = "exterior/bndry-identity/A" + std::to_string(rank);
  std::mt19937_64 rng(seed_of(id));
  const auto rd = roots::build_root_system(roots::RootType::A, rank);
  auto frame = roots::iwasawa_frame(rd);
  double res = 0.0, mid = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const FormVector phi = random_form(frame, rank - 1, rng);
    const auto b = roots::bndry_identity(rd, phi);
    res = std::max(res, b.residual());
    mid = std::max(mid, b.middle_residual());
  }
  return {make(id, std::max(res, mid), 1e-10, json{{"group", rd.label()}, {"forms", 1000}},
               json{{"outer_residual", res}, {"middle_residual", mid}})};
}

std::vector<Task> exterior_tasks() {
  std::vector<Task> t;
  for (int n = 1; n <= 8; ++n)
    t.push_back({"exterior/operators/n" + std::to_string(n), [n] { return exterior_operators(n); }});
  for (int n = 2; n <= 8; ++n)
    for (double p : {1.1, 1.5, 2.0, 3.0, 10.0})
      t.push_back({"exterior/nonlinear-star/n" + std::to_string(n) + "/p" + fmt(p), [n, p] { return nonlinear_star_case(n, p); }});
  for (int n = 2; n <= 7; ++n) t.push_back({"exterior/extremes/n" + std::to_string(n), [n] { return extremes_case(n); }});
  for (int r : {2, 3}) t.push_back({"exterior/bndry-identity/A" + std::to_string(r), [r] { return boundary_case(r); }});
  return t;
}

// ---------------------------------------------------------------- roots

using roots::RootType;

// Closed-form counts of weight-1 roots for the split families.
int expected_n1(RootType t, int n) {
  switch (t) {
    case RootType::A: return 2 * n - 2;
    case RootType::B: return 4 * n - 6;
    case RootType::C: return 2 * n - 2;
    case RootType::D: return 4 * n - 8;
    case RootType::G: return 4;
    case RootType::F: return 14;
    case RootType::E: return n == 6 ? 20 : n == 7 ? 32 : 56;
  }
  return -1;
}

std::pair<int, int> expected_restricted(int c, int n) {
  switch (c) {
    case 1: return {4 * n - 4, 1};
    case 2: return {8 * n - 8, 3};
    case 3: return {8 * n - 8, 1};
    default: return {16 * n - 16, 1};
  }
}

std::vector<std::pair<RootType, int>> split_groups() {
  std::vector<std::pair<RootType, int>> g;
  for (int n = 1; n <= 8; ++n) g.emplace_back(RootType::A, n);
  for (int n = 2; n <= 8; ++n) g.emplace_back(RootType::B, n);
  for (int n = 2; n <= 8; ++n) g.emplace_back(RootType::C, n);
  for (int n = 4; n <= 8; ++n) g.emplace_back(RootType::D, n);
  g.emplace_back(RootType::G, 2);
  g.emplace_back(RootType::F, 4);
  for (int n = 6; n <= 8; ++n) g.emplace_back(RootType::E, n);
  return g;
}

std::string group_name(RootType t, int n) { return std::string(1, roots::type_letter(t)) + std::to_string(n); }

std::vector<Record> root_count_case(RootType t, int n) {
  const auto rd = roots::build_root_system(t, n);
  const auto prof = roots::weight_profile(rd);
  const int want = expected_n1(t, n);
  const std::string g = group_name(t, n);
  return {flag("roots/count/" + g, prof.n1 == want && prof.n2 == 1, json{{"group", g}},
               json{{"n1", prof.n1}, {"n2", prof.n2}, {"expected_n1", want}, {"expected_n2", 1}})};
}

std::vector<Record> restricted_case(int c, int n) {
  const auto prof = roots::restricted_profile_Cn(c, n);
  const auto want = expected_restricted(c, n);
  return {flag("roots/restricted/case" + std::to_string(c) + "/n" + std::to_string(n),
               prof.n1 == want.first && prof.n2 == want.second, json{{"case", c}, {"n", n}},
               json{{"n1", prof.n1}, {"n2", prof.n2}, {"expected_n1", want.first}, {"expected_n2", want.second}})};
}

std::vector<Record> gromov_range_case(RootType t, int n) {
  const auto prof = roots::weight_profile(roots::build_root_system(t, n));
  const std::string g = group_name(t, n);
  json bad = json::array();
  for (int k = 1; k < n; ++k) {
    const Rational thr = roots::split_threshold(prof, k);
    // B2 and C2 are the same root system.
    const bool boundary = (t == RootType::A || t == RootType::C || (t == RootType::B && n == 2)) && k == n - 1;
    const bool ok = boundary ? thr == Rational(2) : thr > Rational(2);
    if (!ok) bad.push_back(json{{"k", k}, {"threshold", io::to_json(thr)}});
  }
  return {flag("roots/gromov-range/" + g, bad.empty(), json{{"group", g}}, json{{"violations", bad}})};
}

std::vector<Record> ordering_case(const std::string& name, const roots::WeightProfile& prof, int kmax) {
  json bad = json::array();
  Rational prev_sharp = Rational::infinity(), prev_simpl = Rational::infinity(), prev_exact = Rational::infinity();
  kmax = std::min(kmax, prof.frame_dimension());
  for (int k = 1; k <= kmax; ++k) {
    const Rational simpl = roots::general_threshold(prof, k, roots::GeneralVariant::Simplified);
    const Rational sharp = roots::general_threshold(prof, k, roots::GeneralVariant::Sharp);
    const Rational exact = roots::exact_threshold(prof, k);
    bool ok = simpl <= sharp && sharp <= exact && simpl <= prev_simpl && sharp <= prev_sharp && exact <= prev_exact;
    if (k <= prof.n1 + prof.n2) ok = ok && exact == sharp;
    if (prof.split) ok = ok && roots::split_threshold(prof, k) == sharp;
    if (!ok) bad.push_back(k);
    prev_simpl = simpl;
    prev_sharp = sharp;
    prev_exact = exact;
  }
  return {flag("roots/ordering/" + name, bad.empty(), json{{"group", name}, {"k_max", kmax}}, json{{"violating_k", bad}})};
}

std::vector<Record> roots_examples() {
  std::vector<Record> out;
  {
    const auto v = roots::gromov_verdict(roots::build_root_system(RootType::E, 8), 3, Rational(2));
    out.push_back(flag("roots/example/E8-k3-p2",
                       v.verdict == roots::Verdict::VanishesReduced && v.split && *v.split == Rational(29, 2),
                       json{{"group", "E8"}, {"k", 3}, {"p", 2}}, io::to_json(v)));
  }
  {
    const auto prof = roots::restricted_profile_Cn(2, 3);
    out.push_back(flag("roots/example/C3-restricted2-profile", prof.n1 == 16 && prof.n2 == 3,
                       json{{"case", 2}, {"n", 3}}, json{{"n1", prof.n1}, {"n2", prof.n2}}));
  }
  {
    const auto rows = roots::cases_table();
    bool ok = !rows.empty();
    for (const auto& row : rows) {
      if (row.family.find("restricted") != std::string::npos) continue;
      const auto [t, n] = roots::parse_group(row.group);
      ok = ok && row.n1 == expected_n1(t, n);
    }
    out.push_back(flag("roots/table/split-rows", ok, json::object(), json{{"rows", rows.size()}}));
  }
  return out;
}

std::vector<Task> roots_tasks() {
  std::vector<Task> t;
  for (auto [type, n] : split_groups()) {
    const std::string g = group_name(type, n);
    t.push_back({"roots/count/" + g, [type, n] { return root_count_case(type, n); }});
    t.push_back({"roots/gromov-range/" + g, [type, n] { return gromov_range_case(type, n); }});
    t.push_back({"roots/ordering/" + g, [type, n, g] {
                   return ordering_case(g, roots::weight_profile(roots::build_root_system(type, n)), n + 3);
                 }});
  }
  for (int c = 1; c <= 4; ++c)
    for (int n = 2; n <= 6; ++n) {
      t.push_back({"roots/restricted/" + std::to_string(c) + "/" + std::to_string(n), [c, n] { return restricted_case(c, n); }});
      const std::string g = "C" + std::to_string(n) + "-restricted-" + std::to_string(c);
      t.push_back({"roots/ordering/" + g, [c, n, g] { return ordering_case(g, roots::restricted_profile_Cn(c, n), n + 3); }});
    }
  t.push_back({"roots/example", [] { return roots_examples(); }});
  return t;
}

// ---------------------------------------------------------------- pinching

// (G_a)_{IJ} = <e*(omega^a) omega^I, e*(omega^a) omega^J> on k-forms of the n-frame.
std::vector<Eigen::MatrixXd> contraction_grams(int n, int k) {
  auto frame = exterior::make_frame(n);
  const auto mons = exterior::monomials(n, k);
  const int m = static_cast<int>(mons.size());
  std::vector<Eigen::MatrixXd> grams;
  for (int a = 0; a < n - 1; ++a) {
    std::vector<FormVector> c;
    for (auto I : mons) c.push_back(exterior::contract(a, FormVector::monomial(frame, I)));
    Eigen::MatrixXd G(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) G(i, j) = exterior::inner(c[i], c[j]);
    grams.push_back(G);
  }
  return grams;
}

double min_eigen(const std::vector<Eigen::MatrixXd>& grams, const std::vector<double>& lambda, double p, int sign) {
  const int m = static_cast<int>(grams[0].rows());
  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t a = 0; a < grams.size(); ++a)
    Q += sign * lambda[a] * (Eigen::MatrixXd::Identity(m, m) / p - grams[a]);
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(Q, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

struct PinchGrid {
  std::vector<double> deltas{0.0, 0.25, 0.5, 1.0};
  std::vector<double> radii{0.05, 0.5, 1.0, 2.0, 5.0};
  std::vector<double> ps{1.05, 1.5, 2.0, 2.5, 3.0, 5.0, 8.0};
};

int pinch_cells(int n, int k) {
  const PinchGrid g;
  int cells = 0;
  for (double p : g.ps)
    if (p * k != n) cells += static_cast<int>(g.deltas.size() * g.radii.size());
  return cells;
}

std::vector<Record> pinch_bound_case(int n, int k) {
  const std::string id = "pinching/bound/n" + std::to_string(n) + "k" + std::to_string(k);
  std::mt19937_64 rng(seed_of(id));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const PinchGrid g;
  const auto grams = contraction_grams(n, k);
  int cells = 0, failed_ok = 0;
  double worst = 0.0;
  json first_failure = nullptr;
  for (double p : g.ps) {
    if (p * k == n) continue;
    const bool low = p < static_cast<double>(n) / k;
    for (double delta : g.deltas)
      for (double r : g.radii) {
        ++cells;
        const auto bc = low ? pinching::wp_pointwise_bound_check(n, k, p, delta, r)
                            : pinching::wp_pointwise_bound_check_high(n, k, p, delta, r);
        const auto box = pinching::rauch_box(delta, r);
        const int sign = low ? 1 : -1;
        double vertex_min = std::numeric_limits<double>::infinity();
        std::vector<double> lambda(n - 1);
        for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
          for (int a = 0; a < n - 1; ++a) lambda[a] = (mask >> a) & 1 ? box.upper : box.lower;
          vertex_min = std::min(vertex_min, min_eigen(grams, lambda, p, sign));
        }
        double sampled = std::numeric_limits<double>::infinity();
        for (int s = 0; s < 8; ++s) {
          for (int a = 0; a < n - 1; ++a) lambda[a] = box.lower + u(rng) * (box.upper - box.lower);
          sampled = std::min(sampled, min_eigen(grams, lambda, p, sign));
        }
        const double scale = std::max(1.0, std::abs(bc.exact_min));
        const double gap = std::max({std::abs(bc.exact_min - vertex_min) / scale,
                                     (bc.exact_min - sampled) / scale, 0.0});
        worst = std::max(worst, gap);
        if (!bc.ok) ++failed_ok;
        if ((!bc.ok || gap > 1e-9) && first_failure.is_null())
          first_failure = json{{"p", p}, {"delta", delta}, {"r", r}, {"exact_min", bc.exact_min},
                               {"bound", bc.paper_bound}, {"vertex_oracle", vertex_min}, {"sampled", sampled}};
      }
  }
  Record rec = make(id, worst, 1e-9, json{{"n", n}, {"k", k}},
                    json{{"cells", cells}, {"bound_failures", failed_ok}, {"counterexample", first_failure}});
  rec.pass = *rec.pass && failed_ok == 0;
  return {rec};
}

std::vector<Record> pinch_examples() {
  std::vector<Record> out;
  {
    pinching::PinchSpec s{5, 2, 0.5, 1.4, std::nullopt};
    const auto r = pinching::reduced_thresholds(s);
    out.push_back(make("pinching/example/n5k2-delta0.5", std::abs(r.low_threshold - 1.5), 1e-15,
                       json{{"n", 5}, {"k", 2}, {"delta", 0.5}, {"p", 1.4}}, io::to_json(r)));
    out.back().pass = *out.back().pass && r.reduced == pinching::ReducedVerdict::VanishesLow;
  }
  {
    pinching::PinchSpec s{4, 2, 1.0, 2.5, std::nullopt};
    const auto r = pinching::reduced_thresholds(s);
    out.push_back(make("pinching/example/n4k2-torsion", std::abs(r.torsion_threshold - 3.0), 1e-15,
                       json{{"n", 4}, {"k", 2}, {"delta", 1}, {"p", 2.5}}, io::to_json(r)));
    out.back().pass = *out.back().pass && r.torsion_vanishes;
  }
  {
    pinching::PinchSpec s{4, 3, 1.0, 1.1, 2.0};
    const auto r = pinching::injectivity_check(s);
    const double eps = (1.0 - 0.1 * 2.0 - 0.9 / 2.0) / 2.2;
    out.push_back(make("pinching/example/n4k3-injectivity", std::abs(r.epsilon - eps), 1e-14,
                       json{{"n", 4}, {"k", 3}, {"delta", 1}, {"p", 1.1}, {"q", 2}},
                       json{{"epsilon", r.epsilon}, {"injective", r.injective}}));
    out.back().pass = *out.back().pass && r.injective;
  }
  // Decay-rate signs agree with the thresholds.
  std::mt19937_64 rng(seed_of("pinching/rate-signs"));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int bad = 0;
  for (int t = 0; t < 2000; ++t) {
    const int n = 2 + static_cast<int>(u(rng) * 10);
    const int k = 1 + static_cast<int>(u(rng) * (n - 1));
    pinching::PinchSpec s{n, k, 0.05 + 0.95 * u(rng), 1.0 + 1e-3 + 9.0 * u(rng), std::nullopt};
    const auto r = pinching::reduced_thresholds(s);
    if ((r.decay_rate_low > 0) != (s.p < r.low_threshold)) ++bad;
    if (k >= 2 && (r.decay_rate_high > 0) != (s.p > r.high_threshold)) ++bad;
  }
  out.push_back(flag("pinching/rate-signs", bad == 0, json{{"samples", 2000}}, json{{"mismatches", bad}}));
  int total = 0;
  for (int n = 3; n <= 8; ++n)
    for (int k = 1; k < n; ++k) total += pinch_cells(n, k);
  out.push_back(flag("pinching/bound/cell-count", total >= 500, json::object(), json{{"cells", total}}));
  return out;
}

std::vector<Task> pinching_tasks() {
  std::vector<Task> t;
  for (int n = 3; n <= 8; ++n)
    for (int k = 1; k < n; ++k)
      t.push_back({"pinching/bound/n" + std::to_string(n) + "k" + std::to_string(k), [n, k] { return pinch_bound_case(n, k); }});
  t.push_back({"pinching/example", [] { return pinch_examples(); }});
  return t;
}

// ---------------------------------------------------------------- model suites

const std::vector<int> kModelDims{3, 4, 5};
const std::vector<double> kModelPs{1.5, 2.0, 3.0};

FormVector random_constant(int n, int k, const std::string& id) {
  std::mt19937_64 rng(seed_of(id));
  return random_form(exterior::make_frame(n), k, rng);
}

std::vector<Task> monotonicity_tasks(const Config& cfg) {
  std::vector<Task> t;
  for (int n : kModelDims)
    for (double p : kModelPs) {
      for (int k = 1; k < n; ++k) {
        const std::string id = "monotonicity/flat-ball/n" + std::to_string(n) + "/k" + std::to_string(k) + "/p" + fmt(p);
        t.push_back({id, [=] {
                       const auto field = model::constant_form(random_constant(n, k, id));
                       const auto r = model::monotonicity_identity(field, model::WarpedModel::flat(n), p, 0.0, 1.0,
                                                                   cfg.quadrature(n));
                       return std::vector<Record>{make(id, r.residual, 1e-6, json{{"n", n}, {"k", k}, {"p", p}, {"R", 1.0}},
                                                       json{{"lhs", r.lhs}, {"rhs", r.rhs}})};
                     }});
      }
      const std::string id = "monotonicity/hyperbolic-annulus/n" + std::to_string(n) + "/p" + fmt(p);
      t.push_back({id, [=] {
                     const auto M = model::WarpedModel::hyperbolic(n, 1.0);
                     const auto r = model::monotonicity_identity(model::radial_oracle(M, p), M, p, 0.5, 2.0, cfg.quadrature(n));
                     Record rec = make(id, r.residual, 1e-6, json{{"n", n}, {"p", p}, {"inner", 0.5}, {"outer", 2.0}},
                                       json{{"lhs", r.lhs}, {"rhs", r.rhs}, {"closed_form", io::number(r.closed_form.value_or(NAN))},
                                            {"closed_form_residual", io::number(r.closed_form_residual.value_or(NAN))}});
                     rec.pass = *rec.pass && r.closed_form_residual && *r.closed_form_residual < 1e-8;
                     return std::vector<Record>{rec};
                   }});
      const std::string cid = "monotonicity/oracle-coclosed/n" + std::to_string(n) + "/p" + fmt(p);
      t.push_back({cid, [=] {
                     double worst = 0.0;
                     for (auto M : {model::WarpedModel::flat(n), model::WarpedModel::hyperbolic(n, 1.0)})
                       for (int i = 1; i <= 20; ++i) {
                         const double r = 0.15 * i;
                         const double scale = std::pow(M.f(r), -static_cast<double>(n)) * M.df(r) * (n - 1);
                         worst = std::max(worst, std::abs(model::radial_oracle_codifferential(M, p, 1.0, r)) / scale);
                       }
                     return std::vector<Record>{make(cid, worst, 1e-12, json{{"n", n}, {"p", p}, {"radii", 20}})};
                   }});
    }
  t.push_back({"monotonicity/ball-around-singularity", [cfg] {
                 const auto M = model::WarpedModel::hyperbolic(3, 1.0);
                 bool thrown = false;
                 try {
                   model::monotonicity_identity(model::radial_oracle(M, 2.0), M, 2.0, 0.0, 1.0, cfg.quadrature(3));
                 } catch (const std::domain_error&) {
                   thrown = true;
                 }
                 return std::vector<Record>{flag("monotonicity/ball-around-singularity", thrown)};
               }});
  return t;
}

std::vector<Task> limits_tasks(const Config& cfg) {
  std::vector<Task> t;
  for (int n : kModelDims)
    for (int k = 1; k < n; ++k)
      for (double p : kModelPs)
        for (int curved = 0; curved < 2; ++curved) {
          const std::string id = std::string("limits/") + (curved ? "hyperbolic" : "flat") + "/n" + std::to_string(n) +
                                 "/k" + std::to_string(k) + "/p" + fmt(p);
          t.push_back({id, [=] {
                         const auto M = curved ? model::WarpedModel::hyperbolic(n, 1.0) : model::WarpedModel::flat(n);
                         const auto L = model::small_r_limits(model::constant_form(random_constant(n, k, id)), M, p,
                                                              cfg.quadrature(n));
                         const double mu_want = static_cast<double>(k) / n;
                         const double rw_want = (n - 1) * (1.0 / p - mu_want);
                         const double res = std::max({std::abs(L.mu_limit - mu_want), std::abs(L.rw_limit - rw_want),
                                                      std::abs(L.rw_from_mu - rw_want)});
                         Record rec = make(id, res, 1e-4, json{{"n", n}, {"k", k}, {"p", p}},
                                           json{{"mu_limit", L.mu_limit}, {"rw_limit", L.rw_limit}, {"expected_mu", mu_want},
                                                {"expected_rw", rw_want}, {"pole_nonzero", L.pole_nonzero}});
                         rec.pass = *rec.pass && L.pole_nonzero;
                         return std::vector<Record>{rec};
                       }});
        }
  return t;
}

// A 1-form rotating from a constant direction towards dr, so 1/2 - mu changes sign.
model::FormField crossing_field(int n) {
  model::FormField f;
  f.n = n;
  f.k = 1;
  f.name = "crossing";
  auto frame = exterior::make_frame(n);
  f.eval = [frame](std::span<const double> nu, double r) {
    FormVector h(frame, 1);
    for (std::size_t c = 0; c < nu.size(); ++c) h[c] = r * nu[c];
    h[0] += 1.0 - r;
    return h;
  };
  return f;
}

std::vector<Task> ode_tasks(const Config& cfg) {
  std::vector<Task> t;
  for (int n : kModelDims)
    for (double p : kModelPs) {
      for (double sigma : {0.75, 1.0})
        for (double tau : {1.5, 2.5}) {
          const std::string id = "monotonicity/ode/oracle-annulus/n" + std::to_string(n) + "/p" + fmt(p) + "/s" + fmt(sigma) + "/t" + fmt(tau);
          t.push_back({id, [=] {
                         const auto M = model::WarpedModel::hyperbolic(n, 1.0);
                         const auto r = model::ode_factor_check(model::radial_oracle(M, p), M, p, sigma, sigma, tau, cfg.quadrature(n));
                         return std::vector<Record>{make(id, r.residual, 1e-6,
                                                         json{{"n", n}, {"p", p}, {"inner", sigma}, {"sigma", sigma}, {"tau", tau}},
                                                         json{{"ratio", r.lhs_ratio}, {"factor", r.exp_factor}, {"sign", r.sign}})};
                       }});
        }
      for (int k = 1; k < n; ++k) {
        if (std::abs(1.0 / p - static_cast<double>(k) / n) < 1e-9) continue;
        const std::string id = "monotonicity/ode/flat-ball/n" + std::to_string(n) + "/k" + std::to_string(k) + "/p" + fmt(p);
        t.push_back({id, [=] {
                       const auto field = model::constant_form(random_constant(n, k, id));
                       const auto r = model::ode_factor_check(field, model::WarpedModel::flat(n), p, 0.0, 0.5, 1.5, cfg.quadrature(n));
                       return std::vector<Record>{make(id, r.residual, 1e-6, json{{"n", n}, {"k", k}, {"p", p}, {"sigma", 0.5}, {"tau", 1.5}},
                                                       json{{"ratio", r.lhs_ratio}, {"factor", r.exp_factor}, {"sign", r.sign}})};
                     }});
      }
    }
  t.push_back({"monotonicity/ode/sign-change-detected", [cfg] {
                 bool thrown = false;
                 std::string what;
                 try {
                   model::ode_factor_check(crossing_field(3), model::WarpedModel::flat(3), 2.0, 0.0, 0.1, 0.9, cfg.quadrature(3));
                 } catch (const model::SignChangeError& e) {
                   thrown = true;
                   what = e.what();
                 }
                 return std::vector<Record>{flag("monotonicity/ode/sign-change-detected", thrown, json{{"n", 3}, {"p", 2}}, json{{"message", what}})};
               }});
  return t;
}

std::vector<Task> decay_tasks(const Config& cfg) {
  std::vector<Task> t;
  const std::map<int, std::vector<double>> ps{{3, {1.25, 1.5, 1.75}}, {4, {1.5, 2.0, 2.5}}, {5, {1.5, 2.0, 3.0, 3.5}}};
  for (const auto& [n, list] : ps)
    for (double p : list)
      for (double tau : {2.0, 3.0, 5.0}) {
        const std::string id = "decay/n" + std::to_string(n) + "/p" + fmt(p) + "/t" + fmt(tau);
        t.push_back({id, [=] {
                       const auto d = model::decay_check(n, p, 1.0, tau, cfg.quadrature(n));
                       Record rec = make(id, d.ratio / d.bound, 1.0, json{{"n", n}, {"p", p}, {"sigma", 1.0}, {"tau", tau}},
                                         json{{"rate", d.rate}, {"ratio", d.ratio}, {"bound", d.bound}});
                       rec.pass = *rec.pass && d.applicable && d.ok;
                       return std::vector<Record>{rec};
                     }});
      }
  return t;
}

std::vector<Task> bochner_tasks(const Config& cfg) {
  std::vector<Task> t;
  t.push_back({"bochner/studies", [cfg] {
                 std::vector<Record> out;
                 const auto res = model::resolve_bochner_convention(cfg.convention);
                 out.push_back(flag("bochner/convention", res.study.order >= 1.9,
                                    json{{"configured", model::to_string(cfg.convention)}},
                                    json{{"resolved", model::to_string(res.convention)}, {"flipped", res.flipped},
                                         {"order", res.study.order}}));
                 for (double p : {2.0, 3.0, 1.5}) {
                   const int n = p == 3.0 ? 4 : 3;
                   const auto st = model::bochner_convergence(n, p, res.convention);
                   out.push_back(make("bochner/order/p" + fmt(p), std::max(0.0, 1.9 - st.order), 0.0,
                                      json{{"n", n}, {"p", p}, {"convention", model::to_string(res.convention)}, {"meshes", st.meshes}},
                                      json{{"residuals", st.residuals}, {"order", st.order}}));
                   double cf = 0.0;
                   for (double r : {0.5, 1.0, 1.7, 3.0}) {
                     const auto s = model::bochner_closed_form(n, p, r, res.convention);
                     cf = std::max(cf, std::abs(s.lhs - s.rhs) / std::max(1e-300, std::abs(s.lhs)));
                   }
                   out.push_back(make("bochner/closed-form/p" + fmt(p), cf, 1e-12, json{{"n", n}, {"p", p}}));
                 }
                 return out;
               }});
  return t;
}

// ---------------------------------------------------------------- discrete

using discrete::Cochain;
using discrete::CochainComplex;
using Eigen::VectorXd;

struct NamedComplex {
  std::string name;
  CochainComplex c;
  int expected_h1;
};

CochainComplex weighted(CochainComplex c, const std::string& id) {
  std::mt19937_64 rng(seed_of(id));
  std::uniform_real_distribution<double> u(0.5, 2.0);
  for (auto& w : c.weights)
    for (int i = 0; i < w.size(); ++i) w[i] = u(rng);
  return c;
}

CochainComplex square_2complex() {
  // Square 0-1-2-3 with diagonal 0-2, filled by triangles (0,1,2) and (0,2,3).
  CochainComplex c = discrete::graph_complex(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
  c.dims.push_back(2);
  discrete::SparseMatrix d1(2, 5);
  std::vector<Eigen::Triplet<double>> t{{0, 0, 1}, {0, 1, 1}, {0, 4, -1}, {1, 4, 1}, {1, 2, 1}, {1, 3, 1}};
  d1.setFromTriplets(t.begin(), t.end());
  c.d.push_back(d1);
  c.weights.push_back(VectorXd::Ones(2));
  return weighted(c, "square");
}

std::vector<NamedComplex> test_complexes() {
  std::vector<NamedComplex> v;
  v.push_back({"path3", discrete::path_graph(3), 0});
  v.push_back({"cycle4", discrete::cycle_graph(4), 1});
  v.push_back({"two-triangles", discrete::graph_complex(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}}), 2});
  v.push_back({"star-tree", discrete::graph_complex(5, {{0, 1}, {0, 2}, {3, 0}, {0, 4}}), 0});
  v.push_back({"k4-weighted", weighted(discrete::graph_complex(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}), "k4"), 3});
  v.push_back({"square-2complex", square_2complex(), 0});
  return v;
}

VectorXd random_vec(int m, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  VectorXd v(m);
  for (int i = 0; i < m; ++i) v[i] = g(rng);
  return v;
}

VectorXd project_kernel(const Eigen::MatrixXd& D, const VectorXd& v) {
  if (D.rows() == 0) return v;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(D);
  return v - cod.solve(D * v);
}

double inf(const VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

std::vector<Record> discrete_case(const NamedComplex& nc, double p) {
  const std::string base = "discrete/" + nc.name + "/p" + fmt(p);
  std::mt19937_64 rng(seed_of(base));
  const auto& c = nc.c;
  discrete::SolverConfig cfg;
  cfg.p = p;
  const double uniq_tol = p == 2.0 ? 1e-10 : cfg.tol_uniq;
  std::vector<Record> out;
  const json in{{"complex", nc.name}, {"p", p}};

  // Representative of a closed 1-cochain.
  const VectorXd zr = project_kernel(Eigen::MatrixXd(c.differential(1)), random_vec(c.dims[1], rng));
  const Cochain z{1, zr};
  const auto rep = discrete::pharmonic_representative(c, z, cfg);
  {
    Record r = make(base + "/representative-el", rep.el_residual, cfg.tol_grad, in,
                    json{{"iterations", rep.iterations}, {"dstar_residual", rep.dstar_residual},
                         {"closedness", rep.constraint_residual}});
    r.pass = *r.pass && rep.converged && rep.constraint_residual <= 1e-10;
    out.push_back(r);
  }
  {
    const double nh = discrete::lp_norm(c, rep.h, p), nz = discrete::lp_norm(c, z, p);
    const double excess = std::max(0.0, nh - nz) / std::max(1.0, nz);
    bool ok = excess <= 1e-12;
    if (std::abs(nh - nz) <= 1e-12 * std::max(1.0, nz)) ok = ok && inf(rep.h.coeffs - z.coeffs) <= 1e-6;
    Record r = make(base + "/representative-norm", excess, 1e-12, in, json{{"norm_h", nh}, {"norm_z", nz}});
    r.pass = ok;
    out.push_back(r);
  }
  {
    Record r = make(base + "/representative-energy", rep.stage_gap, 1e-10, in, json{{"monotone", rep.energy_monotone}});
    r.pass = *r.pass && rep.energy_monotone;
    out.push_back(r);
  }
  {
    const auto u = discrete::uniqueness_probe(c, z, discrete::Problem::Representative, cfg, 10);
    out.push_back(make(base + "/representative-uniqueness", u.max_distance, uniq_tol, in, json{{"trials", u.trials}}));
  }
  {
    const auto d = discrete::duality_map_check(c, rep.h, p);
    Record r = make(base + "/duality", std::max(d.roundtrip, std::abs(d.norm_h - d.norm_f) / std::max(1.0, d.norm_h)), 1e-10, in,
                    json{{"dstar_residual", d.dstar_residual}, {"norm_h", d.norm_h}, {"norm_f", d.norm_f}});
    r.pass = *r.pass && d.ok;
    out.push_back(r);
  }

  // Primitive of an exact cochain, in every positive degree.
  for (int k = 1; k <= c.top_degree(); ++k) {
    const std::string pb = base + "/primitive-k" + std::to_string(k);
    const VectorXd gamma = random_vec(c.dims[k - 1], rng);
    const Cochain zk{k, c.differential(k - 1) * gamma};
    const auto prim = discrete::pcoclosed_primitive(c, zk, cfg);
    Record r = make(pb + "/el", prim.el_residual, cfg.tol_grad, in,
                    json{{"constraint", prim.constraint_residual}, {"iterations", prim.iterations}});
    r.pass = *r.pass && prim.converged && prim.constraint_residual <= 1e-8;
    out.push_back(r);

    // Minimality certificate over random feasible perturbations.
    const Eigen::MatrixXd D = Eigen::MatrixXd(c.differential(k - 1));
    const double nb = discrete::lp_norm(c, prim.h, p);
    double worst = 0.0;
    std::uniform_real_distribution<double> mag(-3.0, 0.0);
    for (int t = 0; t < 100; ++t) {
      VectorXd kappa = project_kernel(D, random_vec(c.dims[k - 1], rng));
      if (kappa.norm() > 0) kappa *= std::pow(10.0, mag(rng)) / kappa.norm();
      const double nk = discrete::lp_norm(prim.h.coeffs + kappa, p, c.weights[k - 1]);
      worst = std::max(worst, nb - nk);
    }
    out.push_back(make(pb + "/certificate", std::max(0.0, worst), 1e-9, in, json{{"perturbations", 100}}));
    const auto u = discrete::uniqueness_probe(c, zk, discrete::Problem::Primitive, cfg, 10);
    out.push_back(make(pb + "/uniqueness", u.max_distance, uniq_tol, in, json{{"trials", u.trials}}));

    if (p == 2.0) {
      const double a = inf(prim.h.coeffs - discrete::p2_primitive_direct(c, zk).coeffs);
      out.push_back(make(pb + "/p2-direct", a, 1e-8, in));
    }
  }
  if (p == 2.0) out.push_back(make(base + "/representative-p2-direct", inf(rep.h.coeffs - discrete::p2_representative_direct(c, z).coeffs), 1e-8, in));
  return out;
}

// Scalar minimizer of sum w_i |u_i - c|^p by bisection on the monotone derivative.
double scalar_oracle(const VectorXd& u, const VectorXd& w, double p) {
  double lo = u.minCoeff(), hi = u.maxCoeff();
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    double g = 0.0;
    for (int i = 0; i < u.size(); ++i) g += w[i] * std::pow(std::abs(u[i] - mid), p - 1.0) * (u[i] > mid ? -1.0 : 1.0);
    (g > 0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<Record> path_oracle_case(double p, bool use_weights) {
  const std::string id = std::string("discrete/path-scalar-oracle/") + (use_weights ? "weighted" : "unit") + "/p" + fmt(p);
  CochainComplex c = discrete::path_graph(3);
  if (use_weights) c = weighted(c, id);
  const VectorXd u = (VectorXd(3) << 0.0, 1.0, 3.0).finished();
  discrete::SolverConfig cfg;
  cfg.p = p;
  const auto r = discrete::pcoclosed_primitive(c, Cochain{1, c.differential(0) * u}, cfg);
  const double cstar = scalar_oracle(u, c.weights[0], p);
  const VectorXd want = u - VectorXd::Constant(3, cstar);
  return {make(id, inf(r.h.coeffs - want), 1e-8, json{{"u", {0, 1, 3}}, {"p", p}},
               json{{"c_star", cstar}, {"beta", std::vector<double>(r.h.coeffs.data(), r.h.coeffs.data() + 3)}})};
}

// Minimizes sum |z - d gamma|^p over gamma with gamma_3 = 0 by repeated grid zooming.
VectorXd grid_minimizer_c4(const VectorXd& z, double p) {
  const auto c = discrete::cycle_graph(4);
  const Eigen::MatrixXd D = Eigen::MatrixXd(c.differential(0));
  auto energy = [&](const Eigen::Vector3d& g) {
    VectorXd gamma = VectorXd::Zero(4);
    gamma.head(3) = g;
    const VectorXd h = z - D * gamma;
    double e = 0.0;
    for (int i = 0; i < 4; ++i) e += std::pow(std::abs(h[i]), p);
    return e;
  };
  Eigen::Vector3d centre = Eigen::Vector3d::Zero();
  double half = 2.0 * inf(z) + 1.0;
  const int m = 10;
  for (int round = 0; round < 80; ++round) {
    Eigen::Vector3d best = centre;
    double best_e = energy(centre);
    for (int i = 0; i <= m; ++i)
      for (int j = 0; j <= m; ++j)
        for (int l = 0; l <= m; ++l) {
          const Eigen::Vector3d g = centre + half * (Eigen::Vector3d(i, j, l) * (2.0 / m) - Eigen::Vector3d::Ones());
          const double e = energy(g);
          if (e < best_e) {
            best_e = e;
            best = g;
          }
        }
    centre = best;
    half *= 0.5;
  }
  VectorXd gamma = VectorXd::Zero(4);
  gamma.head(3) = centre;
  return z - D * gamma;
}

std::vector<Record> cycle_cases(double p) {
  std::vector<Record> out;
  const auto c = discrete::cycle_graph(4);
  discrete::SolverConfig cfg;
  cfg.p = p;
  const std::string base = "discrete/cycle4-oracles/p" + fmt(p);
  const auto sym = discrete::pharmonic_representative(c, Cochain{1, (VectorXd(4) << 4, 0, 0, 0).finished()}, cfg);
  out.push_back(make(base + "/symmetric", inf(sym.h.coeffs - VectorXd::Ones(4)), 1e-8, json{{"z", {4, 0, 0, 0}}, {"p", p}}));
  const auto one = discrete::pharmonic_representative(c, Cochain{1, VectorXd::Ones(4)}, cfg);
  out.push_back(make(base + "/fixed", inf(one.h.coeffs - VectorXd::Ones(4)), 1e-12, json{{"z", {1, 1, 1, 1}}, {"p", p}}));
  std::mt19937_64 rng(seed_of(base));
  const VectorXd z = random_vec(4, rng);
  const auto r = discrete::pharmonic_representative(c, Cochain{1, z}, cfg);
  out.push_back(make(base + "/grid", inf(r.h.coeffs - grid_minimizer_c4(z, p)), 1e-6, json{{"p", p}}));
  return out;
}

std::vector<Record> discrete_structural() {
  std::vector<Record> out;
  for (const auto& nc : test_complexes()) {
    const auto t = discrete::torsion_is_zero(nc.c, 1);
    out.push_back(flag("discrete/cohomology/" + nc.name, t.ok && t.dim_cohomology == nc.expected_h1,
                       json{{"complex", nc.name}, {"k", 1}},
                       json{{"dim_h", t.dim_cohomology}, {"dim_harmonic", t.dim_harmonic}, {"expected", nc.expected_h1}}));
    if (nc.c.top_degree() >= 2) {
      const auto t2 = discrete::torsion_is_zero(nc.c, 2);
      out.push_back(flag("discrete/cohomology/" + nc.name + "/k2", t2.ok && t2.dim_cohomology == 0, json{{"k", 2}},
                         json{{"dim_h", t2.dim_cohomology}}));
    }
  }
  {
    CochainComplex bad = square_2complex();
    bad.d[1].coeffRef(0, 4) = 1.0;
    std::string msg;
    try {
      discrete::validate(bad);
    } catch (const discrete::ComplexError& e) {
      msg = e.what();
    }
    out.push_back(flag("discrete/validate/dd-nonzero", msg.find("entry") != std::string::npos, json::object(), json{{"message", msg}}));
    CochainComplex empty;
    empty.dims = {3, 0};
    empty.d = {discrete::SparseMatrix(0, 3)};
    empty.weights = {VectorXd::Ones(3), VectorXd()};
    bool ok = true;
    try {
      discrete::validate(empty);
    } catch (const std::exception&) {
      ok = false;
    }
    out.push_back(flag("discrete/validate/empty-degree", ok));
  }
  {
    const auto c = discrete::cycle_graph(4);
    discrete::SolverConfig cfg;
    cfg.p = 3.0;
    const auto zero = discrete::pcoclosed_primitive(c, Cochain{1, VectorXd::Zero(4)}, cfg);
    out.push_back(make("discrete/trivial/zero-primitive", inf(zero.h.coeffs), 0.0));
    const VectorXd ex = c.differential(0) * (VectorXd(4) << 1, -2, 0.5, 3).finished();
    const auto rep = discrete::pharmonic_representative(c, Cochain{1, ex}, cfg);
    out.push_back(make("discrete/trivial/exact-representative", inf(rep.h.coeffs), 1e-12));
    std::mt19937_64 rng(seed_of("adjoint"));
    const auto sq = square_2complex();
    double worst = 0.0;
    for (int k = 0; k < 2; ++k)
      for (int t = 0; t < 20; ++t) {
        const Cochain a{k, random_vec(sq.dims[k], rng)}, b{k + 1, random_vec(sq.dims[k + 1], rng)};
        worst = std::max(worst, std::abs(discrete::weighted_inner(sq, discrete::d_apply(sq, a), b) -
                                         discrete::weighted_inner(sq, a, discrete::dstar_apply(sq, b))));
      }
    out.push_back(make("discrete/adjointness", worst, 1e-12));
  }
  return out;
}

std::vector<Task> discrete_tasks() {
  std::vector<Task> t;
  for (const auto& nc : test_complexes())
    for (double p : {1.5, 2.0, 3.0, 4.0})
      t.push_back({"discrete/" + nc.name + "/p" + fmt(p), [nc, p] { return discrete_case(nc, p); }});
  for (double p : {1.5, 3.0, 4.0})
    for (bool w : {false, true})
      t.push_back({"discrete/path-scalar-oracle/" + fmt(p), [p, w] { return path_oracle_case(p, w); }});
  for (double p : {1.5, 2.0, 3.0, 4.0, 10.0})
    t.push_back({"discrete/cycle4-oracles/p" + fmt(p), [p] { return cycle_cases(p); }});
  t.push_back({"discrete/structural", [] { return discrete_structural(); }});
  return t;
}

std::vector<Task> tasks_for(const std::string& name, const Config& cfg) {
  if (name == "exterior") return exterior_tasks();
  if (name == "roots") return roots_tasks();
  if (name == "pinching") return pinching_tasks();
  if (name == "monotonicity") {
    auto t = monotonicity_tasks(cfg);
    for (auto& o : ode_tasks(cfg)) t.push_back(std::move(o));
    return t;
  }
  if (name == "limits") return limits_tasks(cfg);
  if (name == "bochner") return bochner_tasks(cfg);
  if (name == "decay") return decay_tasks(cfg);
  if (name == "discrete") return discrete_tasks();
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"exterior", "roots",   "pinching", "monotonicity",
                                              "limits",   "bochner", "decay",    "discrete"};
  return names;
}

std::vector<Record> run_suite(const std::string& name, const Config& config) {
  return execute(tasks_for(name, config), config.parallel);
}

std::vector<Record> run_all(const Config& config) {
  std::vector<Task> all;
  for (const auto& n : suite_names())
    for (auto& t : tasks_for(n, config)) all.push_back(std::move(t));
  return execute(std::move(all), config.parallel);
}

}  // namespace lphodge::suites
