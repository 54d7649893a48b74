#include "lphodge/roots.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace lphodge::roots {

namespace {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

Vec unit(int dim, int i, double s = 1.0) {
  Vec v(dim, 0.0);
  v[i] = s;
  return v;
}

Vec add(Vec a, const Vec& b, double s = 1.0) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
  return a;
}

// All roots (both signs) of e_i +- e_j type in `dim` coordinates.
void push_pm_pairs(int dim, std::vector<Vec>& out) {
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (double si : {1.0, -1.0})
        for (double sj : {1.0, -1.0}) out.push_back(add(unit(dim, i, si), unit(dim, j, sj)));
}

std::vector<Vec> all_roots_E8() {
  std::vector<Vec> roots;
  push_pm_pairs(8, roots);
  for (int mask = 0; mask < 256; ++mask) {
    if (std::popcount(static_cast<unsigned>(mask)) % 2 != 0) continue;
    Vec v(8);
    for (int i = 0; i < 8; ++i) v[i] = (mask >> i & 1) ? -0.5 : 0.5;
    roots.push_back(v);
  }
  return roots;
}

std::vector<Vec> all_roots(RootType type, int rank) {
  std::vector<Vec> roots;
  switch (type) {
    case RootType::A: {
      const int dim = rank + 1;
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
          if (i != j) roots.push_back(add(unit(dim, i), unit(dim, j), -1.0));
      break;
    }
    case RootType::B:
      push_pm_pairs(rank, roots);
      for (int i = 0; i < rank; ++i) {
        roots.push_back(unit(rank, i));
        roots.push_back(unit(rank, i, -1.0));
      }
      break;
    case RootType::C:
      push_pm_pairs(rank, roots);
      for (int i = 0; i < rank; ++i) {
        roots.push_back(unit(rank, i, 2.0));
        roots.push_back(unit(rank, i, -2.0));
      }
      break;
    case RootType::D:
      push_pm_pairs(rank, roots);
      break;
    case RootType::G: {
      // Sum-zero plane of R^3: short e_i - e_j, long +-(2e_i - e_j - e_k).
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          if (i != j) roots.push_back(add(unit(3, i), unit(3, j), -1.0));
      for (int i = 0; i < 3; ++i) {
        Vec v(3, -1.0);
        v[i] = 2.0;
        roots.push_back(v);
        roots.push_back(add(Vec(3, 0.0), v, -1.0));
      }
      break;
    }
    case RootType::F: {
      push_pm_pairs(4, roots);
      for (int i = 0; i < 4; ++i) {
        roots.push_back(unit(4, i));
        roots.push_back(unit(4, i, -1.0));
      }
      for (int mask = 0; mask < 16; ++mask) {
        Vec v(4);
        for (int i = 0; i < 4; ++i) v[i] = (mask >> i & 1) ? -0.5 : 0.5;
        roots.push_back(v);
      }
      break;
    }
    case RootType::E: {
      // E7 and E6 as the roots of E8 orthogonal to an A1 and an A2 subsystem.
      std::vector<Vec> e8 = all_roots_E8();
      std::vector<Vec> fixed;
      if (rank <= 7) fixed.push_back(add(unit(8, 6), unit(8, 7)));
      if (rank == 6) fixed.push_back(add(unit(8, 5), unit(8, 6), -1.0));
      for (const Vec& r : e8) {
        bool keep = true;
        for (const Vec& f : fixed) keep = keep && std::abs(dot(r, f)) < 1e-12;
        if (keep) roots.push_back(r);
      }
      break;
    }
  }
  return roots;
}

void validate_rank(RootType type, int rank) {
  bool ok = false;
  switch (type) {
    case RootType::A: ok = rank >= 1 && rank <= 15; break;
    case RootType::B:
    case RootType::C: ok = rank >= 2 && rank <= 15; break;
    case RootType::D: ok = rank >= 4 && rank <= 15; break;
    case RootType::E: ok = rank >= 6 && rank <= 8; break;
    case RootType::F: ok = rank == 4; break;
    case RootType::G: ok = rank == 2; break;
  }
  if (!ok)
    throw std::invalid_argument(std::string("invalid rank ") + std::to_string(rank) + " for type " +
                                type_letter(type));
}

// Generic functional defining the positive chamber: f_i = 3^{-i}. The leading
// nonzero coordinate of every root dominates the tail, so f never vanishes on a root.
double chamber(const Vec& v) {
  double f = 0.0;
  double scale = 1.0;
  for (double x : v) {
    f += scale * x;
    scale /= 3.0;
  }
  return f;
}

int integer_weight(const Vec& beta, const Vec& mu) {
  const double w = 2.0 * dot(beta, mu) / dot(mu, mu);
  const double r = std::round(w);
  if (std::abs(w - r) > 1e-9 || r < 0.0 || r > 2.0)
    throw std::logic_error("maximal-root weight outside {0,1,2}");
  return static_cast<int>(r);
}

std::string format_root(const Vec& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

}  // namespace

char type_letter(RootType t) noexcept {
  switch (t) {
    case RootType::A: return 'A';
    case RootType::B: return 'B';
    case RootType::C: return 'C';
    case RootType::D: return 'D';
    case RootType::E: return 'E';
    case RootType::F: return 'F';
    case RootType::G: return 'G';
  }
  return '?';
}

std::pair<RootType, int> parse_group(std::string_view spec) {
  if (spec.size() < 2) throw std::invalid_argument("group spec must look like A3, E8, G2");
  RootType type;
  switch (spec[0]) {
    case 'A': case 'a': type = RootType::A; break;
    case 'B': case 'b': type = RootType::B; break;
    case 'C': case 'c': type = RootType::C; break;
    case 'D': case 'd': type = RootType::D; break;
    case 'E': case 'e': type = RootType::E; break;
    case 'F': case 'f': type = RootType::F; break;
    case 'G': case 'g': type = RootType::G; break;
    default: throw std::invalid_argument("unknown root type in '" + std::string(spec) + "'");
  }
  int rank = 0;
  for (char c : spec.substr(1)) {
    if (c < '0' || c > '9' || rank > 1000)
      throw std::invalid_argument("bad rank in group spec '" + std::string(spec) + "'");
    rank = rank * 10 + (c - '0');
  }
  validate_rank(type, rank);
  return {type, rank};
}

std::string RootDatum::label() const {
  std::string s = type_letter(type) + std::to_string(rank);
  if (restricted_case) s += "/restricted-" + std::to_string(*restricted_case);
  return s;
}

int RootDatum::root_space_dimension() const {
  return std::accumulate(multiplicities.begin(), multiplicities.end(), 0);
}

int RootDatum::symmetric_space_dimension() const { return rank + root_space_dimension(); }

RootDatum build_root_system(RootType type, int rank) {
  validate_rank(type, rank);
  RootDatum rd;
  rd.type = type;
  rd.rank = rank;
  for (Vec& r : all_roots(type, rank)) {
    const double f = chamber(r);
    if (std::abs(f) < 1e-12) throw std::logic_error("chamber functional vanishes on " + format_root(r));
    if (f > 0) rd.positive_roots.push_back(std::move(r));
  }
  std::sort(rd.positive_roots.begin(), rd.positive_roots.end(),
            [](const Vec& a, const Vec& b) { return chamber(a) > chamber(b); });
  rd.highest_root = rd.positive_roots.front();
  rd.multiplicities.assign(rd.positive_roots.size(), 1);
  rd.doubled.assign(rd.positive_roots.size(), false);
  return rd;
}

RootDatum restricted_root_system_Cn(int case_id, int rank) {
  if (case_id < 1 || case_id > 4) throw std::invalid_argument("restricted C_n case id must be 1..4");
  if (rank < 2) throw std::invalid_argument("restricted C_n requires rank >= 2");
  static constexpr int kShort[] = {2, 4, 4, 8};
  static constexpr int kLong[] = {1, 3, 1, 1};
  RootDatum rd = build_root_system(RootType::C, rank);
  rd.restricted_case = case_id;
  for (std::size_t i = 0; i < rd.positive_roots.size(); ++i) {
    const Vec& r = rd.positive_roots[i];
    const bool is_long = std::abs(dot(r, r) - 4.0) < 1e-12;
    rd.multiplicities[i] = is_long ? kLong[case_id - 1] : kShort[case_id - 1];
  }
  return rd;
}

std::vector<double> WeightProfile::frame_weights() const {
  std::vector<double> w(weights.begin(), weights.end());
  w.resize(weights.size() + flat_count, 0.0);
  return w;
}

WeightProfile weight_profile(const RootDatum& rd) {
  WeightProfile profile;
  profile.flat_count = rd.rank;
  profile.split = rd.split();
  for (std::size_t i = 0; i < rd.positive_roots.size(); ++i) {
    const int w = integer_weight(rd.positive_roots[i], rd.highest_root);
    for (int m = 0; m < rd.multiplicities[i]; ++m) profile.weights.push_back(w);
    (w == 0 ? profile.n0 : w == 1 ? profile.n1 : profile.n2) += rd.multiplicities[i];
  }
  return profile;
}

WeightProfile restricted_profile_Cn(int case_id, int rank) {
  return weight_profile(restricted_root_system_Cn(case_id, rank));
}

Rational split_threshold(const WeightProfile& profile, int k) {
  if (!profile.split || profile.n2 != 1) throw std::invalid_argument("split threshold needs a split profile");
  if (k < 1) throw std::invalid_argument("split threshold needs k >= 1");
  return Rational(profile.n1 + 2, k + 1);
}

Rational general_threshold(const WeightProfile& profile, int k, GeneralVariant variant) {
  if (k < 0) throw std::invalid_argument("degree must be nonnegative");
  const int den = variant == GeneralVariant::Simplified ? 2 * k : k + std::min(k, profile.n2);
  if (den == 0) return Rational::infinity();
  return Rational(profile.weight_sum(), den);
}

Rational exact_threshold(const WeightProfile& profile, int k) {
  const std::vector<double> w = profile.frame_weights();
  if (k < 0 || k > static_cast<int>(w.size()))
    throw std::invalid_argument("degree exceeds the Iwasawa frame dimension");
  const auto extremes = exterior::diagonal_form_extremes(w, k);
  const auto top = static_cast<std::int64_t>(std::llround(extremes.max));
  if (top == 0) return Rational::infinity();
  return Rational(profile.weight_sum(), top);
}

TorsionThresholds torsion_threshold_symmetric(const WeightProfile& profile, int k) {
  if (k < 1) throw std::invalid_argument("torsion threshold needs k >= 1");
  const int den = (k - 1) + std::min(k - 1, profile.n2);
  if (den == 0) return {Rational::infinity(), Rational::infinity()};
  return {Rational(profile.n2 + 2 * profile.n1, den), Rational(profile.n1 + 2 * profile.n2, den)};
}

bool nonsplit_An_constraints_hold(int rank, int n1, int n2) noexcept {
  return n2 >= 2 && n1 >= 4 * rank - 4;
}

Rational nonsplit_An_threshold(int rank, int k) {
  if (k < 1) throw std::invalid_argument("non-split A_n threshold needs k >= 1");
  return Rational(2 * rank, k);
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::VanishesReduced: return "vanishes-reduced";
    case Verdict::VanishesTorsion: return "vanishes-torsion";
    case Verdict::P2MiddleDegreeRule: return "p2-middle-degree-rule";
    case Verdict::NotCovered: return "not-covered";
  }
  return "?";
}

namespace {

template <class Below, class IsTwo>
SymmetricVerdict verdict_impl(const RootDatum& rd, int k, double p_value, Below below, IsTwo is_two) {
  const WeightProfile profile = weight_profile(rd);
  if (k < 0 || k > profile.frame_dimension()) throw std::invalid_argument("degree out of range");
  SymmetricVerdict v;
  v.group = rd.label();
  v.rank = rd.rank;
  v.k = k;
  v.p = p_value;
  v.dim_x = rd.symmetric_space_dimension();
  v.gromov_range = k < rd.rank;
  if (profile.split && k >= 1) v.split = split_threshold(profile, k);
  v.simplified = general_threshold(profile, k, GeneralVariant::Simplified);
  v.sharp = general_threshold(profile, k, GeneralVariant::Sharp);
  v.exact = exact_threshold(profile, k);
  v.torsion = k >= 1 ? torsion_threshold_symmetric(profile, k)
                     : TorsionThresholds{Rational::infinity(), Rational::infinity()};

  const std::pair<const char*, std::optional<Rational>> reduced[] = {
      {"split", v.split}, {"sharp", v.sharp}, {"simplified", v.simplified}, {"exact", v.exact}};
  for (const auto& [name, threshold] : reduced) {
    if (threshold && below(*threshold)) {
      v.verdict = Verdict::VanishesReduced;
      v.criterion = name;
      return v;
    }
  }
  if (is_two() && 2 * k != v.dim_x) {
    v.verdict = Verdict::P2MiddleDegreeRule;
    v.criterion = "p2-middle-degree";
    return v;
  }
  if (k >= 1 && below(v.torsion.conservative())) {
    v.verdict = Verdict::VanishesTorsion;
    v.criterion = "torsion";
    return v;
  }
  v.verdict = Verdict::NotCovered;
  v.criterion = "none";
  return v;
}

}  // namespace

SymmetricVerdict gromov_verdict(const RootDatum& rd, int k, double p) {
  if (!(p > 1.0)) throw std::invalid_argument("p must exceed 1");
  return verdict_impl(
      rd, k, p, [p](const Rational& t) { return less_than(p, t); }, [p] { return p == 2.0; });
}

SymmetricVerdict gromov_verdict(const RootDatum& rd, int k, const Rational& p) {
  if (p <= Rational(1)) throw std::invalid_argument("p must exceed 1");
  if (p.is_infinite()) throw std::invalid_argument("p must be finite");
  return verdict_impl(
      rd, k, p.to_double(), [&p](const Rational& t) { return p < t; }, [&p] { return p == Rational(2); });
}

std::vector<CaseRow> cases_table() {
  std::vector<CaseRow> rows;
  auto push = [&rows](std::string family, const RootDatum& rd) {
    const WeightProfile w = weight_profile(rd);
    rows.push_back({std::move(family), rd.label(), rd.rank, w.n1, w.n2, w.n2 == 1 ? "k+1" : "k+min(k,n2)"});
  };
  for (int n = 1; n <= 8; ++n) push("A", build_root_system(RootType::A, n));
  for (int n = 2; n <= 8; ++n) push("B", build_root_system(RootType::B, n));
  for (int n = 2; n <= 8; ++n) push("C", build_root_system(RootType::C, n));
  for (int n = 4; n <= 8; ++n) push("D", build_root_system(RootType::D, n));
  push("G2", build_root_system(RootType::G, 2));
  push("F4", build_root_system(RootType::F, 4));
  for (int n = 6; n <= 8; ++n) push("E" + std::to_string(n), build_root_system(RootType::E, n));
  for (int c = 1; c <= 4; ++c)
    for (int n = 2; n <= 6; ++n) push("Cn-restricted-" + std::to_string(c), restricted_root_system_Cn(c, n));
  return rows;
}

namespace {

std::string csv_field(const std::string& s) {
  return s.find(',') == std::string::npos ? s : '"' + s + '"';
}

}  // namespace

std::string cases_table_csv() {
  std::ostringstream os;
  os << "family,group,rank,n1,n2,weight_sum,rule\n";
  for (const CaseRow& r : cases_table())
    os << r.family << ',' << r.group << ',' << r.rank << ',' << r.n1 << ',' << r.n2 << ','
       << (r.n1 + 2 * r.n2) << ',' << csv_field(r.rule) << '\n';
  return os.str();
}

exterior::FramePtr iwasawa_frame(const RootDatum& rd) {
  const WeightProfile profile = weight_profile(rd);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < rd.positive_roots.size(); ++i)
    for (int m = 0; m < rd.multiplicities[i]; ++m)
      labels.push_back("omega" + format_root(rd.positive_roots[i]) +
                       (rd.multiplicities[i] > 1 ? "#" + std::to_string(m) : ""));
  for (int j = 0; j < rd.rank; ++j) labels.push_back("dt" + std::to_string(j));
  if (static_cast<int>(labels.size()) > exterior::kMaxDimension)
    throw std::invalid_argument("Iwasawa frame of " + rd.label() + " exceeds the dense frame limit");
  return exterior::make_frame(std::move(labels), profile.frame_weights());
}

exterior::BoundaryIdentity bndry_identity(const RootDatum& rd, const exterior::FormVector& phi) {
  if (rd.type != RootType::A || !rd.split())
    throw std::invalid_argument("boundary identity is stated for split A_n only");
  if (phi.degree() != rd.rank - 1) throw std::invalid_argument("boundary identity needs an (n-1)-form");
  const WeightProfile profile = weight_profile(rd);
  if (phi.dimension() != profile.frame_dimension())
    throw std::invalid_argument("form does not live on the Iwasawa frame");
  return exterior::boundary_identity(profile.weights, rd.rank, phi);
}

}  // namespace lphodge::roots
