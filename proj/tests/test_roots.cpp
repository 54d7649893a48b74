#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "lphodge/roots.hpp"

using namespace lphodge::roots;
using lphodge::Rational;

namespace {

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

int expected_positive(RootType t, int n) {
  switch (t) {
    case RootType::A: return n * (n + 1) / 2;
    case RootType::B:
    case RootType::C: return n * n;
    case RootType::D: return n * (n - 1);
    case RootType::G: return 6;
    case RootType::F: return 24;
    case RootType::E: return n == 6 ? 36 : n == 7 ? 63 : 120;
  }
  return -1;
}

std::vector<std::pair<RootType, int>> all_split() {
  std::vector<std::pair<RootType, int>> out;
  for (int n = 1; n <= 8; ++n) out.push_back({RootType::A, n});
  for (int n = 2; n <= 8; ++n) out.push_back({RootType::B, n});
  for (int n = 2; n <= 8; ++n) out.push_back({RootType::C, n});
  for (int n = 4; n <= 8; ++n) out.push_back({RootType::D, n});
  out.push_back({RootType::G, 2});
  out.push_back({RootType::F, 4});
  for (int n : {6, 7, 8}) out.push_back({RootType::E, n});
  return out;
}

}  // namespace

TEST_CASE("root counts and weight profiles of the split families") {
  for (auto [t, n] : all_split()) {
    CAPTURE(type_letter(t));
    CAPTURE(n);
    const auto rd = build_root_system(t, n);
    CHECK(static_cast<int>(rd.positive_roots.size()) == expected_positive(t, n));
    const auto prof = weight_profile(rd);
    CHECK(prof.n1 == expected_n1(t, n));
    CHECK(prof.n2 == 1);
    CHECK(prof.n0 + prof.n1 + prof.n2 == expected_positive(t, n));
    CHECK(std::accumulate(prof.weights.begin(), prof.weights.end(), 0) == prof.weight_sum());
    CHECK(prof.flat_count == n);
  }
}

TEST_CASE("coordinate examples") {
  const auto b2 = build_root_system(RootType::B, 2);
  CHECK(b2.positive_roots.size() == 4);
  CHECK(b2.highest_root == std::vector<double>{1.0, 1.0});
  const auto a3 = build_root_system(RootType::A, 3);
  CHECK(a3.positive_roots.size() == 6);
  CHECK(a3.highest_root == std::vector<double>{1.0, 0.0, 0.0, -1.0});
  CHECK_THROWS_AS(build_root_system(RootType::D, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_root_system(RootType::B, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_root_system(RootType::E, 5), std::invalid_argument);
}

TEST_CASE("group parsing") {
  CHECK(parse_group("E8") == std::pair{RootType::E, 8});
  CHECK(parse_group("c4") == std::pair{RootType::C, 4});
  CHECK_THROWS_AS(parse_group("Q2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_group("A"), std::invalid_argument);
}

TEST_CASE("restricted C_n profiles") {
  for (int n = 2; n <= 6; ++n) {
    CHECK(restricted_profile_Cn(1, n).n1 == 4 * n - 4);
    CHECK(restricted_profile_Cn(1, n).n2 == 1);
    CHECK(restricted_profile_Cn(2, n).n1 == 8 * n - 8);
    CHECK(restricted_profile_Cn(2, n).n2 == 3);
    CHECK(restricted_profile_Cn(3, n).n1 == 8 * n - 8);
    CHECK(restricted_profile_Cn(3, n).n2 == 1);
    CHECK(restricted_profile_Cn(4, n).n1 == 16 * n - 16);
    CHECK(restricted_profile_Cn(4, n).n2 == 1);
  }
  CHECK_THROWS_AS(restricted_profile_Cn(5, 3), std::invalid_argument);
  CHECK_THROWS_AS(restricted_profile_Cn(1, 1), std::invalid_argument);
}

TEST_CASE("threshold formulas") {
  const auto e8 = weight_profile(build_root_system(RootType::E, 8));
  CHECK(split_threshold(e8, 1) == Rational(29));
  const auto b4 = weight_profile(build_root_system(RootType::B, 4));
  CHECK(split_threshold(b4, 2) == Rational(4));
  for (int n = 2; n <= 6; ++n) {
    const auto an = weight_profile(build_root_system(RootType::A, n));
    for (int k = 1; k <= n; ++k) CHECK(split_threshold(an, k) == Rational(2 * n, k + 1));
  }
  const auto c2 = restricted_profile_Cn(2, 4);
  CHECK_THROWS_AS(split_threshold(c2, 1), std::invalid_argument);
  CHECK(general_threshold(c2, 3, GeneralVariant::Sharp) == Rational(8 * 4 - 2, 2 * 3));
  CHECK(general_threshold(c2, 3, GeneralVariant::Simplified) == Rational(30, 6));
  CHECK(general_threshold(e8, 0, GeneralVariant::Sharp).is_infinite());

  WeightProfile only_mu;
  only_mu.weights = {2};
  only_mu.n2 = 1;
  CHECK(general_threshold(only_mu, 1, GeneralVariant::Sharp) == Rational(1));
}

TEST_CASE("exact threshold") {
  const auto a2 = weight_profile(build_root_system(RootType::A, 2));
  CHECK(exact_threshold(a2, 1) == Rational(2));
  CHECK(exact_threshold(a2, 1) == split_threshold(a2, 1));
  const auto b2 = weight_profile(build_root_system(RootType::B, 2));
  CHECK(exact_threshold(b2, 1) == Rational(2));
  CHECK(exact_threshold(b2, 0).is_infinite());
  CHECK_THROWS_AS(exact_threshold(a2, a2.frame_dimension() + 1), std::invalid_argument);

  // Independent: sum of weights over the largest k-subset sum of the sorted frame diagonal.
  for (auto [t, n] : all_split()) {
    const auto prof = weight_profile(build_root_system(t, n));
    auto w = prof.frame_weights();
    std::sort(w.rbegin(), w.rend());
    double top = 0.0;
    for (int k = 1; k <= std::min(prof.frame_dimension(), n + 3); ++k) {
      top += w[k - 1];
      const Rational ex = exact_threshold(prof, k);
      CHECK(ex.to_double() == doctest::Approx(prof.weight_sum() / top));
      CHECK(ex >= general_threshold(prof, k, GeneralVariant::Sharp));
      CHECK(general_threshold(prof, k, GeneralVariant::Sharp) >= general_threshold(prof, k, GeneralVariant::Simplified));
    }
  }
}

TEST_CASE("Gromov range: split thresholds at least 2, equal exactly at A_n and C_n top degree") {
  for (auto [t, n] : all_split())
    for (int k = 1; k < n; ++k) {
      CAPTURE(type_letter(t));
      CAPTURE(n);
      CAPTURE(k);
      const Rational thr = split_threshold(weight_profile(build_root_system(t, n)), k);
      // B2 is C2.
      const bool boundary = (t == RootType::A || t == RootType::C || (t == RootType::B && n == 2)) && k == n - 1;
      if (boundary)
        CHECK(thr == Rational(2));
      else
        CHECK(thr > Rational(2));
    }
}

TEST_CASE("thresholds decrease strictly in k") {
  for (auto [t, n] : all_split()) {
    const auto prof = weight_profile(build_root_system(t, n));
    for (int k = 1; k < n + 2; ++k) CHECK(split_threshold(prof, k + 1) < split_threshold(prof, k));
  }
}

TEST_CASE("torsion thresholds") {
  const auto e8 = weight_profile(build_root_system(RootType::E, 8));
  CHECK(torsion_threshold_symmetric(e8, 8).shifted == Rational(58, 8));
  CHECK(torsion_threshold_symmetric(e8, 2).shifted == Rational(29));
  CHECK(torsion_threshold_symmetric(e8, 2).literal == Rational(113, 2));
  CHECK(torsion_threshold_symmetric(e8, 2).differ());
  CHECK(torsion_threshold_symmetric(e8, 1).shifted.is_infinite());
  CHECK(torsion_threshold_symmetric(e8, 1).literal.is_infinite());
}

TEST_CASE("non-split A_n constraints") {
  CHECK(nonsplit_An_constraints_hold(3, 8, 2));
  CHECK_FALSE(nonsplit_An_constraints_hold(3, 8, 1));
  CHECK_FALSE(nonsplit_An_constraints_hold(3, 7, 2));
  CHECK(nonsplit_An_threshold(3, 2) == Rational(3));
}

TEST_CASE("verdicts") {
  const auto c3 = build_root_system(RootType::C, 3);
  CHECK(gromov_verdict(c3, 2, Rational(19, 10)).verdict == Verdict::VanishesReduced);
  const auto a2 = build_root_system(RootType::A, 2);
  const auto v = gromov_verdict(a2, 1, Rational(2));
  CHECK(v.verdict == Verdict::P2MiddleDegreeRule);
  CHECK(v.dim_x == 5);
  CHECK(gromov_verdict(a2, 2, Rational(3)).verdict == Verdict::NotCovered);
  const auto e8 = build_root_system(RootType::E, 8);
  const auto ve = gromov_verdict(e8, 3, Rational(2));
  CHECK(ve.verdict == Verdict::VanishesReduced);
  CHECK(*ve.split == Rational(29, 2));
  CHECK_THROWS_AS(gromov_verdict(a2, 1, Rational(1)), std::invalid_argument);
  // Never vanishing above every threshold unless p = 2.
  for (auto p : {Rational(5), Rational(7, 2), Rational(100)}) {
    const auto w = gromov_verdict(a2, 1, p);
    if (w.verdict == Verdict::VanishesReduced) CHECK(p < w.exact);
  }
}

TEST_CASE("cases table rows") {
  const auto rows = cases_table();
  auto find = [&](const std::string& g) {
    return *std::find_if(rows.begin(), rows.end(), [&](const CaseRow& r) { return r.group == g && r.family.find("restricted") == std::string::npos; });
  };
  CHECK(find("G2").n1 == 4);
  CHECK(find("F4").n1 == 14);
  CHECK(find("E6").n1 == 20);
  CHECK(find("E7").n1 == 32);
  CHECK(find("C5").n1 == 8);
  CHECK(find("F4").rule == "k+1");
}
