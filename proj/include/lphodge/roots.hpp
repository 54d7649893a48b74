#pragma once

// Positive root systems of the simple types and the maximal-root weight profile
// beta(T), T the unit dual of the maximal root mu. Weights are stored in units
// of |mu|/2, i.e. beta(T) = 2<beta, mu>/<mu, mu> in {0, 1, 2}.

#include <optional>
#include <utility>
#include <string>
#include <string_view>
#include <vector>

#include "lphodge/exterior.hpp"
#include "lphodge/rational.hpp"

namespace lphodge::roots {

enum class RootType { A, B, C, D, E, F, G };

char type_letter(RootType t) noexcept;

/// Parses group specs such as "A3", "E8", "G2". Throws std::invalid_argument.
std::pair<RootType, int> parse_group(std::string_view spec);

struct RootDatum {
  RootType type = RootType::A;
  int rank = 0;
  std::optional<int> restricted_case;  // Araki C_n case 1..4
  std::vector<std::vector<double>> positive_roots;
  std::vector<int> multiplicities;
  std::vector<bool> doubled;
  std::vector<double> highest_root;

  std::string label() const;
  bool split() const noexcept { return !restricted_case.has_value(); }
  /// Number of positive roots counted with multiplicity.
  int root_space_dimension() const;
  /// rank + sum of multiplicities (the Iwasawa frame dimension).
  int symmetric_space_dimension() const;
};

/// Valid pairs: A_n n>=1, B_n/C_n n>=2, D_n n>=4, G2, F4, E6, E7, E8.
RootDatum build_root_system(RootType type, int rank);

/// Restricted root systems of type C_n with multiplicities (short, long):
/// case 1 (2,1), case 2 (4,3), case 3 (4,1), case 4 (8,1).
RootDatum restricted_root_system_Cn(int case_id, int rank);

struct WeightProfile {
  std::vector<int> weights;  // one entry per root direction (with multiplicity)
  int n0 = 0;
  int n1 = 0;
  int n2 = 0;
  int flat_count = 0;
  bool split = true;

  int weight_sum() const noexcept { return n1 + 2 * n2; }
  /// Root weights followed by flat_count zeros: the diagonal of the Iwasawa frame.
  std::vector<double> frame_weights() const;
  int frame_dimension() const noexcept { return static_cast<int>(weights.size()) + flat_count; }
};

WeightProfile weight_profile(const RootDatum& rd);
WeightProfile restricted_profile_Cn(int case_id, int rank);

/// (n1 + 2)/(k + 1). Throws std::invalid_argument for non-split profiles or k < 1.
Rational split_threshold(const WeightProfile& profile, int k);

enum class GeneralVariant { Simplified, Sharp };
/// Simplified: (n1 + 2 n2)/(2k). Sharp: (n1 + 2 n2)/(k + min(k, n2)). k = 0 gives +inf.
Rational general_threshold(const WeightProfile& profile, int k, GeneralVariant variant);

/// Sharpest exponent from the actual quadratic form over unit k-forms of the
/// Iwasawa frame: sum of weights over the largest k-subset weight sum.
Rational exact_threshold(const WeightProfile& profile, int k);

struct TorsionThresholds {
  Rational literal;  // (n2 + 2 n1)/((k-1) + min(k-1, n2))
  Rational shifted;  // (n1 + 2 n2)/((k-1) + min(k-1, n2))
  bool differ() const { return literal != shifted; }
  Rational conservative() const { return literal < shifted ? literal : shifted; }
};
TorsionThresholds torsion_threshold_symmetric(const WeightProfile& profile, int k);

/// Non-split restricted A_n: encoded through n2 >= 2 and n1 >= 4n - 4; vanishing for p < 2n/k.
bool nonsplit_An_constraints_hold(int rank, int n1, int n2) noexcept;
Rational nonsplit_An_threshold(int rank, int k);

enum class Verdict { VanishesReduced, VanishesTorsion, P2MiddleDegreeRule, NotCovered };
std::string_view to_string(Verdict v) noexcept;

struct SymmetricVerdict {
  std::string group;
  int rank = 0;
  int k = 0;
  double p = 0.0;
  int dim_x = 0;
  std::optional<Rational> split;
  Rational simplified;
  Rational sharp;
  Rational exact;
  TorsionThresholds torsion;
  Verdict verdict = Verdict::NotCovered;
  std::string criterion;
  bool gromov_range = false;  // k < rank
};

SymmetricVerdict gromov_verdict(const RootDatum& rd, int k, double p);
/// Exact-p variant used by the CLI so that boundary values like p = 2 compare exactly.
SymmetricVerdict gromov_verdict(const RootDatum& rd, int k, const Rational& p);

struct CaseRow {
  std::string family;  // "A", ..., "E8", "Cn-restricted-2"
  std::string group;   // concrete instance, e.g. "A4"
  int rank = 0;
  int n1 = 0;
  int n2 = 0;
  std::string rule;    // denominator rule, "k+1" or "k+min(k,n2)"
};

/// The nine split families over a rank range plus the four restricted C_n cases for n = 2..6.
std::vector<CaseRow> cases_table();
std::string cases_table_csv();

/// Iwasawa frame for the boundary identity: positive roots then rank flat directions,
/// weights beta(T) on the roots and 0 on the flats.
exterior::FramePtr iwasawa_frame(const RootDatum& rd);

/// Boundary identity for split A_n, phi an (n-1)-form on iwasawa_frame(rd).
/// Throws std::invalid_argument for other root types or degrees.
exterior::BoundaryIdentity bndry_identity(const RootDatum& rd, const exterior::FormVector& phi);

}  // namespace lphodge::roots
