#pragma once

// Threshold arithmetic for manifolds with -1 <= sec <= -delta^2, and exact
// verification of the pointwise lower bounds for
//   W(lambda, h) = sum_a lambda_a (1/p - |e*(omega^a) h|^2)
// over the Rauch box delta coth(delta r) <= lambda_a <= coth(r).

#include <limits>
#include <optional>
#include <vector>

namespace lphodge::pinching {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct PinchSpec {
  int n = 2;
  int k = 1;
  double delta = 1.0;
  double p = 2.0;
  std::optional<double> q;

  /// Throws std::invalid_argument unless n >= 2, 1 <= k <= n-1, 0 < delta <= 1, p > 1, q >= p.
  void validate() const;
};

struct InjectivityResult {
  bool injective = false;
  double epsilon = 0.0;
  double torsion_bound = 0.0;  // 1 + delta(n-k)/(k-1)
  double rhs = 0.0;            // delta(n-k) - (p-1)(k-1)
  double gap = 0.0;            // (q-p)/q
};

enum class ReducedVerdict { VanishesLow, VanishesHigh, NotCovered };
const char* to_string(ReducedVerdict v) noexcept;

struct ThresholdReport {
  PinchSpec spec;
  double low_threshold = 0.0;      // delta(n-k-1)/k + 1
  double high_threshold = 0.0;     // (n-k)/(delta(k-1)) + 1, +inf at k = 1
  double torsion_threshold = 0.0;  // delta(n-k)/(k-1) + 1, +inf at k = 1
  double decay_rate_low = 0.0;
  double decay_rate_high = 0.0;
  ReducedVerdict reduced = ReducedVerdict::NotCovered;
  bool torsion_side_condition = false;  // k - 1 < n/p
  bool torsion_vanishes = false;
  std::optional<InjectivityResult> injectivity;
};

double conjugate_exponent(double p);

double low_threshold(int n, int k, double delta);
double high_threshold(int n, int k, double delta);

ThresholdReport reduced_thresholds(const PinchSpec& spec);

struct TorsionThreshold {
  double threshold = 0.0;
  bool side_condition = false;  // k - 1 < n/p
};
TorsionThreshold torsion_threshold(const PinchSpec& spec);

struct DecayRates {
  double low = 0.0;   // k [delta(n-k-1)/k + 1 - p]
  double high = 0.0;  // k (p-1) [delta(k-1)/p - (n-k)/(p(p-1))]
};
DecayRates decay_rates(const PinchSpec& spec);

/// Needs spec.q. Throws std::invalid_argument if q is missing or q < p.
InjectivityResult injectivity_check(const PinchSpec& spec);

/// Rauch box endpoints at radius r. delta = 0 uses the limit delta coth(delta r) -> 1/r.
struct RauchBox {
  double lower = 0.0;
  double upper = 0.0;
};
RauchBox rauch_box(double delta, double r);

struct BoundCheck {
  double exact_min = 0.0;
  double paper_bound = 0.0;
  bool ok = false;
  std::vector<int> argmin_subset;     // tangential indices carried by the minimizing monomial
  bool argmin_uses_radial = false;
};

/// Low-p chain: exact minimum of W over box^{n-1} x unit k-forms against
/// (k/p) coth(r) [delta(n-k-1)/k + 1 - p]. Requires r > 0, p > 1, p < n/k.
BoundCheck wp_pointwise_bound_check(int n, int k, double p, double delta, double r);

/// High-p chain: exact minimum of -W against coth(r)(n-k)(p-1)/p [delta(k-1)/(n-k) - 1/(p-1)].
/// Requires r > 0, p > n/k.
BoundCheck wp_pointwise_bound_check_high(int n, int k, double p, double delta, double r);

}  // namespace lphodge::pinching
