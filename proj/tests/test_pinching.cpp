#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "lphodge/pinching.hpp"

using namespace lphodge::pinching;

TEST_CASE("reduced thresholds") {
  const auto r = reduced_thresholds({5, 2, 0.5, 1.4, std::nullopt});
  CHECK(r.low_threshold == doctest::Approx(1.5));
  CHECK(r.reduced == ReducedVerdict::VanishesLow);
  const auto h = reduced_thresholds({5, 3, 0.5, 3.5, std::nullopt});
  CHECK(h.high_threshold == doctest::Approx(3.0));
  CHECK(h.reduced == ReducedVerdict::VanishesHigh);
  CHECK(std::isinf(reduced_thresholds({5, 1, 0.5, 2.0, std::nullopt}).high_threshold));
  CHECK_THROWS_AS(reduced_thresholds({5, 1, 0.0, 2.0, std::nullopt}), std::invalid_argument);
  CHECK_THROWS_AS(reduced_thresholds({5, 5, 1.0, 2.0, std::nullopt}), std::invalid_argument);
  CHECK_THROWS_AS(reduced_thresholds({5, 2, 1.0, 1.0, std::nullopt}), std::invalid_argument);
}

TEST_CASE("conjugate exponents and threshold duality") {
  CHECK(conjugate_exponent(1.5) == doctest::Approx(3.0));
  CHECK(conjugate_exponent(2.0) == 2.0);
  CHECK_THROWS_AS(conjugate_exponent(1.0), std::invalid_argument);
  for (int n = 3; n <= 9; ++n)
    for (int k = 1; k + 1 < n; ++k)
      for (double d : {0.1, 0.5, 0.75, 1.0}) {
        const double low = low_threshold(n, k, d);
        CHECK(conjugate_exponent(low) == doctest::Approx(1.0 + k / (d * (n - k - 1))).epsilon(1e-12));
        CHECK(conjugate_exponent(low) == doctest::Approx(high_threshold(n, n - k, d)).epsilon(1e-12));
      }
}

TEST_CASE("torsion threshold") {
  CHECK(torsion_threshold({4, 2, 1.0, 2.5, std::nullopt}).threshold == doctest::Approx(3.0));
  CHECK(torsion_threshold({6, 3, 0.5, 2.0, std::nullopt}).threshold == doctest::Approx(1.75));
  CHECK(std::isinf(torsion_threshold({6, 1, 0.5, 2.0, std::nullopt}).threshold));
  CHECK(torsion_threshold({4, 2, 1.0, 2.5, std::nullopt}).side_condition);  // 1 < 4/2.5
}

TEST_CASE("decay rates") {
  CHECK(decay_rates({5, 1, 1.0, 2.0, std::nullopt}).low == doctest::Approx(2.0));
  CHECK(decay_rates({5, 3, 1.0, 4.0, std::nullopt}).high == doctest::Approx(3.0));
  CHECK(decay_rates({6, 2, 0.5, low_threshold(6, 2, 0.5), std::nullopt}).low == doctest::Approx(0.0));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(1.01, 12.0), ud(0.05, 1.0);
  for (int t = 0; t < 500; ++t) {
    const int n = 3 + t % 6, k = 1 + t % (n - 1);
    const PinchSpec s{n, k, ud(rng), u(rng), std::nullopt};
    const auto r = decay_rates(s);
    CHECK((r.low > 0) == (s.p < low_threshold(n, k, s.delta)));
    CHECK((r.high > 0) == (s.p > high_threshold(n, k, s.delta)));
  }
}

TEST_CASE("injectivity") {
  const auto a = injectivity_check({4, 3, 1.0, 1.1, 2.0});
  CHECK(a.injective);
  CHECK(a.rhs == doctest::Approx(0.8));
  CHECK(a.gap == doctest::Approx(0.45));
  CHECK(a.epsilon == doctest::Approx(0.35 / 2.2));
  CHECK_FALSE(injectivity_check({4, 3, 1.0, 1.1, 6.0}).injective);
  CHECK(injectivity_check({4, 3, 1.0, 1.1, 1.1}).injective);
  CHECK_THROWS_AS(injectivity_check({4, 3, 1.0, 2.0, 1.5}), std::invalid_argument);
  CHECK_THROWS_AS(injectivity_check({4, 3, 1.0, 2.0, std::nullopt}), std::invalid_argument);
}

TEST_CASE("Rauch box") {
  const auto b = rauch_box(1.0, 2.0);
  CHECK(b.lower == doctest::Approx(b.upper));
  const auto z = rauch_box(0.0, 2.0);
  CHECK(z.lower == doctest::Approx(0.5));
  CHECK(z.upper == doctest::Approx(1.0 / std::tanh(2.0)));
  CHECK_THROWS_AS(rauch_box(0.5, 0.0), std::invalid_argument);
}

namespace {

// Search over the lambda box (all vertices, then random interior points) and over monomial
// k-subsets, where the objective is diagonal; the radial direction carries lambda = 0.
double grid_min(int n, int k, double p, double delta, double r, int sign, int steps) {
  const auto box = rauch_box(delta, r);
  double best = 1e300;
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> lam(n - 1);
  const int vertices = 1 << (n - 1);
  for (int s = 0; s < vertices + steps; ++s) {
    for (int a = 0; a < n - 1; ++a) {
      const double t = s < vertices ? ((s >> a) & 1) : u(rng);
      lam[a] = box.lower + t * (box.upper - box.lower);
    }
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (std::popcount(mask) != k) continue;
      double w = 0.0;
      for (int a = 0; a < n - 1; ++a) w += lam[a] * (1.0 / p - ((mask >> a) & 1 ? 1.0 : 0.0));
      best = std::min(best, sign * w);
    }
  }
  return best;
}

}  // namespace

TEST_CASE("pointwise bound checks") {
  const double r = 1.0;
  const auto c = wp_pointwise_bound_check(4, 1, 1.2, 1.0, r);
  CHECK(c.exact_min == doctest::Approx((1.0 / std::tanh(r)) * (3 / 1.2 - 1)));
  CHECK(c.ok);
  const auto d = wp_pointwise_bound_check(4, 1, 1.2, 0.5, 1.0);
  CHECK(d.ok);
  const double g = grid_min(4, 1, 1.2, 0.5, 1.0, 1, 1000);
  CHECK(g >= d.exact_min - 1e-9);
  CHECK(g == doctest::Approx(d.exact_min).epsilon(1e-9));
  const auto h = wp_pointwise_bound_check_high(5, 4, 5.0, 1.0, 1.0);
  CHECK(h.ok);
  CHECK(grid_min(5, 4, 5.0, 1.0, 1.0, -1, 200) == doctest::Approx(h.exact_min).epsilon(1e-9));
  const auto far = wp_pointwise_bound_check_high(5, 4, 1000.0, 1.0, 1.0);
  CHECK(far.paper_bound > 0.0);
  CHECK_THROWS_AS(wp_pointwise_bound_check(4, 1, 1.2, 0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(wp_pointwise_bound_check(4, 2, 3.0, 0.5, 1.0), std::invalid_argument);
}

TEST_CASE("pointwise bound holds across a grid") {
  for (int n = 3; n <= 8; ++n)
    for (int k = 1; k < n; ++k)
      for (double p : {1.1, 1.5, 2.0, 3.0, 6.0})
        for (double d : {0.1, 0.5, 1.0})
          for (double r : {0.1, 1.0, 10.0}) {
            if (p * k == n) continue;
            const auto c = p * k < n ? wp_pointwise_bound_check(n, k, p, d, r)
                                     : wp_pointwise_bound_check_high(n, k, p, d, r);
            CHECK(c.ok);
          }
}
