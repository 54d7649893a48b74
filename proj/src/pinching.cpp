#include "lphodge/pinching.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lphodge/exterior.hpp"

namespace lphodge::pinching {

namespace {

void check_nk(int n, int k) {
  if (n < 2) throw std::invalid_argument("dimension must be at least 2");
  if (k < 1 || k > n - 1) throw std::invalid_argument("degree must lie in 1..n-1");
}

void check_delta(double delta) {
  if (!(delta > 0.0 && delta <= 1.0))
    throw std::invalid_argument("pinching delta must lie in (0, 1]");
}

void check_p(double p) {
  if (!(p > 1.0)) throw std::invalid_argument("p must exceed 1");
}

// Minimizes the linear-in-lambda objective over monomials I of the frame
// (tangential 0..n-2, radial n-1 with lambda = 0) and box vertices.
//   sign = +1: sum_a lambda_a (1/p - [a in I])
//   sign = -1: sum_a lambda_a ([a in I] - 1/p)
BoundCheck enumerate_min(int n, int k, double p, const RauchBox& box, int sign) {
  BoundCheck out;
  out.exact_min = std::numeric_limits<double>::infinity();
  const exterior::Monomial radial = exterior::Monomial{1} << (n - 1);
  for (exterior::Monomial I : exterior::monomials(n, k)) {
    double value = 0.0;
    for (int a = 0; a < n - 1; ++a) {
      const bool in = (I >> a) & 1;
      const double coeff = sign * ((1.0 / p) - (in ? 1.0 : 0.0));
      value += coeff * (coeff < 0.0 ? box.upper : box.lower);
    }
    if (value < out.exact_min) {
      out.exact_min = value;
      out.argmin_uses_radial = (I & radial) != 0;
      out.argmin_subset.clear();
      for (int a : exterior::monomial_indices(I & ~radial)) out.argmin_subset.push_back(a);
    }
  }
  return out;
}

void check_box_args(int n, int k, double p, double delta, double r) {
  check_nk(n, k);
  check_p(p);
  if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
  if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("pinching delta must lie in [0, 1]");
}

}  // namespace

void PinchSpec::validate() const {
  check_nk(n, k);
  check_delta(delta);
  check_p(p);
  if (q && !(*q >= p)) throw std::invalid_argument("q must be at least p");
}

const char* to_string(ReducedVerdict v) noexcept {
  switch (v) {
    case ReducedVerdict::VanishesLow: return "vanishes-reduced-low";
    case ReducedVerdict::VanishesHigh: return "vanishes-reduced-high";
    case ReducedVerdict::NotCovered: return "not-covered";
  }
  return "?";
}

double conjugate_exponent(double p) {
  check_p(p);
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

double low_threshold(int n, int k, double delta) {
  check_nk(n, k);
  check_delta(delta);
  return delta * (n - k - 1) / k + 1.0;
}

double high_threshold(int n, int k, double delta) {
  check_nk(n, k);
  check_delta(delta);
  if (k == 1) return kInfinity;
  return (n - k) / (delta * (k - 1)) + 1.0;
}

TorsionThreshold torsion_threshold(const PinchSpec& spec) {
  spec.validate();
  TorsionThreshold t;
  t.threshold = spec.k == 1 ? kInfinity : spec.delta * (spec.n - spec.k) / (spec.k - 1) + 1.0;
  t.side_condition = (spec.k - 1) < spec.n / spec.p;
  return t;
}

DecayRates decay_rates(const PinchSpec& spec) {
  spec.validate();
  const double n = spec.n;
  const double k = spec.k;
  const double p = spec.p;
  const double d = spec.delta;
  DecayRates r;
  r.low = k * (d * (n - k - 1) / k + 1.0 - p);
  r.high = k * (p - 1.0) * (d * (k - 1) / p - (n - k) / (p * (p - 1.0)));
  return r;
}

InjectivityResult injectivity_check(const PinchSpec& spec) {
  spec.validate();
  if (!spec.q) throw std::invalid_argument("injectivity check needs q");
  const double p = spec.p;
  const double q = *spec.q;
  InjectivityResult r;
  r.torsion_bound = spec.k == 1 ? kInfinity : 1.0 + spec.delta * (spec.n - spec.k) / (spec.k - 1);
  r.rhs = spec.delta * (spec.n - spec.k) - (p - 1.0) * (spec.k - 1);
  r.gap = (q - p) / q;
  r.epsilon = (r.rhs - r.gap) / (2.0 * p);
  r.injective = p < r.torsion_bound && r.gap < r.rhs;
  return r;
}

ThresholdReport reduced_thresholds(const PinchSpec& spec) {
  spec.validate();
  ThresholdReport rep;
  rep.spec = spec;
  rep.low_threshold = low_threshold(spec.n, spec.k, spec.delta);
  rep.high_threshold = high_threshold(spec.n, spec.k, spec.delta);
  const TorsionThreshold t = torsion_threshold(spec);
  rep.torsion_threshold = t.threshold;
  rep.torsion_side_condition = t.side_condition;
  rep.torsion_vanishes = t.side_condition && spec.p < t.threshold;
  const DecayRates rates = decay_rates(spec);
  rep.decay_rate_low = rates.low;
  rep.decay_rate_high = rates.high;
  if (spec.p < rep.low_threshold)
    rep.reduced = ReducedVerdict::VanishesLow;
  else if (spec.p > rep.high_threshold)
    rep.reduced = ReducedVerdict::VanishesHigh;
  if (spec.q) rep.injectivity = injectivity_check(spec);
  return rep;
}

RauchBox rauch_box(double delta, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
  if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("pinching delta must lie in [0, 1]");
  RauchBox box;
  box.upper = 1.0 / std::tanh(r);
  box.lower = delta == 0.0 ? 1.0 / r : delta / std::tanh(delta * r);
  return box;
}

BoundCheck wp_pointwise_bound_check(int n, int k, double p, double delta, double r) {
  check_box_args(n, k, p, delta, r);
  if (!(p < static_cast<double>(n) / k)) throw std::invalid_argument("low-p chain requires p < n/k");
  BoundCheck out = enumerate_min(n, k, p, rauch_box(delta, r), +1);
  out.paper_bound = (k / p) / std::tanh(r) * (delta * (n - k - 1) / k + 1.0 - p);
  out.ok = out.exact_min >= out.paper_bound - 1e-12 * (1.0 + std::abs(out.paper_bound));
  return out;
}

BoundCheck wp_pointwise_bound_check_high(int n, int k, double p, double delta, double r) {
  check_box_args(n, k, p, delta, r);
  if (!(p > static_cast<double>(n) / k)) throw std::invalid_argument("high-p chain requires p > n/k");
  BoundCheck out = enumerate_min(n, k, p, rauch_box(delta, r), -1);
  out.paper_bound =
      (n - k) * (p - 1.0) / p / std::tanh(r) * (delta * (k - 1) / (n - k) - 1.0 / (p - 1.0));
  out.ok = out.exact_min >= out.paper_bound - 1e-12 * (1.0 + std::abs(out.paper_bound));
  return out;
}

}  // namespace lphodge::pinching
