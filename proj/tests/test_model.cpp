#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lphodge/model.hpp"
#include "lphodge/quadrature.hpp"

using namespace lphodge;
using namespace lphodge::model;
using exterior::FormVector;

namespace {

FormVector random_constant(int n, int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  FormVector h(exterior::make_frame(n), k);
  for (double& c : h.coeffs()) c = g(rng);
  return h;
}

// Average of |i_nu h|^2/|h|^2 over uniform nu, by plain Monte Carlo.
double mc_radial_share(const FormVector& h, int samples, double* se) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g;
  const int n = h.dimension();
  std::vector<double> nu(n);
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < samples; ++i) {
    double len = 0.0;
    for (double& x : nu) {
      x = g(rng);
      len += x * x;
    }
    for (double& x : nu) x /= std::sqrt(len);
    const double v = exterior::contract(nu, h).norm2() / h.norm2();
    s += v;
    s2 += v * v;
  }
  const double mean = s / samples;
  *se = std::sqrt((s2 / samples - mean * mean) / samples);
  return mean;
}

FormField crossing_field() {
  FormField f;
  f.n = 3;
  f.k = 1;
  f.name = "crossing";
  auto frame = exterior::make_frame(3);
  f.eval = [frame](std::span<const double> nu, double r) {
    FormVector h(frame, 1);
    for (int c = 0; c < 3; ++c) h[c] = r * nu[c];
    h[0] += 1.0 - r;
    return h;
  };
  return f;
}

}  // namespace

TEST_CASE("quadrature rules") {
  const auto gl = quadrature::gauss_legendre(6, 0.0, 2.0);
  CHECK(gl.integrate([](double x) { return std::pow(x, 11); }) == doctest::Approx(std::pow(2.0, 12) / 12).epsilon(1e-14));
  // int_{-1}^{1} (1 - t^2)^{1/2} t^2 dt = pi/8
  const auto gg = quadrature::gauss_gegenbauer(5, 0.5);
  CHECK(gg.integrate([](double t) { return t * t; }) == doctest::Approx(std::numbers::pi / 8).epsilon(1e-14));
  CHECK(quadrature::unit_sphere_area(3) == doctest::Approx(4 * std::numbers::pi));
  for (int n = 2; n <= 7; ++n) {
    const auto rule = quadrature::make_sphere_rule(n, quadrature::default_sphere_spec(n));
    double s = 0.0;
    for (double w : rule.weights) s += w;
    CHECK(s == doctest::Approx(quadrature::unit_sphere_area(n)).epsilon(1e-10));
  }
  quadrature::SphereSpec bad;
  CHECK_THROWS(quadrature::make_sphere_rule(6, bad));
}

TEST_CASE("model geometry") {
  const auto flat = WarpedModel::flat(4);
  CHECK(flat.lambda(0.5) == doctest::Approx(2.0));
  const auto hyp = WarpedModel::hyperbolic(3, 2.0);
  CHECK(hyp.f(0.0) == 0.0);
  CHECK(hyp.df(0.0) == 1.0);
  CHECK(hyp.lambda(0.7) == doctest::Approx(2.0 / std::tanh(1.4)));
  CHECK(hyp.area(1.0) == doctest::Approx(4 * std::numbers::pi * std::pow(std::sinh(2.0) / 2.0, 2)));
}

TEST_CASE("mu of a constant form is k/n, cross-checked by Monte Carlo") {
  for (int n : {3, 4, 5})
    for (int k = 1; k < n; ++k) {
      const auto h = random_constant(n, k, 10 * n + k);
      const auto field = constant_form(h);
      const auto q = default_quadrature(n);
      for (double r : {0.3, 1.7}) {
        const double mu = mu_eval(field, WarpedModel::flat(n), r, 2.5, q);
        CHECK(mu == doctest::Approx(static_cast<double>(k) / n).epsilon(1e-8));
        const double rw = r * w_eval(field, WarpedModel::flat(n), r, 2.5, q);
        CHECK(rw == doctest::Approx((n - 1) / 2.5 - k + static_cast<double>(k) / n).epsilon(1e-8));
      }
      double se = 0.0;
      const double mc = mc_radial_share(h, 100000, &se);
      CHECK(std::abs(mc - static_cast<double>(k) / n) < 4 * se);
    }
}

TEST_CASE("Monte Carlo and product Gauss agree within three standard errors") {
  const int n = 4;
  const auto field = constant_form(random_constant(n, 2, 5));
  auto q = default_quadrature(n);
  q.sphere.scheme = quadrature::SphereScheme::MonteCarlo;
  q.sphere.mc_samples = 50000;
  std::vector<double> mus, masses;
  const auto m = SphereIntegrator(WarpedModel::flat(n), q).moments(field, 1.0, 2.0, &mus, &masses);
  double s2 = 0.0;
  for (double v : mus) s2 += (v - m.mu()) * (v - m.mu());
  const double se = std::sqrt(s2 / mus.size() / mus.size());
  const double exact = mu_eval(field, WarpedModel::flat(n), 1.0, 2.0, default_quadrature(n));
  CHECK(std::abs(m.mu() - exact) < 3 * se);
}

TEST_CASE("radial oracle") {
  for (int n : {3, 4, 5})
    for (double p : {1.5, 2.0, 3.0}) {
      const auto M = WarpedModel::hyperbolic(n);
      const auto h = radial_oracle(M, p, 1.3);
      const auto q = default_quadrature(n);
      CHECK(mu_eval(h, M, 0.8, p, q) == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(w_eval(h, M, 0.8, p, q) == doctest::Approx((n - 1) * M.lambda(0.8) / p).epsilon(1e-13));
      std::mt19937_64 rng(n);
      std::uniform_real_distribution<double> u(0.05, 4.0);
      for (int i = 0; i < 20; ++i) {
        const double r = u(rng);
        // Relative to the size of either term of -g' - (n-1)(f'/f) g.
        const double scale = (n - 1) * std::pow(1.3, p - 1) * std::pow(M.f(r), -n) * M.df(r);
        CHECK(std::abs(radial_oracle_codifferential(M, p, 1.3, r)) < 1e-12 * scale);
      }
    }
  CHECK_THROWS_AS(radial_oracle(WarpedModel::flat(3), 1.0), std::invalid_argument);
}

TEST_CASE("degenerate form") {
  const auto zero = constant_form(FormVector(exterior::make_frame(3), 1));
  CHECK_THROWS_AS(mu_eval(zero, WarpedModel::flat(3), 1.0, 2.0, default_quadrature(3)), DegenerateFormError);
}

TEST_CASE("small radius limits") {
  const auto q4 = default_quadrature(4);
  const auto c2 = constant_form(random_constant(4, 2, 3));
  const auto lim = small_r_limits(c2, WarpedModel::flat(4), 2.0, q4);
  CHECK(lim.mu_limit == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(std::abs(lim.rw_limit) < 1e-6);
  CHECK(lim.pole_nonzero);

  const auto c1 = constant_form(random_constant(3, 1, 4));
  const auto hl = small_r_limits(c1, WarpedModel::hyperbolic(3), 1.5, default_quadrature(3));
  CHECK(hl.mu_limit == doctest::Approx(1.0 / 3.0).epsilon(1e-4));
  CHECK(hl.rw_limit == doctest::Approx(2.0 / 3.0).epsilon(1e-4));
  CHECK(hl.rw_from_mu == doctest::Approx(hl.rw_limit).epsilon(1e-4));
}

TEST_CASE("monotonicity identity") {
  const double p = 2.0;
  const auto M = WarpedModel::hyperbolic(3);
  const auto res = monotonicity_identity(radial_oracle(M, p), M, p, 0.5, 2.0, default_quadrature(3));
  CHECK(res.residual < 1e-8);
  // (1/p - 1) C^p area(S^2) [sinh^-2(2) - sinh^-2(0.5)], worked out by hand.
  const double closed = -0.5 * 4 * std::numbers::pi * (std::pow(std::sinh(2.0), -2) - std::pow(std::sinh(0.5), -2));
  CHECK(res.lhs == doctest::Approx(closed).epsilon(1e-8));
  REQUIRE(res.closed_form);
  CHECK(*res.closed_form == doctest::Approx(closed).epsilon(1e-12));

  for (int n : {3, 4, 5})
    for (int k = 1; k < n; ++k)
      for (double pp : {1.5, 3.0}) {
        const auto field = constant_form(random_constant(n, k, n * k));
        const auto r = monotonicity_identity(field, WarpedModel::flat(n), pp, 0.0, 1.0, default_quadrature(n));
        CHECK(r.residual < 1e-8);
        const double h2 = field.eval(std::vector<double>(n, 0.0), 0.0).norm2();
        const double expected = (1.0 / pp - static_cast<double>(k) / n) * std::pow(h2, pp / 2) * quadrature::unit_sphere_area(n);
        CHECK(r.lhs == doctest::Approx(expected).epsilon(1e-8));
      }

  const auto zero = constant_form(FormVector(exterior::make_frame(3), 1));
  const auto z = monotonicity_identity(zero, WarpedModel::flat(3), 2.0, 0.0, 1.0, default_quadrature(3));
  CHECK(z.lhs == 0.0);
  CHECK(z.rhs == 0.0);
  CHECK(z.residual == 0.0);
  CHECK_THROWS_AS(monotonicity_identity(radial_oracle(M, p), M, p, 0.0, 1.0, default_quadrature(3)), std::domain_error);
}

TEST_CASE("ODE factor") {
  const auto M = WarpedModel::hyperbolic(4);
  const double p = 2.5;
  const auto r = ode_factor_check(radial_oracle(M, p), M, p, 0.75, 0.75, 2.0, default_quadrature(4));
  CHECK(r.residual < 1e-8);
  CHECK(r.sign == -1);
  // mu = 1, w = 3 coth / p, so the factor is (sinh 2 / sinh 0.75)^(3/(p-1)).
  CHECK(r.exp_factor == doctest::Approx(std::pow(std::sinh(2.0) / std::sinh(0.75), 3 / (p - 1))).epsilon(1e-10));

  const auto same = ode_factor_check(radial_oracle(M, p), M, p, 0.5, 1.0, 1.0, default_quadrature(4));
  CHECK(same.lhs_ratio == 1.0);
  CHECK(same.exp_factor == 1.0);

  const auto c = constant_form(random_constant(3, 1, 17));
  const auto flat = ode_factor_check(c, WarpedModel::flat(3), 2.0, 0.0, 0.5, 1.5, default_quadrature(3));
  CHECK(flat.residual < 1e-8);
  // w = a/r with a = (n-1)/p - k + k/n, 1 - p mu = 1 - p k/n: the factor is (tau/sigma)^(-p a/(1 - p k/n)).
  const double a = 1.0 - 1.0 + 1.0 / 3.0;
  CHECK(flat.exp_factor == doctest::Approx(std::pow(3.0, -2.0 * a / (1.0 - 2.0 / 3.0))).epsilon(1e-10));

  CHECK_THROWS_AS(ode_factor_check(crossing_field(), WarpedModel::flat(3), 2.0, 0.0, 0.1, 0.9, default_quadrature(3)),
                  SignChangeError);
}

TEST_CASE("I_p integral of a constant form is |h|^p vol(B_R)") {
  const auto h = random_constant(3, 2, 21);
  const double v = ip_integral(constant_form(h), WarpedModel::flat(3), 3.0, 0.0, 1.5, default_quadrature(3));
  CHECK(v == doctest::Approx(std::pow(h.norm(), 3.0) * 4.0 / 3.0 * std::numbers::pi * std::pow(1.5, 3)).epsilon(1e-12));
}

TEST_CASE("decay") {
  const auto a = decay_check(4, 2.0, 1.0, 3.0, default_quadrature(4));
  CHECK(a.applicable);
  CHECK(a.rate == doctest::Approx(1.0));
  CHECK(a.ok);
  CHECK(decay_check(3, 1.5, 1.0, 5.0, default_quadrature(3)).ok);
  CHECK_FALSE(decay_check(3, 2.0, 1.0, 5.0, default_quadrature(3)).applicable);
  CHECK_FALSE(decay_check(4, 3.5, 1.0, 5.0, default_quadrature(4)).applicable);
}

TEST_CASE("Bochner") {
  // n = 3, p = 2: u = 1/r, h = du, |h|^2 = r^-4, (1/2) Laplacian of r^-4 = -6 r^-6 with the positive
  // Laplacian, and |nabla h|^2 = 6 r^-6 for the Hessian of 1/r.
  const auto s = bochner_closed_form(3, 2.0, 1.3, LaplacianConvention::Positive);
  CHECK(s.lhs == doctest::Approx(-6 * std::pow(1.3, -6)).epsilon(1e-12));
  CHECK(s.lhs == doctest::Approx(s.rhs).epsilon(1e-12));
  for (double p : {2.0, 3.0}) {
    const int n = p == 3.0 ? 4 : 3;
    const auto study = bochner_convergence(n, p, LaplacianConvention::Positive);
    CHECK(study.order >= 1.9);
    CHECK(study.residuals.back() < study.residuals.front());
  }
  CHECK(resolve_bochner_convention(LaplacianConvention::Positive).flipped == false);
  const auto flipped = resolve_bochner_convention(LaplacianConvention::Analyst);
  CHECK(flipped.flipped);
  CHECK(flipped.convention == LaplacianConvention::Positive);
  CHECK(parse_convention("analyst") == LaplacianConvention::Analyst);
  CHECK_THROWS_AS(parse_convention("other"), std::invalid_argument);
}
