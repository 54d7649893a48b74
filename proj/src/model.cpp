#include "lphodge/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lphodge/pinching.hpp"

namespace lphodge::model {

using exterior::FormVector;

WarpedModel::WarpedModel(int n, Warp warp, double kappa) : n_(n), warp_(warp), kappa_(kappa) {
  if (n < 2 || n > exterior::kMaxDimension) throw std::invalid_argument("model dimension must be in 2..16");
  if (warp == Warp::Hyperbolic && !(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
}

WarpedModel WarpedModel::flat(int n) { return WarpedModel(n, Warp::Flat, 0.0); }
WarpedModel WarpedModel::hyperbolic(int n, double kappa) { return WarpedModel(n, Warp::Hyperbolic, kappa); }

double WarpedModel::f(double r) const {
  return warp_ == Warp::Flat ? r : std::sinh(kappa_ * r) / kappa_;
}

double WarpedModel::df(double r) const { return warp_ == Warp::Flat ? 1.0 : std::cosh(kappa_ * r); }

double WarpedModel::lambda(double r) const {
  if (!(r > 0.0)) throw std::invalid_argument("Hessian of r is singular at the pole");
  return warp_ == Warp::Flat ? 1.0 / r : kappa_ / std::tanh(kappa_ * r);
}

double WarpedModel::area(double r) const {
  return quadrature::unit_sphere_area(n_) * std::pow(f(r), n_ - 1);
}

FormField constant_form(const FormVector& h) {
  FormField field;
  field.n = h.dimension();
  field.k = h.degree();
  field.name = "constant-" + std::to_string(h.degree()) + "-form";
  field.eval = [h](std::span<const double>, double) { return h; };
  return field;
}

FormField radial_oracle(const WarpedModel& model, double p, double amplitude) {
  if (!(p > 1.0)) throw std::invalid_argument("p must exceed 1");
  const int n = model.dimension();
  FormField field;
  field.n = n;
  field.k = 1;
  field.name = "radial-oracle";
  field.singular_at_pole = true;
  field.oracle_amplitude = amplitude;
  field.oracle_p = p;
  auto frame = exterior::make_frame(n);
  const double exponent = -(n - 1) / (p - 1.0);
  field.eval = [frame, model, amplitude, exponent](std::span<const double> nu, double r) {
    FormVector h(frame, 1);
    const double g = amplitude * std::pow(model.f(r), exponent);
    for (std::size_t c = 0; c < nu.size(); ++c) h[c] = g * nu[c];
    return h;
  };
  return field;
}

double radial_oracle_codifferential(const WarpedModel& model, double p, double amplitude, double r) {
  const int n = model.dimension();
  const double f = model.f(r);
  const double g = std::pow(amplitude, p - 1.0) * std::pow(f, -(n - 1.0));
  const double dg = -(n - 1.0) * std::pow(amplitude, p - 1.0) * std::pow(f, -static_cast<double>(n)) * model.df(r);
  return -dg - (n - 1.0) * (model.df(r) / f) * g;
}

QuadratureSpec default_quadrature(int n) {
  QuadratureSpec q;
  q.sphere = quadrature::default_sphere_spec(n);
  return q;
}

double SphereMoments::mu() const {
  if (!(mass > 0.0)) throw DegenerateFormError("form vanishes identically on the sphere");
  return radial / mass;
}

double SphereMoments::w() const {
  if (!(mass > 0.0)) throw DegenerateFormError("form vanishes identically on the sphere");
  return weighted / mass;
}

SphereIntegrator::SphereIntegrator(const WarpedModel& model, const QuadratureSpec& quad)
    : model_(model), quad_(quad), rule_(quadrature::make_sphere_rule(model.dimension(), quad.sphere)) {}

SphereMoments SphereIntegrator::moments(const FormField& field, double r, double p) const {
  return moments(field, r, p, nullptr, nullptr);
}

SphereMoments SphereIntegrator::moments(const FormField& field, double r, double p,
                                        std::vector<double>* mu_samples,
                                        std::vector<double>* mass_samples) const {
  const int n = model_.dimension();
  if (field.n != n) throw std::invalid_argument("form field dimension does not match the model");
  if (!(r > 0.0)) throw std::invalid_argument("sphere radius must be positive");
  const double lambda = model_.lambda(r);
  const double area_scale = std::pow(model_.f(r), n - 1);
  SphereMoments m;
  if (mu_samples) mu_samples->clear();
  if (mass_samples) mass_samples->clear();
  for (std::size_t i = 0; i < rule_.size(); ++i) {
    const std::span<const double> nu(rule_.point(i), n);
    const FormVector h = field.eval(nu, r);
    const double h2 = h.norm2();
    if (h2 == 0.0) {
      if (mu_samples) mu_samples->push_back(0.0);
      if (mass_samples) mass_samples->push_back(0.0);
      continue;
    }
    const double hp = std::pow(h2, 0.5 * p);
    const double radial_share = exterior::contract(nu, h).norm2() / h2;

    // All tangential directions share lambda, and sum_a |e*(e_a) h|^2 over any
    // orthonormal basis is k |h|^2, so the tangential sum needs only the radial part.
    const double tangential = lambda * ((n - 1) / p - (field.k - radial_share));
    const double w = rule_.weights[i] * area_scale;
    m.mass += w * hp;
    m.radial += w * hp * radial_share;
    m.weighted += w * hp * tangential;
    if (mu_samples) mu_samples->push_back(radial_share);
    if (mass_samples) mass_samples->push_back(hp);
  }
  return m;
}

double mu_eval(const FormField& field, const WarpedModel& model, double r, double p,
               const QuadratureSpec& quad) {
  return SphereIntegrator(model, quad).moments(field, r, p).mu();
}

double w_eval(const FormField& field, const WarpedModel& model, double r, double p,
              const QuadratureSpec& quad) {
  return SphereIntegrator(model, quad).moments(field, r, p).w();
}

SmallRadiusLimits small_r_limits(const FormField& field, const WarpedModel& model, double p,
                                 const QuadratureSpec& quad, double r0) {
  if (!(p > 1.0)) throw std::invalid_argument("p must exceed 1");
  const SphereIntegrator integrator(model, quad);
  SmallRadiusLimits out;
  for (double r : {r0, r0 / 2.0, r0 / 4.0}) {
    const SphereMoments m = integrator.moments(field, r, p);
    out.radii.push_back(r);
    out.mu_samples.push_back(m.mu());
    out.rw_samples.push_back(r * m.w());
  }
  auto extrapolate = [](const std::vector<double>& g) {
    const double a = (4.0 * g[1] - g[0]) / 3.0;
    const double b = (4.0 * g[2] - g[1]) / 3.0;
    return (16.0 * b - a) / 15.0;
  };
  out.mu_limit = extrapolate(out.mu_samples);
  out.rw_limit = extrapolate(out.rw_samples);
  out.rw_from_mu = (model.dimension() - 1 - p * field.k + p * out.mu_limit) / p;

  if (!field.singular_at_pole) {
    const int n = model.dimension();
    std::vector<double> e(n, 0.0);
    double at_pole = 0.0;
    for (int c = 0; c < n; ++c) {
      e[c] = 1.0;
      at_pole = std::max(at_pole, field.eval(e, 0.0).norm());
      e[c] = 0.0;
    }
    out.pole_nonzero = at_pole > 0.0;
  }
  return out;
}

namespace {

double relative_gap(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

void check_domain(const FormField& field, double inner_radius, double outer_radius) {
  if (!(inner_radius >= 0.0) || !(outer_radius >= inner_radius))
    throw std::invalid_argument("integration domain needs 0 <= inner <= outer");
  if (inner_radius == 0.0 && field.singular_at_pole)
    throw std::domain_error("ball contains the singularity of " + field.name + "; use an annulus");
}

double integrate_weighted(const SphereIntegrator& integ, const FormField& field, double p, double a,
                          double b) {
  if (b <= a) return 0.0;
  const auto& q = integ.quad();
  const auto rule = quadrature::composite_gauss_legendre(a, b, q.radial_order, q.radial_panels_per_unit);
  return rule.integrate([&](double s) { return integ.moments(field, s, p).weighted; });
}

double y_value(const SphereIntegrator& integ, const FormField& field, double p, double inner, double t) {
  double y = integrate_weighted(integ, field, p, inner, t);
  if (inner > 0.0) y += integ.moments(field, inner, p).boundary(p);
  return y;
}

}  // namespace

double radial_oracle_identity_closed_form(const WarpedModel& model, double p, double amplitude,
                                          double sigma, double tau) {
  const int n = model.dimension();
  auto F = [&](double r) { return std::pow(model.f(r), -(n - 1) / (p - 1.0)); };
  return (1.0 / p - 1.0) * quadrature::unit_sphere_area(n) * std::pow(amplitude, p) * (F(tau) - F(sigma));
}

IdentityResult monotonicity_identity(const FormField& field, const WarpedModel& model, double p,
                                     double inner_radius, double outer_radius, const QuadratureSpec& quad) {
  if (!(p > 1.0)) throw std::invalid_argument("p must exceed 1");
  check_domain(field, inner_radius, outer_radius);
  const SphereIntegrator integ(model, quad);
  IdentityResult out;
  if (outer_radius == 0.0) return out;
  const SphereMoments outer = integ.moments(field, outer_radius, p);
  out.lhs = outer.boundary(p);
  if (inner_radius > 0.0) out.lhs -= integ.moments(field, inner_radius, p).boundary(p);
  out.rhs = integrate_weighted(integ, field, p, inner_radius, outer_radius);
  // Both sides vanish when 1/p - mu = w = 0 identically, so the mass term sets the scale too.
  const double scale = std::max({std::abs(out.lhs), std::abs(out.rhs), outer.mass / p});
  out.residual = scale == 0.0 ? 0.0 : std::abs(out.lhs - out.rhs) / scale;
  if (field.oracle_amplitude && field.oracle_p == p && inner_radius > 0.0) {
    out.closed_form = radial_oracle_identity_closed_form(model, p, *field.oracle_amplitude, inner_radius, outer_radius);
    out.closed_form_residual = std::max(relative_gap(out.lhs, *out.closed_form), relative_gap(out.rhs, *out.closed_form));
  }
  return out;
}

double w_weighted_integral(const FormField& field, const WarpedModel& model, double p,
                           double inner_radius, double t, const QuadratureSpec& quad) {
  check_domain(field, inner_radius, t);
  return y_value(SphereIntegrator(model, quad), field, p, inner_radius, t);
}

OdeFactorResult ode_factor_check(const FormField& field, const WarpedModel& model, double p,
                                 double inner_radius, double sigma, double tau,
                                 const QuadratureSpec& quad) {
  if (!(p > 1.0)) throw std::invalid_argument("p must exceed 1");
  if (!(sigma > 0.0) || !(tau >= sigma)) throw std::invalid_argument("need 0 < sigma <= tau");
  if (sigma < inner_radius) throw std::invalid_argument("sigma lies inside the excluded inner ball");
  check_domain(field, inner_radius, tau);
  const SphereIntegrator integ(model, quad);

  // Sign of 1/p - mu on [sigma, tau]: nodes of the exponent rule plus both endpoints.
  const auto rule = quadrature::composite_gauss_legendre(sigma, tau, quad.radial_order, quad.radial_panels_per_unit);
  std::vector<double> radii = rule.nodes;
  radii.push_back(sigma);
  radii.push_back(tau);
  std::vector<SphereMoments> m;
  m.reserve(radii.size());
  bool positive = false;
  bool negative = false;
  for (double s : radii) {
    m.push_back(integ.moments(field, s, p));
    const double b = 1.0 / p - m.back().mu();
    positive = positive || b > 1e-12;
    negative = negative || b < -1e-12;
  }
  if (positive && negative)
    throw SignChangeError("1/p - mu changes sign on [" + std::to_string(sigma) + ", " + std::to_string(tau) + "]");

  OdeFactorResult out;
  out.sign = positive ? 1 : negative ? -1 : 0;
  if (sigma == tau) return out;
  double exponent = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    exponent += rule.weights[i] * p * m[i].w() / (1.0 - p * m[i].mu());
  out.exp_factor = std::exp(-exponent);
  out.lhs_ratio = y_value(integ, field, p, inner_radius, sigma) / y_value(integ, field, p, inner_radius, tau);
  out.residual = relative_gap(out.lhs_ratio, out.exp_factor);
  return out;
}

double ip_integral(const FormField& field, const WarpedModel& model, double p, double inner_radius,
                   double R, const QuadratureSpec& quad) {
  check_domain(field, inner_radius, R);
  if (R == inner_radius) return 0.0;
  const SphereIntegrator integ(model, quad);
  const auto rule = quadrature::composite_gauss_legendre(inner_radius, R, quad.radial_order, quad.radial_panels_per_unit);
  return rule.integrate([&](double s) { return integ.moments(field, s, p).mass; });
}

DecayResult decay_check(int n, double p, double sigma, double tau, const QuadratureSpec& quad) {
  DecayResult out;
  out.applicable = p > 1.0 && p < n - 1.0 && sigma > 0.0 && tau >= sigma;
  if (!out.applicable) return out;
  pinching::PinchSpec spec{n, 1, 1.0, p, std::nullopt};
  out.rate = pinching::decay_rates(spec).low;
  const WarpedModel model = WarpedModel::hyperbolic(n, 1.0);
  const FormField oracle = radial_oracle(model, p);
  const SphereIntegrator integ(model, quad);
  const double y_sigma = y_value(integ, oracle, p, sigma, sigma);
  const double y_tau = y_value(integ, oracle, p, sigma, tau);
  out.ratio = std::abs(y_tau / y_sigma);
  out.bound = std::exp(-out.rate * (tau - sigma));
  out.ok = out.ratio <= out.bound;
  return out;
}

const char* to_string(LaplacianConvention c) noexcept {
  return c == LaplacianConvention::Positive ? "positive" : "analyst";
}

LaplacianConvention parse_convention(const std::string& s) {
  if (s == "positive") return LaplacianConvention::Positive;
  if (s == "analyst") return LaplacianConvention::Analyst;
  throw std::invalid_argument("bochner.convention must be 'positive' or 'analyst', got '" + s + "'");
}

namespace {

double oracle_exponent(int n, double p) {
  if (!(p > 1.0)) throw std::invalid_argument("p must exceed 1");
  const double a = (p - n) / (p - 1.0);
  if (a == 0.0) throw DegenerateFormError("u = |x|^0 is constant for p = n; du vanishes");
  return a;
}

// h = du for u = |x|^a.
std::vector<double> oracle_h(double a, std::span<const double> x) {
  const double r2 = std::inner_product(x.begin(), x.end(), x.begin(), 0.0);
  const double s = a * std::pow(r2, 0.5 * (a - 2.0));
  std::vector<double> h(x.begin(), x.end());
  for (double& c : h) c *= s;
  return h;
}

double norm(const std::vector<double>& v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

}  // namespace

BochnerSides bochner_closed_form(int n, double p, double r, LaplacianConvention convention) {
  const double a = oracle_exponent(n, p);
  const double c = std::pow(std::abs(a), p);
  const double m = p * (a - 1.0);
  const double sign = convention == LaplacianConvention::Positive ? -1.0 : 1.0;
  BochnerSides s;
  s.lhs = sign * 0.5 * c * m * (m + n - 2.0) * std::pow(r, m - 2.0);
  const double grad_h2 = a * a * std::pow(r, 2.0 * a - 4.0) * ((n - 1.0) + (a - 1.0) * (a - 1.0));
  const double dnorm2 = a * a * (a - 1.0) * (a - 1.0) * std::pow(r, 2.0 * a - 4.0);
  const double hp2 = std::pow(std::abs(a), p - 2.0) * std::pow(r, (p - 2.0) * (a - 1.0));
  const double div = c * m * (m + n - 2.0) * std::pow(r, m - 2.0);
  s.rhs = -hp2 * (grad_h2 - (2.0 - p) * dnorm2) - (2.0 - p) / (2.0 * p) * div;
  return s;
}

double bochner_residual(int n, double p, double mesh, std::span<const std::vector<double>> points,
                        LaplacianConvention convention) {
  const double a = oracle_exponent(n, p);
  if (!(mesh > 0.0)) throw std::invalid_argument("mesh must be positive");
  const auto frame = exterior::make_frame(n);
  auto shifted = [](std::vector<double> x, int i, double d) {
    x[i] += d;
    return x;
  };
  auto hp = [&](const std::vector<double>& x) { return std::pow(norm(oracle_h(a, x)), p); };
  // Bracket <e*(w^k) u, e*(w^j) u> - <e(w^j) u, e(w^k) u> for the unit form u = h/|h|.
  auto vector_field = [&](const std::vector<double>& y, int j) {
    const std::vector<double> h = oracle_h(a, y);
    const double hn = norm(h);
    FormVector u(frame, 1);
    for (int c = 0; c < n; ++c) u[c] = h[c] / hn;
    const FormVector cj = exterior::contract(j, u);
    const FormVector ej = exterior::ext_mul(j, u);
    double v = 0.0;
    for (int k = 0; k < n; ++k) {
      const double bracket = exterior::inner(exterior::contract(k, u), cj) - exterior::inner(ej, exterior::ext_mul(k, u));
      const double dk = (hp(shifted(y, k, mesh)) - hp(shifted(y, k, -mesh))) / (2.0 * mesh);
      v += bracket * dk;
    }
    return v;
  };

  double worst = 0.0;
  for (const auto& x : points) {
    if (static_cast<int>(x.size()) != n) throw std::invalid_argument("sample point dimension mismatch");
    if (norm(x) <= 2.0 * mesh) throw std::domain_error("stencil touches the singularity at the origin");
    const std::vector<double> h = oracle_h(a, x);
    const double hn = norm(h);
    double lap = 0.0;
    double grad_h2 = 0.0;
    double dnorm2 = 0.0;
    double div = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto xp = shifted(x, i, mesh);
      const auto xm = shifted(x, i, -mesh);
      lap += (0.5 * hp(xp) - hp(x) + 0.5 * hp(xm)) / (mesh * mesh);
      const std::vector<double> hpv = oracle_h(a, xp);
      const std::vector<double> hmv = oracle_h(a, xm);
      for (int c = 0; c < n; ++c) grad_h2 += std::pow((hpv[c] - hmv[c]) / (2.0 * mesh), 2);
      dnorm2 += std::pow((norm(hpv) - norm(hmv)) / (2.0 * mesh), 2);
      div += (vector_field(xp, i) - vector_field(xm, i)) / (2.0 * mesh);
    }
    const double lhs = convention == LaplacianConvention::Positive ? -lap : lap;
    const double rhs = -std::pow(hn, p - 2.0) * (grad_h2 - (2.0 - p) * dnorm2) - (2.0 - p) / (2.0 * p) * div;
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

std::vector<std::vector<double>> bochner_sample_points(int n) {
  std::vector<std::vector<double>> pts;
  const double radii[] = {1.0, 1.25, 1.5};
  for (int s = 0; s < 6; ++s) {
    std::vector<double> x(n);
    double len = 0.0;
    for (int c = 0; c < n; ++c) {
      x[c] = std::cos(1.3 * (s + 1) * (c + 1) + 0.4 * c);
      len += x[c] * x[c];
    }
    len = std::sqrt(len);
    for (double& c : x) c *= radii[s % 3] / len;
    pts.push_back(std::move(x));
  }
  return pts;
}

BochnerStudy bochner_convergence(int n, double p, LaplacianConvention convention, std::vector<double> meshes) {
  BochnerStudy st;
  st.n = n;
  st.p = p;
  st.convention = convention;
  st.meshes = std::move(meshes);
  const auto pts = bochner_sample_points(n);
  for (double h : st.meshes) st.residuals.push_back(bochner_residual(n, p, h, pts, convention));
  // Least-squares slope in log-log.
  const std::size_t m = st.meshes.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = std::log(st.meshes[i]);
    const double y = std::log(std::max(st.residuals[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double den = m * sxx - sx * sx;
  st.order = den == 0.0 ? 0.0 : (m * sxy - sx * sy) / den;
  return st;
}

ConventionResolution resolve_bochner_convention(LaplacianConvention configured) {
  auto converges = [](LaplacianConvention c, BochnerStudy& st) {
    st = bochner_convergence(3, 2.0, c);
    const BochnerSides exact = bochner_closed_form(3, 2.0, 1.0, c);
    const bool closed_ok = std::abs(exact.lhs - exact.rhs) <= 1e-10 * std::max(1.0, std::abs(exact.rhs));
    return closed_ok && st.order >= 1.9;
  };
  ConventionResolution res;
  res.convention = configured;
  if (converges(configured, res.study)) return res;
  res.convention = configured == LaplacianConvention::Positive ? LaplacianConvention::Analyst
                                                               : LaplacianConvention::Positive;
  res.flipped = true;
  converges(res.convention, res.study);
  return res;
}

}  // namespace lphodge::model
