#pragma once

// Rotationally symmetric model geometries dr^2 + f(r)^2 g_{S^{n-1}} and the
// sphere-averaged monotonicity weights
//   mu_p(h, r) = <|h|^p |e*(dr) h/|h||^2> / <|h|^p>
//   w_p(h, r)  = <|h|^p sum_a lambda_a (1/p - |e*(omega^a) h/|h||^2)> / <|h|^p>
// where <.> is the integral over the geodesic sphere S_r.

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lphodge/exterior.hpp"
#include "lphodge/quadrature.hpp"

namespace lphodge::model {

enum class Warp { Flat, Hyperbolic };

class WarpedModel {
public:
  static WarpedModel flat(int n);
  /// f(r) = sinh(kappa r)/kappa, constant curvature -kappa^2.
  static WarpedModel hyperbolic(int n, double kappa = 1.0);

  int dimension() const noexcept { return n_; }
  Warp warp() const noexcept { return warp_; }
  double kappa() const noexcept { return kappa_; }

  double f(double r) const;
  double df(double r) const;
  /// Hessian eigenvalue of r on tangential directions, f'/f.
  double lambda(double r) const;
  /// Area of the geodesic sphere S_r.
  double area(double r) const;

private:
  WarpedModel(int n, Warp warp, double kappa);
  int n_;
  Warp warp_;
  double kappa_;
};

/// A k-form field written in the orthonormal frame e_1..e_n at the point
/// exp(r nu), where the frame is the parallel transport of the Cartesian frame
/// at the pole along the radial geodesic (so dr = sum_c nu_c omega^c).
struct FormField {
  int n = 0;
  int k = 0;
  std::string name;
  bool singular_at_pole = false;
  // Set for the radial oracle so identities can be compared with closed forms.
  std::optional<double> oracle_amplitude;
  double oracle_p = 0.0;
  std::function<exterior::FormVector(std::span<const double> nu, double r)> eval;
};

/// Constant coefficients in the transported frame: constant Cartesian form on the
/// flat model, radially parallel form on curved models.
FormField constant_form(const exterior::FormVector& h);

/// h = C f(r)^{-(n-1)/(p-1)} dr, closed and p-coclosed away from the pole.
FormField radial_oracle(const WarpedModel& model, double p, double amplitude = 1.0);

/// Closed-form p-coclosedness of the radial oracle: -g' - (n-1)(f'/f) g with
/// g = C^{p-1} f^{-(n-1)}, the radial divergence of |h|^{p-2} h.
double radial_oracle_codifferential(const WarpedModel& model, double p, double amplitude, double r);

struct QuadratureSpec {
  quadrature::SphereSpec sphere;
  int radial_order = 20;
  double radial_panels_per_unit = 4.0;
};

QuadratureSpec default_quadrature(int n);

/// Raw sphere integrals over S_r (area element included).
struct SphereMoments {
  double mass = 0.0;      // int |h|^p
  double radial = 0.0;    // int |h|^p |e*(dr) h/|h||^2
  double weighted = 0.0;  // int |h|^p sum_a lambda_a (1/p - |e*(omega^a) h/|h||^2)

  double mu() const;
  double w() const;
  /// int (1/p - mu)|h|^p over S_r.
  double boundary(double p) const { return mass / p - radial; }
};

/// Reusable evaluator holding the sphere rule for one (model, quadrature) pair.
class SphereIntegrator {
public:
  SphereIntegrator(const WarpedModel& model, const QuadratureSpec& quad);

  const WarpedModel& model() const noexcept { return model_; }
  const QuadratureSpec& quad() const noexcept { return quad_; }

  SphereMoments moments(const FormField& field, double r, double p) const;
  /// Same integrals, with per-point values returned for standard-error estimates.
  SphereMoments moments(const FormField& field, double r, double p, std::vector<double>* mu_samples,
                        std::vector<double>* mass_samples) const;

private:
  WarpedModel model_;
  QuadratureSpec quad_;
  quadrature::SphereRule rule_;
};

class DegenerateFormError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

class SignChangeError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

double mu_eval(const FormField& field, const WarpedModel& model, double r, double p,
               const QuadratureSpec& quad);
double w_eval(const FormField& field, const WarpedModel& model, double r, double p,
              const QuadratureSpec& quad);

struct SmallRadiusLimits {
  double mu_limit = 0.0;
  double rw_limit = 0.0;
  /// (n - 1 - p k + p mu_limit)/p, the relation that holds whatever the mu limit is.
  double rw_from_mu = 0.0;
  bool pole_nonzero = false;
  std::vector<double> radii;
  std::vector<double> mu_samples;
  std::vector<double> rw_samples;
};

/// Richardson extrapolation over r0, r0/2, r0/4 assuming even expansions in r.
SmallRadiusLimits small_r_limits(const FormField& field, const WarpedModel& model, double p,
                                 const QuadratureSpec& quad, double r0 = 1e-2);

struct IdentityResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;  // |lhs - rhs| / max(|lhs|, |rhs|, int_{S_R} |h|^p / p)
  std::optional<double> closed_form;
  std::optional<double> closed_form_residual;
};

/// Ball (inner_radius = 0): int_{S_R}(1/p - mu)|h|^p = int_{B_R} w |h|^p.
/// Annulus: the inner boundary term int_{S_sigma}(1/p - mu)|h|^p is subtracted on the left.
IdentityResult monotonicity_identity(const FormField& field, const WarpedModel& model, double p,
                                     double inner_radius, double outer_radius, const QuadratureSpec& quad);

/// (1/p - 1) area_1 C^p [F(tau) - F(sigma)], F = f^{-(n-1)/(p-1)}: both sides of the
/// annulus identity for the radial oracle.
double radial_oracle_identity_closed_form(const WarpedModel& model, double p, double amplitude,
                                          double sigma, double tau);

struct OdeFactorResult {
  double lhs_ratio = 1.0;   // Y(sigma)/Y(tau)
  double exp_factor = 1.0;  // exp(-int_sigma^tau p w/(1 - p mu) ds)
  double residual = 0.0;
  int sign = 0;             // sign of 1/p - mu on [sigma, tau]
};

/// Y(t) = int_{B_t} w|h|^p, or for inner_radius > 0 the annulus version carrying the
/// inner boundary term. Throws SignChangeError if 1/p - mu changes sign on [sigma, tau].
OdeFactorResult ode_factor_check(const FormField& field, const WarpedModel& model, double p,
                                 double inner_radius, double sigma, double tau,
                                 const QuadratureSpec& quad);

/// Y as used above, evaluated at t.
double w_weighted_integral(const FormField& field, const WarpedModel& model, double p,
                           double inner_radius, double t, const QuadratureSpec& quad);

/// I_p = int |h|^p over B_R centred at the pole (annulus when inner_radius > 0).
double ip_integral(const FormField& field, const WarpedModel& model, double p, double inner_radius,
                   double R, const QuadratureSpec& quad);

struct DecayResult {
  bool applicable = false;
  double rate = 0.0;   // k [delta(n-k-1)/k + 1 - p] at k = 1, delta = 1
  double ratio = 0.0;  // |Y(tau)| / |Y(sigma)|
  double bound = 0.0;  // exp(-rate (tau - sigma))
  bool ok = false;
};

/// Exponential decay check of the w-weighted mass for the radial oracle on H^n.
DecayResult decay_check(int n, double p, double sigma, double tau, const QuadratureSpec& quad);

enum class LaplacianConvention { Positive, Analyst };
const char* to_string(LaplacianConvention c) noexcept;
LaplacianConvention parse_convention(const std::string& s);

/// Both sides of the p-harmonic Bochner formula for h = du, u = |x|^{(p-n)/(p-1)}
/// on flat R^n, evaluated in closed form at radius r.
struct BochnerSides {
  double lhs = 0.0;
  double rhs = 0.0;
};
BochnerSides bochner_closed_form(int n, double p, double r, LaplacianConvention convention);

/// Max over sample points of |LHS - RHS| with every derivative taken by central
/// differences at spacing `mesh`.
double bochner_residual(int n, double p, double mesh, std::span<const std::vector<double>> points,
                        LaplacianConvention convention);

/// Deterministic sample points on the annulus 1 <= |x| <= 1.5.
std::vector<std::vector<double>> bochner_sample_points(int n);

struct BochnerStudy {
  int n = 0;
  double p = 0.0;
  LaplacianConvention convention = LaplacianConvention::Positive;
  std::vector<double> meshes;
  std::vector<double> residuals;
  double order = 0.0;  // least-squares slope of log residual against log mesh
};

BochnerStudy bochner_convergence(int n, double p, LaplacianConvention convention,
                                 std::vector<double> meshes = {0.04, 0.02, 0.01});

struct ConventionResolution {
  LaplacianConvention convention = LaplacianConvention::Positive;
  bool flipped = false;
  BochnerStudy study;
};

/// Validates the configured convention on the p = 2 flat case (n = 3); flips it
/// once if the residual does not converge.
ConventionResolution resolve_bochner_convention(LaplacianConvention configured);

}  // namespace lphodge::model
