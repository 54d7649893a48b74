#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace lphodge::quadrature {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

/// m-point Gauss-Legendre rule on [a, b].
Rule1D gauss_legendre(int m, double a, double b);

/// m-point Gauss rule on [-1, 1] for the weight (1 - t^2)^alpha, alpha > -1 (Golub-Welsch).
Rule1D gauss_gegenbauer(int m, double alpha);

/// Composite Gauss-Legendre: ceil((b - a) * panels_per_unit) panels (at least one)
/// with `order` points each.
Rule1D composite_gauss_legendre(double a, double b, int order, double panels_per_unit);

/// Surface area of the unit sphere S^{n-1} in R^n.
double unit_sphere_area(int n);

enum class SphereScheme { ProductGauss, MonteCarlo };

struct SphereSpec {
  SphereScheme scheme = SphereScheme::ProductGauss;
  int order = 10;                  // Gauss points per polar angle; 2*order azimuthal points
  std::size_t mc_samples = 200000;
  std::uint64_t seed = 20240611;
};

/// Points on the unit sphere S^{n-1} (row-major, n doubles per point) with
/// weights summing to unit_sphere_area(n).
struct SphereRule {
  int n = 0;
  std::vector<double> points;
  std::vector<double> weights;

  std::size_t size() const noexcept { return weights.size(); }
  const double* point(std::size_t i) const noexcept { return points.data() + i * n; }
};

/// Product Gauss-Legendre in the polar angles (trapezoid in the azimuth), n <= 5;
/// seeded uniform Monte Carlo otherwise. ProductGauss for n > 5 throws.
SphereRule make_sphere_rule(int n, const SphereSpec& spec);

/// Scheme used by default for dimension n: product Gauss up to n = 5, Monte Carlo above.
SphereSpec default_sphere_spec(int n);

}  // namespace lphodge::quadrature
