#include "lphodge/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>
#include <stdexcept>

namespace lphodge::quadrature {

Rule1D gauss_legendre(int m, double a, double b) {
  if (m < 1) throw std::invalid_argument("Gauss-Legendre order must be positive");
  Rule1D rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int i = 1; i <= (m + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i - 0.25) / (m + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= m; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = m * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    rule.nodes[i - 1] = mid - half * z;
    rule.nodes[m - i] = mid + half * z;
    rule.weights[i - 1] = 2.0 * half / ((1.0 - z * z) * pp * pp);
    rule.weights[m - i] = rule.weights[i - 1];
  }
  return rule;
}

Rule1D gauss_gegenbauer(int m, double alpha) {
  if (m < 1) throw std::invalid_argument("Gauss-Gegenbauer order must be positive");
  if (!(alpha > -1.0)) throw std::invalid_argument("Gauss-Gegenbauer needs alpha > -1");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(m, m);
  for (int k = 1; k < m; ++k) {
    const double b = std::sqrt(k * (k + 2.0 * alpha) / ((2.0 * k + 2.0 * alpha + 1.0) * (2.0 * k + 2.0 * alpha - 1.0)));
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  const double mu0 = std::sqrt(std::numbers::pi) * std::tgamma(alpha + 1.0) / std::tgamma(alpha + 1.5);
  Rule1D rule;
  for (int i = 0; i < m; ++i) {
    rule.nodes.push_back(eig.eigenvalues()(i));
    const double v = eig.eigenvectors()(0, i);
    rule.weights.push_back(mu0 * v * v);
  }
  return rule;
}

Rule1D composite_gauss_legendre(double a, double b, int order, double panels_per_unit) {
  if (!(b >= a)) throw std::invalid_argument("composite rule needs a <= b");
  Rule1D rule;
  if (b == a) return rule;
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) * panels_per_unit)));
  const double h = (b - a) / panels;
  for (int i = 0; i < panels; ++i) {
    const Rule1D panel = gauss_legendre(order, a + i * h, a + (i + 1) * h);
    rule.nodes.insert(rule.nodes.end(), panel.nodes.begin(), panel.nodes.end());
    rule.weights.insert(rule.weights.end(), panel.weights.begin(), panel.weights.end());
  }
  return rule;
}

double unit_sphere_area(int n) {
  if (n < 1) throw std::invalid_argument("sphere dimension must be positive");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

namespace {

SphereRule product_gauss(int n, int order) {
  if (n < 2 || n > 5) throw std::invalid_argument("product Gauss sphere rule supports 2 <= n <= 5");
  if (order < 2) throw std::invalid_argument("sphere rule order must be at least 2");
  const int polar = n - 2;
  // Polar angle j carries sin^{polar-j}; with t = cos(theta) that is (1 - t^2)^{(polar-j-1)/2} dt.
  std::vector<Rule1D> theta;
  for (int j = 0; j < polar; ++j) theta.push_back(gauss_gegenbauer(order, 0.5 * (polar - j - 1)));
  const int azimuth = 2 * order;
  SphereRule rule;
  rule.n = n;
  std::vector<int> idx(polar, 0);
  std::vector<double> x(n);
  for (;;) {
    for (int a = 0; a < azimuth; ++a) {
      const double phi = 2.0 * std::numbers::pi * a / azimuth;
      double w = 2.0 * std::numbers::pi / azimuth;
      double radius = 1.0;  // product of sines so far
      for (int j = 0; j < polar; ++j) {
        const double t = theta[j].nodes[idx[j]];
        x[j] = radius * t;
        w *= theta[j].weights[idx[j]];
        radius *= std::sqrt(std::max(0.0, 1.0 - t * t));
      }
      x[n - 2] = radius * std::cos(phi);
      x[n - 1] = radius * std::sin(phi);
      rule.points.insert(rule.points.end(), x.begin(), x.end());
      rule.weights.push_back(w);
    }
    int j = polar - 1;
    while (j >= 0 && ++idx[j] == order) idx[j--] = 0;
    if (j < 0) break;
  }
  return rule;
}

SphereRule monte_carlo(int n, std::size_t samples, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sphere dimension must be positive");
  if (samples == 0) throw std::invalid_argument("Monte Carlo sphere rule needs samples");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  SphereRule rule;
  rule.n = n;
  rule.points.reserve(samples * n);
  const double w = unit_sphere_area(n) / static_cast<double>(samples);
  std::vector<double> x(n);
  for (std::size_t s = 0; s < samples; ++s) {
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (double& c : x) {
        c = gauss(rng);
        norm2 += c * c;
      }
    } while (norm2 < 1e-300);
    const double inv = 1.0 / std::sqrt(norm2);
    for (double c : x) rule.points.push_back(c * inv);
    rule.weights.push_back(w);
  }
  return rule;
}

}  // namespace

SphereRule make_sphere_rule(int n, const SphereSpec& spec) {
  return spec.scheme == SphereScheme::ProductGauss ? product_gauss(n, spec.order)
                                                   : monte_carlo(n, spec.mc_samples, spec.seed);
}

SphereSpec default_sphere_spec(int n) {
  SphereSpec spec;
  if (n > 5) spec.scheme = SphereScheme::MonteCarlo;
  return spec;
}

}  // namespace lphodge::quadrature
