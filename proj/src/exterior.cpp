#include "lphodge/exterior.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace lphodge::exterior {

namespace {

struct BasisTable {
  std::vector<std::vector<Monomial>> by_degree;  // [k] -> lex-ordered monomials
  std::vector<std::uint32_t> index;              // mask -> position within its degree
};

void enumerate(int n, int k, int start, Monomial acc, std::vector<Monomial>& out) {
  if (k == 0) {
    out.push_back(acc);
    return;
  }
  for (int i = start; i <= n - k; ++i) enumerate(n, k - 1, i + 1, acc | (Monomial{1} << i), out);
}

const BasisTable& basis_table(int n) {
  if (n < 0 || n > kMaxDimension)
    throw std::invalid_argument("frame dimension must be in 0.." + std::to_string(kMaxDimension));
  static std::array<BasisTable, kMaxDimension + 1> tables;
  static std::array<std::once_flag, kMaxDimension + 1> flags;
  std::call_once(flags[n], [n] {
    BasisTable& t = tables[n];
    t.by_degree.resize(n + 1);
    t.index.assign(std::size_t{1} << n, 0);
    for (int k = 0; k <= n; ++k) {
      enumerate(n, k, 0, 0, t.by_degree[k]);
      for (std::size_t i = 0; i < t.by_degree[k].size(); ++i) t.index[t.by_degree[k][i]] = i;
    }
  });
  return tables[n];
}

// Number of elements of m strictly below index c.
int count_below(Monomial m, int c) { return std::popcount(m & ((Monomial{1} << c) - 1)); }

// Parity of the shuffle (I, J): number of pairs i in I, j in J with i > j.
int shuffle_sign(Monomial I, Monomial J) {
  int inversions = 0;
  for (Monomial rest = J; rest != 0; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    inversions += std::popcount(I >> (j + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

void require_same_frame(const FormVector& a, const FormVector& b) {
  if (!same_frame(a, b)) throw std::invalid_argument("forms live on different frames");
}

void require_index(int c, int n) {
  if (c < 0 || c >= n)
    throw std::out_of_range("covector index " + std::to_string(c) + " outside frame of dimension " +
                            std::to_string(n));
}

}  // namespace

Frame::Frame(int n) {
  if (n < 1 || n > kMaxDimension)
    throw std::invalid_argument("frame dimension must be in 1.." + std::to_string(kMaxDimension));
  labels_.reserve(n);
  for (int i = 0; i < n; ++i) labels_.push_back("w" + std::to_string(i));
}

Frame::Frame(std::vector<std::string> labels, std::optional<std::vector<double>> weights)
    : labels_(std::move(labels)), weights_(std::move(weights)) {
  const int n = dimension();
  if (n < 1 || n > kMaxDimension)
    throw std::invalid_argument("frame dimension must be in 1.." + std::to_string(kMaxDimension));
  std::unordered_set<std::string> seen(labels_.begin(), labels_.end());
  if (static_cast<int>(seen.size()) != n) throw std::invalid_argument("frame labels must be distinct");
  if (weights_ && static_cast<int>(weights_->size()) != n)
    throw std::invalid_argument("frame weights must have one entry per direction");
}

std::span<const double> Frame::weights() const {
  if (!weights_) throw std::logic_error("frame has no weights");
  return *weights_;
}

FramePtr make_frame(int n) { return std::make_shared<const Frame>(n); }

FramePtr make_frame(std::vector<std::string> labels, std::optional<std::vector<double>> weights) {
  return std::make_shared<const Frame>(std::move(labels), std::move(weights));
}

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

std::span<const Monomial> monomials(int n, int k) {
  const BasisTable& t = basis_table(n);
  if (k < 0 || k > n) throw std::invalid_argument("degree out of range");
  return t.by_degree[k];
}

std::size_t monomial_index(int n, Monomial m) {
  const BasisTable& t = basis_table(n);
  if (m >= t.index.size()) throw std::out_of_range("monomial outside frame");
  return t.index[m];
}

Monomial make_monomial(std::initializer_list<int> indices) {
  Monomial m = 0;
  for (int i : indices) {
    if (i < 0 || i >= kMaxDimension) throw std::out_of_range("monomial index out of range");
    const Monomial bit = Monomial{1} << i;
    if (m & bit) throw std::invalid_argument("repeated index in monomial");
    m |= bit;
  }
  return m;
}

std::vector<int> monomial_indices(Monomial m) {
  std::vector<int> out;
  for (; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

FormVector::FormVector(FramePtr frame, int degree) : frame_(std::move(frame)), degree_(degree) {
  if (!frame_) throw std::invalid_argument("null frame");
  if (degree < 0 || degree > frame_->dimension())
    throw std::invalid_argument("degree " + std::to_string(degree) + " out of range for dimension " +
                                std::to_string(frame_->dimension()));
  coeffs_.assign(binomial(frame_->dimension(), degree), 0.0);
}

FormVector FormVector::monomial(FramePtr frame, std::initializer_list<int> indices, double coeff) {
  return monomial(std::move(frame), make_monomial(indices), coeff);
}

FormVector FormVector::monomial(FramePtr frame, Monomial m, double coeff) {
  FormVector f(std::move(frame), std::popcount(m));
  f.set(m, coeff);
  return f;
}

Monomial FormVector::monomial_at(std::size_t i) const { return monomials(dimension(), degree_)[i]; }

double FormVector::coeff(Monomial m) const {
  if (std::popcount(m) != degree_) return 0.0;
  return coeffs_[monomial_index(dimension(), m)];
}

void FormVector::set(Monomial m, double value) {
  if (std::popcount(m) != degree_) throw std::invalid_argument("monomial degree mismatch");
  if (m >> dimension()) throw std::out_of_range("monomial outside frame");
  coeffs_[monomial_index(dimension(), m)] = value;
}

double FormVector::norm2() const noexcept {
  return std::inner_product(coeffs_.begin(), coeffs_.end(), coeffs_.begin(), 0.0);
}

double FormVector::norm() const noexcept { return std::sqrt(norm2()); }

FormVector& FormVector::operator+=(const FormVector& other) {
  require_same_frame(*this, other);
  if (degree_ != other.degree_) throw std::invalid_argument("adding forms of different degree");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

FormVector& FormVector::operator-=(const FormVector& other) {
  require_same_frame(*this, other);
  if (degree_ != other.degree_) throw std::invalid_argument("subtracting forms of different degree");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

FormVector& FormVector::operator*=(double s) noexcept {
  for (double& c : coeffs_) c *= s;
  return *this;
}

bool same_frame(const FormVector& a, const FormVector& b) {
  return a.frame_ptr() == b.frame_ptr() || a.frame() == b.frame();
}

double inner(const FormVector& a, const FormVector& b) {
  require_same_frame(a, b);
  if (a.degree() != b.degree()) return 0.0;
  return std::inner_product(a.coeffs().begin(), a.coeffs().end(), b.coeffs().begin(), 0.0);
}

FormVector wedge(const FormVector& a, const FormVector& b) {
  require_same_frame(a, b);
  const int n = a.dimension();
  if (a.degree() + b.degree() > n) throw std::invalid_argument("wedge degree exceeds frame dimension");
  FormVector out(a.frame_ptr(), a.degree() + b.degree());
  const auto ma = monomials(n, a.degree());
  const auto mb = monomials(n, b.degree());
  for (std::size_t i = 0; i < ma.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < mb.size(); ++j) {
      if (b[j] == 0.0 || (ma[i] & mb[j])) continue;
      out[monomial_index(n, ma[i] | mb[j])] += shuffle_sign(ma[i], mb[j]) * a[i] * b[j];
    }
  }
  return out;
}

FormVector ext_mul(int c, const FormVector& f) {
  const int n = f.dimension();
  require_index(c, n);
  if (f.degree() == n) return FormVector(f.frame_ptr(), n);  // only reachable as the zero map
  FormVector out(f.frame_ptr(), f.degree() + 1);
  const Monomial bit = Monomial{1} << c;
  const auto basis = monomials(n, f.degree());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (f[i] == 0.0 || (basis[i] & bit)) continue;
    const double sign = (count_below(basis[i], c) & 1) ? -1.0 : 1.0;
    out[monomial_index(n, basis[i] | bit)] += sign * f[i];
  }
  return out;
}

FormVector contract(int c, const FormVector& f) {
  const int n = f.dimension();
  require_index(c, n);
  if (f.degree() == 0) return FormVector(f.frame_ptr(), 0);
  FormVector out(f.frame_ptr(), f.degree() - 1);
  const Monomial bit = Monomial{1} << c;
  const auto basis = monomials(n, f.degree());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (f[i] == 0.0 || !(basis[i] & bit)) continue;
    const double sign = (count_below(basis[i], c) & 1) ? -1.0 : 1.0;
    out[monomial_index(n, basis[i] & ~bit)] += sign * f[i];
  }
  return out;
}

FormVector contract(std::span<const double> v, const FormVector& f) {
  const int n = f.dimension();
  if (static_cast<int>(v.size()) != n) throw std::invalid_argument("covector length mismatch");
  if (f.degree() == 0) return FormVector(f.frame_ptr(), 0);
  FormVector out(f.frame_ptr(), f.degree() - 1);
  const auto basis = monomials(n, f.degree());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (f[i] == 0.0) continue;
    for (Monomial rest = basis[i]; rest != 0; rest &= rest - 1) {
      const int c = std::countr_zero(rest);
      if (v[c] == 0.0) continue;
      const double sign = (count_below(basis[i], c) & 1) ? -1.0 : 1.0;
      out[monomial_index(n, basis[i] & ~(Monomial{1} << c))] += sign * v[c] * f[i];
    }
  }
  return out;
}

int star_sign(int k, int n) noexcept { return ((k * (n - k)) & 1) ? -1 : 1; }

FormVector hodge_star(const FormVector& f) {
  const int n = f.dimension();
  const Monomial all = (n == 32) ? ~Monomial{0} : ((Monomial{1} << n) - 1);
  FormVector out(f.frame_ptr(), n - f.degree());
  const auto basis = monomials(n, f.degree());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Monomial comp = all & ~basis[i];
    out[monomial_index(n, comp)] = shuffle_sign(basis[i], comp) * f[i];
  }
  return out;
}

FormVector nonlinear_star(const FormVector& f, double p) {
  if (!(p > 1.0)) throw std::invalid_argument("nonlinear star requires p > 1");
  const double norm = f.norm();
  if (norm == 0.0) return FormVector(f.frame_ptr(), f.dimension() - f.degree());
  return hodge_star(std::pow(norm, p - 2.0) * f);
}

double diagonal_quadratic_form(std::span<const double> weights, const FormVector& h) {
  if (static_cast<int>(weights.size()) != h.dimension())
    throw std::invalid_argument("weight count must match frame dimension");
  double q = 0.0;
  for (int a = 0; a < h.dimension(); ++a) {
    if (weights[a] == 0.0) continue;
    q += weights[a] * contract(a, h).norm2();
  }
  return q;
}

DiagonalExtremes diagonal_form_extremes(std::span<const double> weights, int k) {
  const int n = static_cast<int>(weights.size());
  if (k < 0 || k > n) throw std::invalid_argument("degree out of range for diagonal extremes");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return weights[a] < weights[b]; });
  DiagonalExtremes out;
  for (int i = 0; i < k; ++i) {
    out.argmin.push_back(order[i]);
    out.min += weights[order[i]];
    out.argmax.push_back(order[n - 1 - i]);
    out.max += weights[order[n - 1 - i]];
  }
  std::sort(out.argmin.begin(), out.argmin.end());
  std::sort(out.argmax.begin(), out.argmax.end());
  return out;
}

double weighted_defect(std::span<const double> weights, int k, double p) {
  if (!(p > 1.0)) throw std::invalid_argument("weighted defect requires p > 1");
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  return total / p - diagonal_form_extremes(weights, k).max;
}

double BoundaryIdentity::residual() const { return std::abs(lhs - rhs); }
double BoundaryIdentity::middle_residual() const { return std::abs(lhs - middle); }

BoundaryIdentity boundary_identity(std::span<const int> root_weights, int flat_count,
                                   const FormVector& phi) {
  const int roots = static_cast<int>(root_weights.size());
  if (roots + flat_count != phi.dimension())
    throw std::invalid_argument("boundary identity: frame must hold the roots plus the flat directions");
  int mu = -1;
  int n1 = 0;
  for (int a = 0; a < roots; ++a) {
    const int w = root_weights[a];
    if (w < 0 || w > 2) throw std::invalid_argument("root weights must lie in {0,1,2}");
    if (w == 1) ++n1;
    if (w == 2) {
      if (mu >= 0) throw std::invalid_argument("boundary identity needs exactly one maximal root");
      mu = a;
    }
  }
  if (mu < 0) throw std::invalid_argument("boundary identity needs exactly one maximal root");

  const double phi2 = phi.norm2();
  double sum_zero = 0.0;
  double sum_flat = 0.0;
  BoundaryIdentity out;
  for (int a = 0; a < roots; ++a) {
    const double c2 = contract(a, phi).norm2();
    out.lhs += root_weights[a] * (0.5 * phi2 - c2);
    if (root_weights[a] == 0) sum_zero += c2;
  }
  for (int j = 0; j < flat_count; ++j) sum_flat += contract(roots + j, phi).norm2();
  const double mu2 = contract(mu, phi).norm2();
  const int rank = flat_count;
  out.middle = 0.5 * (n1 + 2) * phi2 - mu2 - (rank - 1) * phi2 + sum_zero + sum_flat;
  const FormVector omega_mu = FormVector::monomial(phi.frame_ptr(), Monomial{1} << mu);
  out.rhs = wedge(omega_mu, phi).norm2() + sum_zero + sum_flat;
  return out;
}

}  // namespace lphodge::exterior
