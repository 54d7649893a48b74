#pragma once

// Exterior algebra over an orthonormal coframe omega^0 .. omega^{n-1}.
//
// A k-form is stored densely over the C(n,k) monomials omega^I, I = (i1 < ... < ik),
// in lexicographic order of the index tuples. Indices are 0-based throughout; a
// monomial is addressed by the bitmask of its indices.

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lphodge::exterior {

inline constexpr int kMaxDimension = 16;

using Monomial = std::uint32_t;

class Frame {
public:
  /// Frame with default labels w0 .. w{n-1}.
  explicit Frame(int n);
  explicit Frame(std::vector<std::string> labels,
                 std::optional<std::vector<double>> weights = std::nullopt);

  int dimension() const noexcept { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  bool has_weights() const noexcept { return weights_.has_value(); }
  /// Throws std::logic_error if the frame carries no weights.
  std::span<const double> weights() const;

  friend bool operator==(const Frame&, const Frame&) = default;

private:
  std::vector<std::string> labels_;
  std::optional<std::vector<double>> weights_;
};

using FramePtr = std::shared_ptr<const Frame>;

FramePtr make_frame(int n);
FramePtr make_frame(std::vector<std::string> labels,
                    std::optional<std::vector<double>> weights = std::nullopt);

/// Number of k-subsets of an n-set.
std::size_t binomial(int n, int k);

/// Monomials of degree k in lexicographic order.
std::span<const Monomial> monomials(int n, int k);
/// Position of a monomial inside monomials(n, popcount(m)).
std::size_t monomial_index(int n, Monomial m);

Monomial make_monomial(std::initializer_list<int> indices);
std::vector<int> monomial_indices(Monomial m);

class FormVector {
public:
  FormVector(FramePtr frame, int degree);

  static FormVector monomial(FramePtr frame, std::initializer_list<int> indices,
                             double coeff = 1.0);
  static FormVector monomial(FramePtr frame, Monomial m, double coeff = 1.0);

  const Frame& frame() const noexcept { return *frame_; }
  const FramePtr& frame_ptr() const noexcept { return frame_; }
  int dimension() const noexcept { return frame_->dimension(); }
  int degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  std::span<const double> coeffs() const noexcept { return coeffs_; }
  std::span<double> coeffs() noexcept { return coeffs_; }
  double operator[](std::size_t i) const { return coeffs_[i]; }
  double& operator[](std::size_t i) { return coeffs_[i]; }

  Monomial monomial_at(std::size_t i) const;
  double coeff(Monomial m) const;
  void set(Monomial m, double value);

  double norm2() const noexcept;
  double norm() const noexcept;

  FormVector& operator+=(const FormVector& other);
  FormVector& operator-=(const FormVector& other);
  FormVector& operator*=(double s) noexcept;

  friend FormVector operator+(FormVector a, const FormVector& b) { return a += b; }
  friend FormVector operator-(FormVector a, const FormVector& b) { return a -= b; }
  friend FormVector operator*(double s, FormVector a) { return a *= s; }
  friend FormVector operator*(FormVector a, double s) { return a *= s; }

private:
  FramePtr frame_;
  int degree_;
  std::vector<double> coeffs_;
};

bool same_frame(const FormVector& a, const FormVector& b);

double inner(const FormVector& a, const FormVector& b);

FormVector wedge(const FormVector& a, const FormVector& b);

/// e(omega^c): left exterior multiplication.
FormVector ext_mul(int c, const FormVector& f);
/// e*(omega^c): the adjoint of e(omega^c), i.e. interior product with e_c.
FormVector contract(int c, const FormVector& f);
/// e*(v) for the covector v = sum_c v_c omega^c.
FormVector contract(std::span<const double> v, const FormVector& f);

/// (-1)^{k(n-k)}.
int star_sign(int k, int n) noexcept;

/// *omega^I = sign(I, I^c) omega^{I^c}, sign the parity of the shuffle (I, I^c).
FormVector hodge_star(const FormVector& f);

/// *_p f = *(|f|^{p-2} f). Throws std::invalid_argument for p <= 1.
FormVector nonlinear_star(const FormVector& f, double p);

/// Q(h) = sum_a c_a |e*(omega^a) h|^2.
double diagonal_quadratic_form(std::span<const double> weights, const FormVector& h);

struct DiagonalExtremes {
  double min = 0.0;
  double max = 0.0;
  std::vector<int> argmin;
  std::vector<int> argmax;
};

/// Extremes of Q over unit k-forms. Q is diagonal on monomials with eigenvalue
/// sum_{a in I} c_a, so the extremes are the k smallest / largest weight sums.
DiagonalExtremes diagonal_form_extremes(std::span<const double> weights, int k);

/// min over unit k-forms of sum_a c_a (1/p - |e*(omega^a) h|^2).
double weighted_defect(std::span<const double> weights, int k, double p);

/// Evaluation of the split A_n boundary identity at p = 2. The frame is laid out
/// as the positive roots (in the order of `root_weights`) followed by
/// `flat_count` flat directions dt^j.
struct BoundaryIdentity {
  double lhs = 0.0;     // sum_beta beta(T)(|phi|^2/2 - |e*(omega^beta)phi|^2)
  double middle = 0.0;  // (n1+2)/2 |phi|^2 - |e*(omega^mu)phi|^2 - (n-1)|phi|^2 + sum_0 + sum_flat
  double rhs = 0.0;     // |omega^mu ^ phi|^2 + sum_0 + sum_flat
  double residual() const;
  double middle_residual() const;
};

BoundaryIdentity boundary_identity(std::span<const int> root_weights, int flat_count,
                                   const FormVector& phi);

}  // namespace lphodge::exterior
