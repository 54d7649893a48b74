#pragma once

// Finite weighted cochain complexes with L_p norms and the two convex problems
//   primitive:       minimize ||beta||_p       subject to d beta = z
//   representative:  minimize ||z - d beta||_p over beta
// solved on reduced coordinates with a smoothed, continued Newton method.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace lphodge::discrete {

using SparseMatrix = Eigen::SparseMatrix<double>;

struct CochainComplex {
  std::vector<int> dims;                  // degrees 0..N
  std::vector<SparseMatrix> d;            // d[k]: dims[k+1] x dims[k]
  std::vector<Eigen::VectorXd> weights;   // W_k, one positive weight per cell

  int top_degree() const noexcept { return static_cast<int>(dims.size()) - 1; }
  int dim(int k) const;
  /// Zero matrix of the right shape outside 0..N-1.
  SparseMatrix differential(int k) const;
  const Eigen::VectorXd& weight(int k) const;
};

class ComplexError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Checks shapes, d_{k+1} d_k = 0 (entries above 1e-12 times the scale of the product)
/// and weight positivity. Throws ComplexError naming degree and entry.
void validate(const CochainComplex& complex);

/// Oriented graph as a two-degree complex: vertices, edges (tail, head), d(e) = head - tail.
CochainComplex graph_complex(int vertices, const std::vector<std::pair<int, int>>& edges);
CochainComplex cycle_graph(int m);
CochainComplex path_graph(int m);

struct Cochain {
  int k = 0;
  Eigen::VectorXd coeffs;
};

double lp_norm(const Eigen::VectorXd& c, double p, const Eigen::VectorXd& w);
double lp_norm(const CochainComplex& complex, const Cochain& c, double p);
double weighted_inner(const CochainComplex& complex, const Cochain& a, const Cochain& b);

Cochain d_apply(const CochainComplex& complex, const Cochain& c);
/// Degree k -> k-1: W_{k-1}^{-1} d_{k-1}^T W_k.
Cochain dstar_apply(const CochainComplex& complex, const Cochain& c);

/// Pointwise |x|^{p-2} x.
Eigen::VectorXd duality_map(const Eigen::VectorXd& x, double p);

struct SolverConfig {
  double p = 2.0;
  double tol_grad = 1e-10;
  double tol_uniq = 1e-6;
  int max_iter = 200;  // Newton iterations per continuation stage
  double eps_start = 1e-2;
  double eps_end = 1e-12;
  double eps_factor = 0.1;
  double rank_tol = 1e-10;

  void validate() const;
};

struct HodgeResult {
  Cochain h;                       // minimizer: beta for the primitive problem, z - d beta* otherwise
  std::optional<Cochain> primitive;
  double energy = 0.0;             // sum_i W_i |h_i|^p
  /// Projection of W |h|^{p-2} h onto the feasible directions, relative to max(1, |W |h|^{p-2} h|).
  double el_residual = 0.0;
  /// |d*(|h|^{p-2} h)|_inf (zero when there is no lower degree).
  double dstar_residual = 0.0;
  double constraint_residual = 0.0;  // |d beta - z|_inf, or |d h|_inf
  int iterations = 0;
  bool converged = false;
  bool energy_monotone = true;       // smoothed energy never increased along accepted steps
  std::vector<double> stage_energies;  // exact energy at the end of each smoothing stage
  double stage_gap = 0.0;              // relative change across the last two stages
};

class NotExactError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class NotClosedError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// z of degree k must lie in the image of d_{k-1} (least-squares residual < 1e-8).
HodgeResult pcoclosed_primitive(const CochainComplex& complex, const Cochain& z, const SolverConfig& config);

/// z of degree k must be closed.
HodgeResult pharmonic_representative(const CochainComplex& complex, const Cochain& z,
                                     const SolverConfig& config);

/// Same solves started from the given reduced coordinates (size = feasible dimension).
HodgeResult pcoclosed_primitive_from(const CochainComplex& complex, const Cochain& z,
                                     const SolverConfig& config, const Eigen::VectorXd& start);
HodgeResult pharmonic_representative_from(const CochainComplex& complex, const Cochain& z,
                                          const SolverConfig& config, const Eigen::VectorXd& start);

/// Number of free coordinates in each problem.
int primitive_freedom(const CochainComplex& complex, int k, double rank_tol = 1e-10);
int representative_freedom(const CochainComplex& complex, int k, double rank_tol = 1e-10);

enum class Problem { Primitive, Representative };

struct UniquenessReport {
  int trials = 0;
  double max_distance = 0.0;
  bool ok = false;
};

UniquenessReport uniqueness_probe(const CochainComplex& complex, const Cochain& z, Problem problem,
                                  const SolverConfig& config, int trials, std::uint64_t seed = 7);

/// Direct weighted least squares, p = 2: beta = W^{-1/2} (d W^{-1/2})^+ z.
Cochain p2_primitive_direct(const CochainComplex& complex, const Cochain& z);
/// h = z - d beta with beta = (W^{1/2} d)^+ W^{1/2} z.
Cochain p2_representative_direct(const CochainComplex& complex, const Cochain& z);

struct DualityCheck {
  double dstar_residual = 0.0;  // |d* f|_inf relative to max(1, |f|_inf)
  double roundtrip = 0.0;       // |(|f|^{p'-2} f) - h|_inf
  double norm_h = 0.0;          // sum W |h|^p
  double norm_f = 0.0;          // sum W |f|^{p'}
  bool ok = false;
};

/// f = |h|^{p-2} h; checks d* f = 0 (to tol_dstar), the pointwise inverse map with p' and
/// the norm identity (to tol, relative).
DualityCheck duality_map_check(const CochainComplex& complex, const Cochain& h, double p, double tol = 1e-10,
                               double tol_dstar = 1e-8);

struct CohomologyCheck {
  int dim_kernel = 0;         // dim ker d_k
  int rank_previous = 0;      // rank d_{k-1}
  int dim_cohomology = 0;     // difference of the two
  int dim_harmonic = 0;       // dim(ker d_k cap ker d*_{k-1}), computed separately
  bool ok = false;            // the two counts agree
};

CohomologyCheck torsion_is_zero(const CochainComplex& complex, int k, double rank_tol = 1e-10);

}  // namespace lphodge::discrete
