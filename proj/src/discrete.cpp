#include "lphodge/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <tuple>

namespace lphodge::discrete {

using Eigen::MatrixXd;
using Eigen::VectorXd;

int CochainComplex::dim(int k) const {
  if (k < 0 || k > top_degree()) return 0;
  return dims[k];
}

SparseMatrix CochainComplex::differential(int k) const {
  if (k >= 0 && k < static_cast<int>(d.size())) return d[k];
  return SparseMatrix(dim(k + 1), dim(k));
}

const VectorXd& CochainComplex::weight(int k) const {
  if (k < 0 || k > top_degree()) throw ComplexError("degree " + std::to_string(k) + " out of range");
  return weights[k];
}

void validate(const CochainComplex& c) {
  const int N = c.top_degree();
  if (N < 0) throw ComplexError("complex has no degrees");
  if (static_cast<int>(c.weights.size()) != N + 1)
    throw ComplexError("expected " + std::to_string(N + 1) + " weight vectors, got " + std::to_string(c.weights.size()));
  if (static_cast<int>(c.d.size()) != N)
    throw ComplexError("expected " + std::to_string(N) + " differentials, got " + std::to_string(c.d.size()));
  for (int k = 0; k <= N; ++k) {
    if (c.dims[k] < 0) throw ComplexError("negative dimension in degree " + std::to_string(k));
    if (c.weights[k].size() != c.dims[k])
      throw ComplexError("weights in degree " + std::to_string(k) + " have length " +
                         std::to_string(c.weights[k].size()) + ", expected " + std::to_string(c.dims[k]));
    for (int i = 0; i < c.dims[k]; ++i)
      if (!(c.weights[k][i] > 0.0) || !std::isfinite(c.weights[k][i]))
        throw ComplexError("weight W_" + std::to_string(k) + "[" + std::to_string(i) + "] is not positive");
  }
  for (int k = 0; k < N; ++k) {
    if (c.d[k].rows() != c.dims[k + 1] || c.d[k].cols() != c.dims[k]) {
      std::ostringstream os;
      os << "d_" << k << " is " << c.d[k].rows() << "x" << c.d[k].cols() << ", expected " << c.dims[k + 1]
         << "x" << c.dims[k];
      throw ComplexError(os.str());
    }
  }
  for (int k = 0; k + 1 < N; ++k) {
    const SparseMatrix dd = c.d[k + 1] * c.d[k];
    const double scale = std::max(1.0, c.d[k + 1].coeffs().cwiseAbs().sum() * c.d[k].coeffs().cwiseAbs().sum());
    for (int col = 0; col < dd.outerSize(); ++col)
      for (SparseMatrix::InnerIterator it(dd, col); it; ++it)
        if (std::abs(it.value()) > 1e-12 * scale) {
          std::ostringstream os;
          os << "d_" << k + 1 << " d_" << k << " != 0: entry (" << it.row() << ", " << it.col()
             << ") = " << it.value();
          throw ComplexError(os.str());
        }
  }
}

CochainComplex graph_complex(int vertices, const std::vector<std::pair<int, int>>& edges) {
  if (vertices < 0) throw ComplexError("vertex count must be non-negative");
  CochainComplex c;
  const int m = static_cast<int>(edges.size());
  c.dims = {vertices, m};
  std::vector<Eigen::Triplet<double>> t;
  for (int e = 0; e < m; ++e) {
    const auto [tail, head] = edges[e];
    if (tail < 0 || tail >= vertices || head < 0 || head >= vertices || tail == head)
      throw ComplexError("edge " + std::to_string(e) + " has invalid endpoints");
    t.emplace_back(e, head, 1.0);
    t.emplace_back(e, tail, -1.0);
  }
  SparseMatrix d0(m, vertices);
  d0.setFromTriplets(t.begin(), t.end());
  c.d = {d0};
  c.weights = {VectorXd::Ones(vertices), VectorXd::Ones(m)};
  return c;
}

CochainComplex cycle_graph(int m) {
  if (m < 2) throw ComplexError("cycle needs at least 2 vertices");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < m; ++i) e.emplace_back(i, (i + 1) % m);
  return graph_complex(m, e);
}

CochainComplex path_graph(int m) {
  if (m < 1) throw ComplexError("path needs at least 1 vertex");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < m; ++i) e.emplace_back(i, i + 1);
  return graph_complex(m, e);
}

namespace {

void check_cochain(const CochainComplex& c, const Cochain& x) {
  if (x.k < 0 || x.k > c.top_degree())
    throw std::invalid_argument("cochain degree " + std::to_string(x.k) + " out of range");
  if (x.coeffs.size() != c.dims[x.k])
    throw std::invalid_argument("cochain of degree " + std::to_string(x.k) + " has length " +
                                std::to_string(x.coeffs.size()) + ", expected " + std::to_string(c.dims[x.k]));
}

double inf_norm(const VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

struct Svd {
  MatrixXd U, V;
  VectorXd sigma;
  int rank = 0;
};

Svd svd_of(const MatrixXd& A, double rank_tol) {
  Svd s;
  if (A.rows() == 0 || A.cols() == 0) {
    s.U = MatrixXd::Identity(A.rows(), A.rows());
    s.V = MatrixXd::Identity(A.cols(), A.cols());
    return s;
  }
  Eigen::JacobiSVD<MatrixXd> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  s.U = svd.matrixU();
  s.V = svd.matrixV();
  s.sigma = svd.singularValues();
  const double cut = rank_tol * std::max(1.0, s.sigma.size() ? s.sigma(0) : 0.0);
  while (s.rank < s.sigma.size() && s.sigma(s.rank) > cut) ++s.rank;
  return s;
}

// Feasible set a + M x with orthonormal M; beta_offset + beta_map x recovers the primitive.
struct Reduced {
  VectorXd a;
  MatrixXd M;
  VectorXd w;
  VectorXd beta_offset;
  MatrixXd beta_map;
};

double smoothed_energy(const Reduced& r, const VectorXd& x, double p, double eps) {
  const VectorXd y = r.a + r.M * x;
  double e = 0.0;
  for (int i = 0; i < y.size(); ++i) e += r.w[i] * std::pow(y[i] * y[i] + eps * eps, 0.5 * p);
  return e;
}

double exact_energy(const VectorXd& y, const VectorXd& w, double p) {
  double e = 0.0;
  for (int i = 0; i < y.size(); ++i) e += w[i] * std::pow(std::abs(y[i]), p);
  return e;
}

struct SolveState {
  VectorXd x;
  int iterations = 0;
  bool monotone = true;
  std::vector<double> stage_energies;
};

void newton_stage(const Reduced& r, double p, double eps, const SolverConfig& cfg, SolveState& st) {
  const int m = static_cast<int>(r.M.cols());
  if (m == 0) return;
  double energy = smoothed_energy(r, st.x, p, eps);
  for (int it = 0; it < cfg.max_iter; ++it) {
    const VectorXd y = r.a + r.M * st.x;
    VectorXd d1(y.size()), d2(y.size());
    double dual_scale = 0.0;
    for (int i = 0; i < y.size(); ++i) {
      const double s = y[i] * y[i] + eps * eps;
      const double base = std::pow(s, 0.5 * p - 1.0);
      d1[i] = r.w[i] * p * y[i] * base;
      d2[i] = r.w[i] * p * base * ((p - 1.0) * y[i] * y[i] + eps * eps) / s;
      dual_scale = std::max(dual_scale, std::abs(d1[i]) / p);
    }
    const VectorXd g = r.M.transpose() * d1;
    if (inf_norm(g) <= 1e-3 * cfg.tol_grad * p * std::max(1.0, dual_scale)) break;
    const MatrixXd H = r.M.transpose() * d2.asDiagonal() * r.M;
    Eigen::LLT<MatrixXd> llt(H);
    VectorXd dx = llt.info() == Eigen::Success ? VectorXd(-llt.solve(g)) : VectorXd(-g);
    double slope = g.dot(dx);
    if (!(slope < 0.0) || !dx.allFinite()) {
      dx = -g;
      slope = g.dot(dx);
    }
    // Armijo backtracking along the Newton direction, then along -g if that fails.
    auto search = [&](const VectorXd& dir, double sl) {
      for (double t = 1.0; t > 1e-20; t *= 0.5) {
        const double e = smoothed_energy(r, st.x + t * dir, p, eps);
        if (e <= energy + 1e-4 * t * sl) return std::pair{t, e};
      }
      return std::pair{0.0, energy};
    };
    auto [t, e_new] = search(dx, slope);
    if (t == 0.0) {
      dx = -g;
      std::tie(t, e_new) = search(dx, -g.squaredNorm());
    }
    if (t == 0.0) break;  // no representable decrease left
    if (e_new > energy) st.monotone = false;
    st.x += t * dx;
    ++st.iterations;
    const double dec = energy - e_new;
    energy = e_new;
    if (dec <= 1e-17 * std::max(1.0, energy) && t == 1.0) break;
  }
}

HodgeResult run(const Reduced& r, const SolverConfig& cfg, const VectorXd& start) {
  cfg.validate();
  const double p = cfg.p;
  if (start.size() != r.M.cols())
    throw std::invalid_argument("start vector has length " + std::to_string(start.size()) + ", expected " +
                                std::to_string(r.M.cols()));
  SolveState st;
  st.x = start;
  double prev_smoothed = smoothed_energy(r, st.x, p, cfg.eps_start);
  for (double eps = cfg.eps_start;; eps = std::max(cfg.eps_end, eps * cfg.eps_factor)) {
    const double entering = smoothed_energy(r, st.x, p, eps);
    if (entering > prev_smoothed * (1.0 + 1e-14)) st.monotone = false;
    newton_stage(r, p, eps, cfg, st);
    prev_smoothed = smoothed_energy(r, st.x, p, eps);
    st.stage_energies.push_back(exact_energy(r.a + r.M * st.x, r.w, p));
    if (eps <= cfg.eps_end) break;
  }

  HodgeResult out;
  const VectorXd y = r.a + r.M * st.x;
  out.energy = exact_energy(y, r.w, p);
  out.iterations = st.iterations;
  out.energy_monotone = st.monotone;
  out.stage_energies = st.stage_energies;
  const std::size_t s = st.stage_energies.size();
  if (s >= 2)
    out.stage_gap = std::abs(st.stage_energies[s - 1] - st.stage_energies[s - 2]) /
                    std::max(1.0, std::abs(st.stage_energies[s - 1]));
  const VectorXd dual = r.w.cwiseProduct(duality_map(y, p));
  out.el_residual = r.M.cols() == 0 ? 0.0 : inf_norm(r.M.transpose() * dual) / std::max(1.0, inf_norm(dual));
  out.converged = out.el_residual <= cfg.tol_grad;
  out.h.coeffs = y;
  if (r.beta_map.size() || r.beta_offset.size()) {
    Cochain b;
    b.coeffs = r.beta_offset + r.beta_map * st.x;
    out.primitive = b;
  }
  return out;
}

Reduced reduce_primitive(const CochainComplex& c, const Cochain& z, double rank_tol) {
  validate(c);
  check_cochain(c, z);
  if (z.k == 0) throw NotExactError("a degree-0 cochain has no primitive");
  const MatrixXd D = MatrixXd(c.differential(z.k - 1));
  const Svd s = svd_of(D, rank_tol);
  VectorXd beta = VectorXd::Zero(D.cols());
  for (int i = 0; i < s.rank; ++i) beta += s.V.col(i) * (s.U.col(i).dot(z.coeffs) / s.sigma(i));
  const double miss = inf_norm(D * beta - z.coeffs);
  if (miss > 1e-8 * std::max(1.0, inf_norm(z.coeffs))) {
    std::ostringstream os;
    os << "z is not exact: least-squares residual " << miss;
    throw NotExactError(os.str());
  }
  Reduced r;
  r.a = beta;
  r.M = s.V.rightCols(D.cols() - s.rank);
  r.w = c.weights[z.k - 1];
  return r;
}

Reduced reduce_representative(const CochainComplex& c, const Cochain& z, double rank_tol) {
  validate(c);
  check_cochain(c, z);
  if (z.k < c.top_degree()) {
    const SparseMatrix dk = c.differential(z.k);
    const double miss = inf_norm(dk * z.coeffs);
    const double scale = std::max(1.0, inf_norm(z.coeffs) * (dk.nonZeros() ? dk.coeffs().cwiseAbs().maxCoeff() : 0.0));
    if (miss > 1e-10 * scale) {
      std::ostringstream os;
      os << "z is not closed: |dz| = " << miss;
      throw NotClosedError(os.str());
    }
  }
  const MatrixXd D = MatrixXd(c.differential(z.k - 1));
  const Svd s = svd_of(D, rank_tol);
  const MatrixXd Ur = s.U.leftCols(s.rank);
  Reduced r;
  const VectorXd coords = Ur.transpose() * z.coeffs;
  r.a = z.coeffs - Ur * coords;
  // Roundoff left over when z is (nearly) exact is below the rank tolerance; clear it.
  const double floor = 1e-13 * std::max(1.0, inf_norm(z.coeffs));
  for (int i = 0; i < r.a.size(); ++i)
    if (std::abs(r.a[i]) <= floor) r.a[i] = 0.0;
  r.M = Ur;
  r.w = c.weights[z.k];
  // z - d beta = a + Ur x  =>  beta = V_r Sigma^{-1} (Ur^T z - x).
  r.beta_offset = VectorXd::Zero(D.cols());
  r.beta_map = MatrixXd::Zero(D.cols(), s.rank);
  for (int i = 0; i < s.rank; ++i) {
    r.beta_offset += s.V.col(i) * (coords[i] / s.sigma(i));
    r.beta_map.col(i) = -s.V.col(i) / s.sigma(i);
  }
  return r;
}

double dstar_residual(const CochainComplex& c, const Cochain& h, double p) {
  if (h.k == 0) return 0.0;
  Cochain f{h.k, duality_map(h.coeffs, p)};
  return inf_norm(dstar_apply(c, f).coeffs);
}

HodgeResult finish_primitive(const CochainComplex& c, const Cochain& z, const SolverConfig& cfg, HodgeResult out) {
  out.h.k = z.k - 1;
  out.primitive.reset();
  out.constraint_residual = inf_norm(d_apply(c, out.h).coeffs - z.coeffs);
  out.dstar_residual = dstar_residual(c, out.h, cfg.p);
  return out;
}

HodgeResult finish_representative(const CochainComplex& c, const Cochain& z, const SolverConfig& cfg,
                                  HodgeResult out) {
  out.h.k = z.k;
  if (out.primitive) out.primitive->k = z.k - 1;
  if (z.k == 0) out.primitive.reset();
  out.constraint_residual = z.k < c.top_degree() ? inf_norm(d_apply(c, out.h).coeffs) : 0.0;
  out.dstar_residual = dstar_residual(c, out.h, cfg.p);
  return out;
}

}  // namespace

double lp_norm(const VectorXd& c, double p, const VectorXd& w) {
  if (!(p >= 1.0)) throw std::invalid_argument("p must be at least 1");
  if (c.size() != w.size()) throw std::invalid_argument("cochain and weight lengths differ");
  return std::pow(exact_energy(c, w, p), 1.0 / p);
}

double lp_norm(const CochainComplex& complex, const Cochain& c, double p) {
  check_cochain(complex, c);
  return lp_norm(c.coeffs, p, complex.weights[c.k]);
}

double weighted_inner(const CochainComplex& complex, const Cochain& a, const Cochain& b) {
  check_cochain(complex, a);
  check_cochain(complex, b);
  if (a.k != b.k) throw std::invalid_argument("inner product of cochains of different degree");
  return (a.coeffs.cwiseProduct(complex.weights[a.k])).dot(b.coeffs);
}

Cochain d_apply(const CochainComplex& complex, const Cochain& c) {
  check_cochain(complex, c);
  if (c.k == complex.top_degree()) throw std::invalid_argument("d of a top-degree cochain");
  return Cochain{c.k + 1, complex.differential(c.k) * c.coeffs};
}

Cochain dstar_apply(const CochainComplex& complex, const Cochain& c) {
  check_cochain(complex, c);
  if (c.k == 0) throw std::invalid_argument("d* of a degree-0 cochain");
  const VectorXd v = complex.differential(c.k - 1).transpose() * complex.weights[c.k].cwiseProduct(c.coeffs);
  return Cochain{c.k - 1, v.cwiseQuotient(complex.weights[c.k - 1])};
}

VectorXd duality_map(const VectorXd& x, double p) {
  VectorXd out(x.size());
  for (int i = 0; i < x.size(); ++i) out[i] = x[i] == 0.0 ? 0.0 : std::pow(std::abs(x[i]), p - 2.0) * x[i];
  return out;
}

void SolverConfig::validate() const {
  if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("solver needs finite p > 1");
  if (!(tol_grad > 0.0) || !(tol_uniq > 0.0)) throw std::invalid_argument("tolerances must be positive");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be positive");
  if (!(eps_start >= eps_end) || !(eps_end > 0.0) || !(eps_factor > 0.0 && eps_factor < 1.0))
    throw std::invalid_argument("smoothing schedule needs eps_start >= eps_end > 0 and 0 < factor < 1");
}

HodgeResult pcoclosed_primitive_from(const CochainComplex& complex, const Cochain& z, const SolverConfig& config,
                                     const VectorXd& start) {
  config.validate();
  const Reduced r = reduce_primitive(complex, z, config.rank_tol);
  return finish_primitive(complex, z, config, run(r, config, start));
}

HodgeResult pcoclosed_primitive(const CochainComplex& complex, const Cochain& z, const SolverConfig& config) {
  config.validate();
  const Reduced r = reduce_primitive(complex, z, config.rank_tol);
  return finish_primitive(complex, z, config, run(r, config, VectorXd::Zero(r.M.cols())));
}

HodgeResult pharmonic_representative_from(const CochainComplex& complex, const Cochain& z,
                                          const SolverConfig& config, const VectorXd& start) {
  config.validate();
  const Reduced r = reduce_representative(complex, z, config.rank_tol);
  return finish_representative(complex, z, config, run(r, config, start));
}

HodgeResult pharmonic_representative(const CochainComplex& complex, const Cochain& z,
                                     const SolverConfig& config) {
  config.validate();
  const Reduced r = reduce_representative(complex, z, config.rank_tol);
  return finish_representative(complex, z, config, run(r, config, VectorXd::Zero(r.M.cols())));
}

int primitive_freedom(const CochainComplex& complex, int k, double rank_tol) {
  if (k < 1) return 0;
  const MatrixXd D = MatrixXd(complex.differential(k - 1));
  return static_cast<int>(D.cols()) - svd_of(D, rank_tol).rank;
}

int representative_freedom(const CochainComplex& complex, int k, double rank_tol) {
  return svd_of(MatrixXd(complex.differential(k - 1)), rank_tol).rank;
}

UniquenessReport uniqueness_probe(const CochainComplex& complex, const Cochain& z, Problem problem,
                                  const SolverConfig& config, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("uniqueness probe needs at least one trial");
  const int m = problem == Problem::Primitive ? primitive_freedom(complex, z.k, config.rank_tol)
                                              : representative_freedom(complex, z.k, config.rank_tol);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double spread = 1.0 + inf_norm(z.coeffs);
  std::vector<VectorXd> sols;
  for (int t = 0; t < trials; ++t) {
    VectorXd start(m);
    for (int i = 0; i < m; ++i) start[i] = spread * gauss(rng);
    const HodgeResult r = problem == Problem::Primitive ? pcoclosed_primitive_from(complex, z, config, start)
                                                        : pharmonic_representative_from(complex, z, config, start);
    sols.push_back(r.h.coeffs);
  }
  UniquenessReport rep;
  rep.trials = trials;
  for (std::size_t i = 0; i < sols.size(); ++i)
    for (std::size_t j = i + 1; j < sols.size(); ++j)
      rep.max_distance = std::max(rep.max_distance, inf_norm(sols[i] - sols[j]));
  rep.ok = rep.max_distance < config.tol_uniq;
  return rep;
}

Cochain p2_primitive_direct(const CochainComplex& complex, const Cochain& z) {
  validate(complex);
  check_cochain(complex, z);
  if (z.k == 0) throw NotExactError("a degree-0 cochain has no primitive");
  const VectorXd s = complex.weights[z.k - 1].cwiseSqrt().cwiseInverse();
  const MatrixXd A = MatrixXd(complex.differential(z.k - 1)) * s.asDiagonal();
  Eigen::CompleteOrthogonalDecomposition<MatrixXd> cod(A);
  cod.setThreshold(1e-10);
  return Cochain{z.k - 1, s.cwiseProduct(cod.solve(z.coeffs))};
}

Cochain p2_representative_direct(const CochainComplex& complex, const Cochain& z) {
  validate(complex);
  check_cochain(complex, z);
  if (z.k == 0) return z;
  const VectorXd s = complex.weights[z.k].cwiseSqrt();
  const MatrixXd D = MatrixXd(complex.differential(z.k - 1));
  Eigen::CompleteOrthogonalDecomposition<MatrixXd> cod(s.asDiagonal() * D);
  cod.setThreshold(1e-10);
  const VectorXd beta = cod.solve(s.cwiseProduct(z.coeffs));
  return Cochain{z.k, z.coeffs - D * beta};
}

DualityCheck duality_map_check(const CochainComplex& complex, const Cochain& h, double p, double tol,
                               double tol_dstar) {
  check_cochain(complex, h);
  if (!(p > 1.0)) throw std::invalid_argument("p must exceed 1");
  const double q = p / (p - 1.0);
  const VectorXd f = duality_map(h.coeffs, p);
  DualityCheck out;
  if (h.k > 0) out.dstar_residual = inf_norm(dstar_apply(complex, Cochain{h.k, f}).coeffs) / std::max(1.0, inf_norm(f));
  out.roundtrip = inf_norm(duality_map(f, q) - h.coeffs) / std::max(1.0, inf_norm(h.coeffs));
  out.norm_h = exact_energy(h.coeffs, complex.weights[h.k], p);
  out.norm_f = exact_energy(f, complex.weights[h.k], q);
  const double norm_gap = std::abs(out.norm_h - out.norm_f) / std::max(1.0, out.norm_h);
  out.ok = out.dstar_residual <= tol_dstar && out.roundtrip <= tol && norm_gap <= tol;
  return out;
}

CohomologyCheck torsion_is_zero(const CochainComplex& complex, int k, double rank_tol) {
  validate(complex);
  if (k < 0 || k > complex.top_degree()) throw std::invalid_argument("degree out of range");
  const MatrixXd dk = MatrixXd(complex.differential(k));
  const MatrixXd dprev = MatrixXd(complex.differential(k - 1));
  CohomologyCheck out;
  out.dim_kernel = complex.dims[k] - svd_of(dk, rank_tol).rank;
  out.rank_previous = svd_of(dprev, rank_tol).rank;
  out.dim_cohomology = out.dim_kernel - out.rank_previous;
  MatrixXd stacked(dk.rows() + dprev.cols(), complex.dims[k]);
  stacked << dk, dprev.transpose() * complex.weights[k].asDiagonal();
  out.dim_harmonic = complex.dims[k] - svd_of(stacked, rank_tol).rank;
  out.ok = out.dim_harmonic == out.dim_cohomology;
  return out;
}

}  // namespace lphodge::discrete
