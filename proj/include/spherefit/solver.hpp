#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spherefit/errors.hpp"
#include "spherefit/harmonics.hpp"
#include "spherefit/nodes.hpp"
#include "spherefit/vandermonde.hpp"

namespace spherefit {

/// Absolute floor on sigma_min/sigma_max below which rank preconditions are
/// treated as hard failures rather than warnings.
inline constexpr double hard_rank_floor = 1e-14;

enum class SolverPath { Auto, KktDirect, Nullspace, Parity, Design };

inline const char* to_string(SolverPath p) {
  switch (p) {
    case SolverPath::Auto: return "auto";
    case SolverPath::KktDirect: return "kkt-direct";
    case SolverPath::Nullspace: return "nullspace";
    case SolverPath::Parity: return "parity";
    case SolverPath::Design: return "design";
  }
  return "?";
}

inline SolverPath solver_path_from_string(const std::string& s) {
  if (s == "auto") return SolverPath::Auto;
  if (s == "kkt-direct" || s == "kkt") return SolverPath::KktDirect;
  if (s == "nullspace") return SolverPath::Nullspace;
  if (s == "parity") return SolverPath::Parity;
  if (s == "design") return SolverPath::Design;
  throw std::invalid_argument("unknown solver path '" + s + "'");
}

struct SolveOptions {
  SolverPath path = SolverPath::Auto;
  double rank_threshold = default_rank_threshold;
  /// N/(4pi) when the nodes come with a design certificate of strength
  /// >= 2r; enables the Schur fast path that never forms V^T V.
  std::optional<double> design_alpha;
  bool compute_inertia = false;
};

/// alpha = N/(4pi), the value the Gram matrix collapses to on a design.
inline double design_alpha_for(const NodeSet& X) { return X.size() / four_pi; }

/// One constrained least-squares instance:
///   min ||V c - f||_2  subject to  (V rows in constraint_rows) c = f there.
struct FitProblem {
  VandermondeMatrix V;
  std::vector<int> constraint_rows;  // indices into the nodes, defines X_M
  Eigen::VectorXd f;                 // samples on all nodes, length N
  SolveOptions options;

  int num_constraints() const { return int(constraint_rows.size()); }

  Eigen::MatrixXd constraint_matrix() const {
    Eigen::MatrixXd B(constraint_rows.size(), V.cols());
    for (size_t k = 0; k < constraint_rows.size(); ++k) {
      B.row(Eigen::Index(k)) = V.matrix().row(constraint_rows[k]);
    }
    return B;
  }

  Eigen::VectorXd constraint_values() const {
    Eigen::VectorXd fm(constraint_rows.size());
    for (size_t k = 0; k < constraint_rows.size(); ++k) {
      fm[Eigen::Index(k)] = f[constraint_rows[k]];
    }
    return fm;
  }

  void validate() const {
    if (f.size() != V.rows()) {
      throw std::invalid_argument("FitProblem: data length " + std::to_string(f.size()) +
                                  " does not match node count " + std::to_string(V.rows()));
    }
    std::vector<int> rows = constraint_rows;
    std::sort(rows.begin(), rows.end());
    for (size_t k = 0; k < rows.size(); ++k) {
      if (rows[k] < 0 || rows[k] >= V.rows()) {
        throw std::invalid_argument("FitProblem: constraint row " + std::to_string(rows[k]) +
                                    " out of range");
      }
      if (k > 0 && rows[k] == rows[k - 1]) {
        throw std::invalid_argument("FitProblem: duplicate constraint row " +
                                    std::to_string(rows[k]));
      }
    }
  }

  /// Non-fatal shape advisories (the recommended regime is M <= R < N).
  std::vector<std::string> structural_warnings() const {
    std::vector<std::string> w;
    if (num_constraints() > V.cols()) {
      w.push_back("more constraints than basis functions (M > R)");
    }
    if (V.rows() <= V.cols()) {
      w.push_back("no oversampling (N <= R); the regression part is degenerate");
    }
    return w;
  }
};

struct Inertia {
  int n_plus = 0;
  int n_minus = 0;
  int n_zero = 0;

  friend bool operator==(const Inertia& a, const Inertia& b) {
    return a.n_plus == b.n_plus && a.n_minus == b.n_minus && a.n_zero == b.n_zero;
  }
};

struct FitResult {
  HarmonicBasis basis = HarmonicBasis(0);
  Eigen::VectorXd coeffs;        // length R, in basis ordering
  Eigen::VectorXd multipliers;   // length M, aligned with constraint_rows
  double residual_norm = 0;      // ||V c - f||_2
  double constraint_defect = 0;  // max_j |c(x_j) - f_j| over X_M
  double orthogonality_defect = 0;
  double data_inf_norm = 0;      // ||f||_inf, fixes the certificate scale
  SolverPath path_taken = SolverPath::Nullspace;
  std::optional<Inertia> inertia;
  std::vector<std::string> warnings;

  bool constraints_certified() const {
    return constraint_defect <= 1e-8 * (1.0 + data_inf_norm);
  }
  bool orthogonality_certified() const { return orthogonality_defect < 1e-8; }
};

/// The assembled symmetric saddle-point system
///   K = [V^T V, V_M^T; V_M, 0],  rhs = [V^T f; f_M].
struct KktSystem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
  std::vector<std::string> rank_warnings;  // empty when both rank conditions hold
};

inline KktSystem assemble_kkt(const FitProblem& problem) {
  problem.validate();
  const int R = problem.V.cols();
  const int M = problem.num_constraints();
  const Eigen::MatrixXd B = problem.constraint_matrix();

  KktSystem sys;
  sys.matrix = Eigen::MatrixXd::Zero(R + M, R + M);
  Eigen::MatrixXd A = problem.V.matrix().transpose() * problem.V.matrix();
  A = Eigen::MatrixXd(A.selfadjointView<Eigen::Upper>());  // exactly symmetric
  sys.matrix.topLeftCorner(R, R) = A;
  if (M > 0) {
    sys.matrix.topRightCorner(R, M) = B.transpose();
    sys.matrix.bottomLeftCorner(M, R) = B;
  }
  sys.rhs.resize(R + M);
  sys.rhs.head(R) = problem.V.matrix().transpose() * problem.f;
  sys.rhs.tail(M) = problem.constraint_values();

  const RankReport vn = rank_report(problem.V, problem.options.rank_threshold);
  if (vn.numerical_rank < R) {
    sys.rank_warnings.push_back("rank(V_N) = " + std::to_string(vn.numerical_rank) +
                                " < R = " + std::to_string(R));
  }
  if (M > 0) {
    const RankReport vm = rank_report(B, problem.options.rank_threshold);
    if (vm.numerical_rank < M) {
      sys.rank_warnings.push_back("rank(V_M) = " + std::to_string(vm.numerical_rank) +
                                  " < M = " + std::to_string(M));
    }
  }
  return sys;
}

/// Count eigenvalues of a symmetric matrix above, below, and within the
/// zero threshold 1e-10 * ||K||_2.
inline Inertia kkt_inertia(const Eigen::MatrixXd& K) {
  if (K.rows() != K.cols()) throw std::invalid_argument("kkt_inertia: matrix not square");
  const double scale = K.cwiseAbs().maxCoeff();
  if ((K - K.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + scale)) {
    throw std::invalid_argument("kkt_inertia: matrix not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double norm2 = std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1]));
  const double tol = 1e-10 * norm2;
  Inertia in;
  for (int i = 0; i < ev.size(); ++i) {
    if (ev[i] > tol) ++in.n_plus;
    else if (ev[i] < -tol) ++in.n_minus;
    else ++in.n_zero;
  }
  return in;
}

namespace detail {

/// Throws RankDeficient when a matrix that must have full rank `need` falls
/// below it even at the forgiving hard floor.
inline void require_rank_floor(const Eigen::MatrixXd& A, int need, const char* name) {
  const RankReport rep = rank_report(A, hard_rank_floor);
  if (rep.numerical_rank < need) {
    throw RankDeficient(std::string(name) + ": numerical rank " +
                        std::to_string(rep.numerical_rank) + " < " + std::to_string(need) +
                        " at the 1e-14 floor");
  }
}

struct CoreSolution {
  Eigen::VectorXd c;
  Eigen::VectorXd gamma;
};

/// Least-squares recovery of the multipliers from the first KKT block row,
///   V_M^T gamma = V^T (f - V c).
inline Eigen::VectorXd recover_multipliers(const Eigen::MatrixXd& V, const Eigen::MatrixXd& B,
                                           const Eigen::VectorXd& f, const Eigen::VectorXd& c,
                                           double rank_threshold) {
  if (B.rows() == 0) return Eigen::VectorXd(0);
  const Eigen::VectorXd g = V.transpose() * (f - V * c);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(B.transpose(),
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(rank_threshold);
  return svd.solve(g);
}

/// Null-space method for min ||V c - f|| s.t. B c = f_M on raw matrices:
/// parametrize the feasible set as c0 + Z y with Z a null-space basis of B,
/// then solve the reduced unconstrained least squares in y. Never forms
/// V^T V.
inline CoreSolution solve_nullspace(const Eigen::MatrixXd& V, const Eigen::MatrixXd& B,
                                    const Eigen::VectorXd& f, const Eigen::VectorXd& f_M,
                                    double rank_threshold) {
  const int R = int(V.cols());
  const int M = int(B.rows());
  require_rank_floor(V, R, "solve: V_N");

  CoreSolution out;
  if (M == 0) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(V, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(rank_threshold);
    out.c = svd.solve(f);
    out.gamma.resize(0);
    return out;
  }
  require_rank_floor(B, M, "solve: V_M");

  Eigen::BDCSVD<Eigen::MatrixXd> svd_b(B, Eigen::ComputeThinU | Eigen::ComputeFullV);
  svd_b.setThreshold(rank_threshold);
  const int rank_b = int(svd_b.rank());
  const Eigen::VectorXd c0 = svd_b.solve(f_M);  // min-norm feasible point

  if (rank_b >= R) {
    // Fully constrained: the feasible set is the single point c0.
    out.c = c0;
  } else {
    const Eigen::MatrixXd Z = svd_b.matrixV().rightCols(R - rank_b);
    Eigen::BDCSVD<Eigen::MatrixXd> svd_vz(V * Z, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd_vz.setThreshold(rank_threshold);
    const Eigen::VectorXd y = svd_vz.solve(f - V * c0);
    out.c = c0 + Z * y;
  }
  out.gamma = recover_multipliers(V, B, f, out.c, rank_threshold);
  return out;
}

/// Orthogonality certificate of the residual against V_{r,M}, the
/// polynomials vanishing on X_M: max over a null-space basis q of
/// |<p_hat - f, q>_{X_N}| / (||residual|| * ||q||_{X_N}). Zero residuals
/// certify trivially.
inline double orthogonality_defect(const Eigen::MatrixXd& V, const Eigen::MatrixXd& B,
                                   const Eigen::VectorXd& f, const Eigen::VectorXd& c,
                                   double rank_threshold) {
  const int R = int(V.cols());
  const Eigen::VectorXd rho = V * c - f;
  const double rnorm = rho.norm();
  if (rnorm <= 1e-14 * (1.0 + f.cwiseAbs().maxCoeff())) return 0.0;

  Eigen::MatrixXd Q;
  if (B.rows() == 0) {
    Q = Eigen::MatrixXd::Identity(R, R);  // every polynomial vanishes on an empty set
  } else {
    Eigen::BDCSVD<Eigen::MatrixXd> svd_b(B, Eigen::ComputeThinU | Eigen::ComputeFullV);
    svd_b.setThreshold(rank_threshold);
    const int rank_b = int(svd_b.rank());
    if (rank_b >= R) return 0.0;  // fully constrained, nothing to test against
    Q = svd_b.matrixV().rightCols(R - rank_b);
  }
  double defect = 0.0;
  for (int j = 0; j < Q.cols(); ++j) {
    const Eigen::VectorXd vq = V * Q.col(j);
    const double qn = vq.norm();
    if (qn <= 0.0) continue;
    defect = std::max(defect, std::abs(rho.dot(vq)) / (rnorm * qn));
  }
  return defect;
}

}  // namespace detail

inline FitResult solve(const FitProblem& problem);

/// Parity-decoupled solve for antipodally paired nodes: split the data into
/// even and odd halves f(+-x)/2, solve one reduced problem per parity on the
/// pair representatives, and concatenate the coefficient blocks.
inline FitResult solve_parity(const FitProblem& problem) {
  problem.validate();
  const NodeSet& X = problem.V.nodes();
  const HarmonicBasis& basis = problem.V.basis();
  if (!X.has_pairing()) throw NotAntipodal("solve_parity: nodes carry no antipodal pairing");
  if (!basis.parity_ordered()) {
    throw std::logic_error("solve_parity: basis is not parity-ordered");
  }
  for (int row : problem.constraint_rows) {
    const int p = X.partner(row);
    if (std::find(problem.constraint_rows.begin(), problem.constraint_rows.end(), p) ==
        problem.constraint_rows.end()) {
      throw NotAntipodal("solve_parity: constraint set is not antipodally symmetric (row " +
                         std::to_string(row) + " lacks its partner)");
    }
  }

  const int R_even = basis.num_even();
  const int R_odd = basis.num_odd();
  const Eigen::MatrixXd& V = problem.V.matrix();

  // One representative per pair, in order of first appearance.
  std::vector<int> rep;
  rep.reserve(size_t(X.size() / 2));
  for (const auto& [j, jp] : X.pairing()) rep.push_back(std::min(j, jp));
  std::sort(rep.begin(), rep.end());
  const int K = int(rep.size());

  Eigen::MatrixXd E(K, R_even), O(K, R_odd);
  Eigen::VectorXd f_even(K), f_odd(K);
  std::vector<int> rep_pos(size_t(X.size()), -1);
  for (int k = 0; k < K; ++k) {
    const int j = rep[size_t(k)];
    rep_pos[size_t(j)] = k;
    E.row(k) = V.row(j).head(R_even);
    O.row(k) = V.row(j).tail(R_odd);
    f_even[k] = 0.5 * (problem.f[j] + problem.f[X.partner(j)]);
    f_odd[k] = 0.5 * (problem.f[j] - problem.f[X.partner(j)]);
  }

  // Constrained pair representatives, each constraint pair contributing one
  // even and one odd interpolation condition.
  std::vector<int> crep;
  for (int row : problem.constraint_rows) {
    const int j = std::min(row, X.partner(row));
    if (std::find(crep.begin(), crep.end(), j) == crep.end()) crep.push_back(j);
  }
  std::sort(crep.begin(), crep.end());
  const int KM = int(crep.size());
  Eigen::MatrixXd BE(KM, R_even), BO(KM, R_odd);
  Eigen::VectorXd be(KM), bo(KM);
  for (int k = 0; k < KM; ++k) {
    const int pos = rep_pos[size_t(crep[size_t(k)])];
    BE.row(k) = E.row(pos);
    BO.row(k) = O.row(pos);
    be[k] = f_even[pos];
    bo[k] = f_odd[pos];
  }

  const double thr = problem.options.rank_threshold;
  const auto even = detail::solve_nullspace(E, BE, f_even, be, thr);
  const auto odd = detail::solve_nullspace(O, BO, f_odd, bo, thr);

  FitResult res;
  res.basis = basis;
  res.coeffs.resize(R_even + R_odd);
  res.coeffs.head(R_even) = even.c;
  res.coeffs.tail(R_odd) = odd.c;
  res.path_taken = SolverPath::Parity;
  res.data_inf_norm = problem.f.size() ? problem.f.cwiseAbs().maxCoeff() : 0.0;

  const Eigen::MatrixXd B = problem.constraint_matrix();
  res.multipliers = detail::recover_multipliers(V, B, problem.f, res.coeffs, thr);
  res.residual_norm = (V * res.coeffs - problem.f).norm();
  res.constraint_defect =
      B.rows() ? (B * res.coeffs - problem.constraint_values()).cwiseAbs().maxCoeff() : 0.0;
  res.orthogonality_defect = detail::orthogonality_defect(V, B, problem.f, res.coeffs, thr);
  res.warnings = problem.structural_warnings();
  if (problem.options.compute_inertia) {
    res.inertia = kkt_inertia(assemble_kkt(problem).matrix);
  }
  return res;
}

inline FitResult solve(const FitProblem& problem) {
  problem.validate();
  SolverPath path = problem.options.path;
  if (path == SolverPath::Auto) {
    path = problem.options.design_alpha ? SolverPath::Design : SolverPath::Nullspace;
  }
  if (path == SolverPath::Parity) return solve_parity(problem);

  const Eigen::MatrixXd& V = problem.V.matrix();
  const Eigen::MatrixXd B = problem.constraint_matrix();
  const Eigen::VectorXd f_M = problem.constraint_values();
  const int R = problem.V.cols();
  const int M = problem.num_constraints();
  const double thr = problem.options.rank_threshold;

  FitResult res;
  res.basis = problem.V.basis();
  res.path_taken = path;
  res.data_inf_norm = problem.f.size() ? problem.f.cwiseAbs().maxCoeff() : 0.0;
  res.warnings = problem.structural_warnings();

  switch (path) {
    case SolverPath::Nullspace: {
      const auto core = detail::solve_nullspace(V, B, problem.f, f_M, thr);
      res.coeffs = core.c;
      res.multipliers = core.gamma;
      break;
    }
    case SolverPath::KktDirect: {
      detail::require_rank_floor(V, R, "solve: V_N");
      if (M > 0) detail::require_rank_floor(B, M, "solve: V_M");
      KktSystem sys = assemble_kkt(problem);
      for (const auto& w : sys.rank_warnings) res.warnings.push_back(w);
      Eigen::FullPivLU<Eigen::MatrixXd> lu(sys.matrix);
      if (!lu.isInvertible()) {
        throw SingularKKT("solve: KKT matrix is singular (size " +
                          std::to_string(sys.matrix.rows()) + ")");
      }
      const Eigen::VectorXd sol = lu.solve(sys.rhs);
      res.coeffs = sol.head(R);
      res.multipliers = sol.tail(M);
      res.inertia = kkt_inertia(sys.matrix);
      break;
    }
    case SolverPath::Design: {
      if (!problem.options.design_alpha) {
        throw std::invalid_argument("solve: design path requires design_alpha");
      }
      const double alpha = *problem.options.design_alpha;
      if (!(alpha > 0.0)) throw std::invalid_argument("solve: design_alpha must be positive");
      const Eigen::VectorXd t = V.transpose() * problem.f;
      if (M == 0) {
        res.coeffs = t / alpha;
        res.multipliers.resize(0);
      } else {
        detail::require_rank_floor(B, M, "solve: V_M");
        // Schur system of the KKT equations with the Gram block frozen to
        // alpha*I: (B B^T) gamma = B t - alpha f_M, then back-substitution.
        const Eigen::MatrixXd S = B * B.transpose();
        Eigen::LLT<Eigen::MatrixXd> llt(S);
        if (llt.info() != Eigen::Success) {
          throw SingularKKT("solve: Cholesky of V_M V_M^T failed on the design path");
        }
        res.multipliers = llt.solve(B * t - alpha * f_M);
        res.coeffs = (t - B.transpose() * res.multipliers) / alpha;
      }
      break;
    }
    default:
      throw std::logic_error("solve: unreachable path");
  }

  res.residual_norm = (V * res.coeffs - problem.f).norm();
  res.constraint_defect =
      M > 0 ? (B * res.coeffs - f_M).cwiseAbs().maxCoeff() : 0.0;
  res.orthogonality_defect = detail::orthogonality_defect(V, B, problem.f, res.coeffs, thr);
  if (problem.options.compute_inertia && !res.inertia) {
    res.inertia = kkt_inertia(assemble_kkt(problem).matrix);
  }
  return res;
}

/// Standalone form of the residual-orthogonality certificate of a computed
/// fit; the same value solve() stores in orthogonality_defect.
inline double certify_orthogonality(const FitProblem& problem, const FitResult& result) {
  return detail::orthogonality_defect(problem.V.matrix(), problem.constraint_matrix(),
                                      problem.f, result.coeffs,
                                      problem.options.rank_threshold);
}

/// Closed-form spectrum of the design-case KKT matrix K = [alpha I, B^T; B, 0]
/// next to its numerically computed one.
struct SpectrumReport {
  double alpha = 0;
  Eigen::VectorXd mu;            // eigenvalues of S = (1/alpha) B B^T, nonincreasing
  Eigen::VectorXd lambda_plus;   // (alpha + sqrt(alpha^2 + 4 alpha mu_j)) / 2
  Eigen::VectorXd lambda_minus;  // (alpha - sqrt(alpha^2 + 4 alpha mu_j)) / 2
  int alpha_multiplicity = 0;    // R - M copies of alpha in the spectrum
  Eigen::VectorXd singular_values;      // all R + M, nonincreasing, from the formulas
  Eigen::VectorXd eigenvalues_numeric;  // from the assembled K, ascending
  double kappa2_formula = 0;
  double kappa2_numeric = 0;
};

inline SpectrumReport design_spectrum(double alpha, const Eigen::MatrixXd& V_M) {
  if (!(alpha > 0.0)) throw std::invalid_argument("design_spectrum: alpha must be positive");
  const int M = int(V_M.rows());
  const int R = int(V_M.cols());
  if (M == 0 || M > R) {
    throw std::invalid_argument("design_spectrum: need 1 <= M <= R");
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(V_M);
  const Eigen::VectorXd sigma = svd.singularValues();
  if (detail::rank_report_from_sigma(sigma, M, R, default_rank_threshold).numerical_rank < M) {
    throw RankDeficient("design_spectrum: rank(V_M) < M");
  }

  SpectrumReport rep;
  rep.alpha = alpha;
  rep.alpha_multiplicity = R - M;
  rep.mu = sigma.array().square() / alpha;
  rep.lambda_plus.resize(M);
  rep.lambda_minus.resize(M);
  std::vector<double> svals;
  svals.reserve(size_t(R + M));
  for (int j = 0; j < M; ++j) {
    const double disc = std::sqrt(alpha * alpha + 4.0 * alpha * rep.mu[j]);
    rep.lambda_plus[j] = 0.5 * (alpha + disc);
    rep.lambda_minus[j] = 0.5 * (alpha - disc);
    const double sdisc = std::sqrt(alpha * alpha + 4.0 * sigma[j] * sigma[j]);
    svals.push_back(0.5 * (alpha + sdisc));
    svals.push_back(0.5 * (sdisc - alpha));
  }
  for (int j = 0; j < R - M; ++j) svals.push_back(alpha);
  std::sort(svals.begin(), svals.end(), std::greater<>());
  rep.singular_values =
      Eigen::Map<const Eigen::VectorXd>(svals.data(), Eigen::Index(svals.size()));

  const double s_max = sigma[0], s_min = sigma[M - 1];
  const double top = 0.5 * (alpha + std::sqrt(alpha * alpha + 4.0 * s_max * s_max));
  const double bottom =
      std::min(alpha, 0.5 * (std::sqrt(alpha * alpha + 4.0 * s_min * s_min) - alpha));
  rep.kappa2_formula = top / bottom;

  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(R + M, R + M);
  K.topLeftCorner(R, R) = alpha * Eigen::MatrixXd::Identity(R, R);
  K.topRightCorner(R, M) = V_M.transpose();
  K.bottomLeftCorner(M, R) = V_M;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K, Eigen::EigenvaluesOnly);
  rep.eigenvalues_numeric = es.eigenvalues();
  const Eigen::VectorXd abs_ev = rep.eigenvalues_numeric.cwiseAbs();
  rep.kappa2_numeric = abs_ev.maxCoeff() / abs_ev.minCoeff();
  return rep;
}

/// p_hat(y) = sum_j c_j b_j(y) at every point of Y.
inline Eigen::VectorXd evaluate_fit(const Eigen::VectorXd& coeffs, const HarmonicBasis& basis,
                                    const NodeSet& Y) {
  if (coeffs.size() != basis.size()) {
    throw std::invalid_argument("evaluate_fit: coefficient length " +
                                std::to_string(coeffs.size()) + " does not match basis size " +
                                std::to_string(basis.size()));
  }
  Eigen::VectorXd vals(Y.size());
  for (int i = 0; i < Y.size(); ++i) {
    vals[i] = eval_basis_row(basis, Y[i]).dot(coeffs);
  }
  return vals;
}

inline Eigen::VectorXd evaluate_fit(const FitResult& result, const NodeSet& Y) {
  return evaluate_fit(result.coeffs, result.basis, Y);
}

}  // namespace spherefit
