#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spherefit/errors.hpp"
#include "spherefit/harmonics.hpp"
#include "spherefit/nodes.hpp"
#include "spherefit/selection.hpp"
#include "spherefit/solver.hpp"
#include "spherefit/vandermonde.hpp"

namespace spherefit {

/// A scalar field on the sphere with a short id for tables and CLI flags.
struct TestFunction {
  std::string id;
  std::function<double(const SphPoint&)> eval;

  double operator()(const SphPoint& p) const { return eval(p); }

  Eigen::VectorXd sample(const NodeSet& X) const {
    Eigen::VectorXd v(X.size());
    for (int i = 0; i < X.size(); ++i) v[i] = eval(X[i]);
    return v;
  }
};

/// The four built-in benchmark fields f1..f4.
inline TestFunction test_function(const std::string& id) {
  if (id == "f1") {
    return {"f1", [](const SphPoint& p) { return std::exp(p.x * p.z); }};
  }
  if (id == "f2") {
    return {"f2", [](const SphPoint& p) {
              return std::sin(3.0 * p.x) + 0.5 * std::cos(2.0 * p.y * p.z);
            }};
  }
  if (id == "f3") {
    return {"f3", [](const SphPoint& p) {
              return 1.0 / (3.0 + p.x * p.x + 2.0 * p.y * p.y + 4.0 * p.z * p.z);
            }};
  }
  if (id == "f4") {
    return {"f4", [](const SphPoint& p) {
              const double a = p.x + 1.5, b = p.y + 1.5, c = p.z + 1.5;
              return 1.0 / (a * a + b * b + c * c);
            }};
  }
  throw std::invalid_argument("test_function: unknown id '" + id + "' (expected f1..f4)");
}

inline std::vector<TestFunction> builtin_test_functions() {
  return {test_function("f1"), test_function("f2"), test_function("f3"), test_function("f4")};
}

/// Sup-norm error of a fit on a Fibonacci validation grid.
struct ErrorReport {
  double e_inf = 0;
  int grid_size = 0;
  std::vector<double> per_point;  // |f(y_i) - p_hat(y_i)| in grid order
};

inline ErrorReport uniform_error(const FitResult& fit, const TestFunction& f, int L) {
  if (L < 1) throw std::invalid_argument("uniform_error: grid size must be >= 1");
  const NodeSet grid = fibonacci_grid(L);
  const Eigen::VectorXd approx = evaluate_fit(fit, grid);
  ErrorReport rep;
  rep.grid_size = L;
  rep.per_point.resize(size_t(L));
  for (int i = 0; i < L; ++i) {
    rep.per_point[size_t(i)] = std::abs(f(grid[i]) - approx[i]);
    rep.e_inf = std::max(rep.e_inf, rep.per_point[size_t(i)]);
  }
  return rep;
}

/// One fitted cell of the degree-validation sweep.
struct ValidationCell {
  std::string function_id;
  int family = 0;
  double e_inf = std::numeric_limits<double>::infinity();
  bool failed = false;
  std::string failure;
};

struct DegreeValidation {
  int r_star = -1;                 // -1 when every degree failed everywhere
  std::vector<int> degrees;        // ascending
  std::vector<double> totals;      // E(r) per degree; +inf when a cell failed
  std::vector<std::vector<ValidationCell>> cells;  // per degree
  int grid_size = 0;
};

/// Validation-based choice of the reconstruction degree: for every candidate
/// r, complete each base family, select an interpolation subset with the
/// antipodal strategy, fit every test function, and accumulate
/// E(r) = sum of sup-norm errors. Returns the argmin, ties to the smaller
/// degree. A failed cell poisons its degree with +inf and is flagged.
/// An empty selection (no admissible degree m) degrades the cell to an
/// unconstrained least-squares fit, matching the empty-subset contract.
inline DegreeValidation validate_degree(const std::vector<TestFunction>& functions,
                                        const std::vector<NodeSet>& base_families,
                                        std::vector<int> candidate_degrees,
                                        int grid_size = 0) {
  if (functions.empty() || base_families.empty() || candidate_degrees.empty()) {
    throw std::invalid_argument("validate_degree: functions, families and degrees "
                                "must all be nonempty");
  }
  std::sort(candidate_degrees.begin(), candidate_degrees.end());
  candidate_degrees.erase(
      std::unique(candidate_degrees.begin(), candidate_degrees.end()),
      candidate_degrees.end());

  DegreeValidation out;
  out.degrees = candidate_degrees;
  if (grid_size <= 0) {
    int biggest = 0;
    for (const NodeSet& X : base_families) biggest = std::max(biggest, 2 * X.size());
    grid_size = 4 * biggest;
  }
  out.grid_size = grid_size;

  for (int r : candidate_degrees) {
    std::vector<ValidationCell> row;
    double total = 0.0;
    for (size_t j = 0; j < base_families.size(); ++j) {
      // Selection and completion are shared by all functions on this family.
      NodeSet completed;
      std::vector<int> constraint_rows;
      bool family_ok = true;
      std::string family_error;
      try {
        completed = antipodal_complete(base_families[j]);
        const SelectionResult sel = antipodal_select(base_families[j], r);
        const int n = base_families[j].size();
        for (int b : sel.base_indices) {
          constraint_rows.push_back(b);      // the base point
          constraint_rows.push_back(n + b);  // its antipode
        }
      } catch (const std::exception& e) {
        family_ok = false;
        family_error = e.what();
      }

      for (const TestFunction& f : functions) {
        ValidationCell cell;
        cell.function_id = f.id;
        cell.family = int(j);
        if (!family_ok) {
          cell.failed = true;
          cell.failure = family_error;
        } else {
          try {
            FitProblem problem{assemble(completed, HarmonicBasis(r, true)),
                               constraint_rows, f.sample(completed), SolveOptions{}};
            const FitResult fit = solve(problem);
            cell.e_inf = uniform_error(fit, f, grid_size).e_inf;
            cell.failed = false;
          } catch (const std::exception& e) {
            cell.failed = true;
            cell.failure = e.what();
          }
        }
        total += cell.e_inf;
        row.push_back(std::move(cell));
      }
    }
    out.cells.push_back(std::move(row));
    out.totals.push_back(total);
  }

  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < out.degrees.size(); ++i) {
    if (out.totals[i] < best) {  // strict: ties keep the smaller degree
      best = out.totals[i];
      out.r_star = out.degrees[i];
    }
  }
  return out;
}

/// Coefficients of the unique degree-m interpolant on a unisolvent set of
/// exactly (m+1)^2 nodes, with one step of residual refinement.
inline Eigen::VectorXd interpolate_degree_m(const NodeSet& X_M, const Eigen::VectorXd& f) {
  const int M = X_M.size();
  const int m = int(std::lround(std::sqrt(double(M)))) - 1;
  if (m < 0 || (m + 1) * (m + 1) != M) {
    throw std::invalid_argument("interpolate_degree_m: node count " + std::to_string(M) +
                                " is not a square (m+1)^2");
  }
  if (f.size() != M) {
    throw std::invalid_argument("interpolate_degree_m: data length does not match nodes");
  }
  const VandermondeMatrix V(X_M, HarmonicBasis(m));
  if (rank_report(V).numerical_rank < M) {
    throw NotUnisolvent("interpolate_degree_m: degree-" + std::to_string(m) +
                        " Vandermonde is numerically singular on these nodes");
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(V.matrix());
  Eigen::VectorXd c = qr.solve(f);
  c += qr.solve(f - V.matrix() * c);
  return c;
}

/// Grid lower bound for the Lebesgue constant of degree-m interpolation on
/// X_M: the cardinal functions solve V^T l(y) = u(y), and the estimate is
/// the max over the Fibonacci grid of sum_j |l_j(y)|. Nondecreasing in L.
inline double lebesgue_constant(const NodeSet& X_M, int m, int L) {
  if (L < 1) throw std::invalid_argument("lebesgue_constant: grid size must be >= 1");
  const int M = X_M.size();
  if ((m + 1) * (m + 1) != M) {
    throw std::invalid_argument("lebesgue_constant: node count " + std::to_string(M) +
                                " does not equal (m+1)^2");
  }
  const HarmonicBasis basis(m);
  const VandermondeMatrix V(X_M, basis);
  if (rank_report(V).numerical_rank < M) {
    throw NotUnisolvent("lebesgue_constant: interpolation set is not unisolvent");
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(V.matrix().transpose());
  const NodeSet grid = fibonacci_grid(L);
  double lam = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    const Eigen::VectorXd card = qr.solve(eval_basis_row(basis, grid[i]));
    lam = std::max(lam, card.cwiseAbs().sum());
  }
  return lam;
}

/// The norming constant alpha_r of the discrete lower bound
///   (1/N) sum_i |p(x_i)|^2 >= alpha_r ||p||_{L2}^2:
/// with an orthonormal basis this is lambda_min(V^T V)/N = sigma_min^2/N.
/// Zero when the matrix is numerically rank-deficient.
inline double norming_constant(const VandermondeMatrix& V_N) {
  const RankReport rep = rank_report(V_N);
  if (rep.numerical_rank < V_N.cols()) return 0.0;
  return rep.sigma_min * rep.sigma_min / V_N.rows();
}

/// The constant (sqrt(4 pi) + 1/sqrt(alpha_r)) (1 + Lambda_M) multiplying
/// the best-approximation error in the L2 quasi-optimality bound.
inline double quasi_opt_prefactor(double alpha_r, double lebesgue) {
  if (!(alpha_r > 0.0)) {
    throw std::domain_error("quasi_opt_prefactor: alpha_r must be positive");
  }
  if (lebesgue < 1.0 - 1e-9) {
    throw std::domain_error("quasi_opt_prefactor: Lebesgue constant must be >= 1");
  }
  return (std::sqrt(four_pi) + 1.0 / std::sqrt(alpha_r)) * (1.0 + lebesgue);
}

/// Bundle of the quasi-optimality ingredients for one configuration.
struct QuasiOptReport {
  double lebesgue = 1;
  double norming = 0;
  double prefactor = 0;
  int grid_size = 0;
};

inline QuasiOptReport quasi_opt_report(const VandermondeMatrix& V_N, const NodeSet& X_M,
                                       int m, int L) {
  QuasiOptReport rep;
  rep.grid_size = L;
  rep.lebesgue = lebesgue_constant(X_M, m, L);
  rep.norming = norming_constant(V_N);
  rep.prefactor = quasi_opt_prefactor(rep.norming, rep.lebesgue);
  return rep;
}

/// Certificate of the Pythagorean split between the fit residual and the
/// distance to the degree-m interpolant,
///   ||f - p_hat||^2 + ||p_hat - p_m||^2 = ||f - p_m||^2
/// in the discrete norm. The defect is relative to ||f - p_m||^2, except
/// when that denominator is below 1e-14: then the absolute defect is kept
/// and pass() gates it at 1e-12.
struct PythagoreanReport {
  double defect = 0;
  bool relative = true;
  double projection_defect = 0;  // residual vs. the null-space basis of V_M

  bool pass(double rel_tol = 1e-8, double abs_tol = 1e-12) const {
    return defect < (relative ? rel_tol : abs_tol);
  }
};

inline PythagoreanReport pythagorean_check(const FitProblem& problem, const FitResult& fit,
                                           const Eigen::VectorXd& pm_coeffs,
                                           const HarmonicBasis& pm_basis) {
  const Eigen::VectorXd p_hat = problem.V.matrix() * fit.coeffs;
  const Eigen::VectorXd p_m = evaluate_fit(pm_coeffs, pm_basis, problem.V.nodes());
  const double a = (problem.f - p_hat).squaredNorm();
  const double b = (p_hat - p_m).squaredNorm();
  const double d = (problem.f - p_m).squaredNorm();

  PythagoreanReport rep;
  const double raw = std::abs(a + b - d);
  if (d < 1e-14) {
    rep.relative = false;
    rep.defect = raw;
  } else {
    rep.defect = raw / d;
  }
  rep.projection_defect =
      detail::orthogonality_defect(problem.V.matrix(), problem.constraint_matrix(),
                                   problem.f, fit.coeffs, problem.options.rank_threshold);
  return rep;
}

}  // namespace spherefit
