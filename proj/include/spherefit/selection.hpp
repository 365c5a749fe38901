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

/// Reduced pair matrices of an antipodal candidate set: row j of
/// reduced_even (resp. reduced_odd) holds the even-degree (resp. odd-degree)
/// harmonics at the base point x_j. The selection loop keeps both at full
/// row rank |J|.
struct PairSystem {
  std::vector<int> J;  // indices into the base (pre-completion) node list
  Eigen::MatrixXd reduced_even;
  Eigen::MatrixXd reduced_odd;
  double sigma_min_even = 0;
  double sigma_min_odd = 0;
};

/// Admissibility of an antipodal pair system: the rank of the stacked
/// 2K x R matrix [[V+ V-], [V+ -V-]] splits as rank(V+) + rank(V-), so it
/// reaches 2K exactly when both reduced blocks have full row rank. A value
/// below 2K flags an inadmissible pair (e.g. one whose odd row vanishes).
inline bool pair_rank_additivity_check(const PairSystem& sys,
                                       double rel_threshold = default_rank_threshold) {
  const int K = int(sys.reduced_even.rows());
  const int Rp = int(sys.reduced_even.cols());
  const int Rm = int(sys.reduced_odd.cols());
  if (sys.reduced_odd.rows() != K) {
    throw std::invalid_argument("pair_rank_additivity_check: row count mismatch");
  }
  if (K == 0) return true;
  Eigen::MatrixXd full(2 * K, Rp + Rm);
  full.topLeftCorner(K, Rp) = sys.reduced_even;
  full.topRightCorner(K, Rm) = sys.reduced_odd;
  full.bottomLeftCorner(K, Rp) = sys.reduced_even;
  full.bottomRightCorner(K, Rm) = -sys.reduced_odd;
  return rank_report(full, rel_threshold).numerical_rank == 2 * K;
}

struct SelectionStep {
  enum class Action { Added, Removed };
  Action action = Action::Added;
  int index = -1;  // base index the step acted on
  double sigma_min_even = 0;  // of the reduced matrices after the step
  double sigma_min_odd = 0;
};

struct SelectionResult {
  NodeSet subset;            // the final antipodal X_M, possibly empty
  std::optional<int> m;      // |subset| = (m+1)^2 when engaged
  std::vector<int> base_indices;  // pair representatives J_M, ascending
  std::vector<SelectionStep> history;
  std::optional<RankReport> rank_certificate;  // of the degree-r matrix on subset
  int k_max = 0;             // pairs reachable in the growth stage
  bool additivity_ok = true; // rank additivity held at every recorded step
};

struct AntipodalSelectOptions {
  double rank_threshold = default_rank_threshold;
  /// Two candidate scores within this margin count as a tie; the lowest
  /// base index wins.
  double tie_tolerance = 1e-12;
  /// When positive, only the `candidate_cap` candidates of largest row norm
  /// are scored per step (a cheap screen for large N). 0 scores everything.
  int candidate_cap = 0;
  /// Re-verify pair rank additivity after every accepted step.
  bool verify_additivity = true;
};

namespace detail {

/// sigma_min of a matrix with more columns than rows (full SVD not needed).
inline double sigma_min_of(const Eigen::MatrixXd& A) {
  return Eigen::BDCSVD<Eigen::MatrixXd>(A).singularValues().minCoeff();
}

}  // namespace detail

/// Constructive antipodal strategy. Stage one grows a set J of antipodal
/// pairs greedily: a candidate is admissible when appending its row raises
/// the row rank of both reduced pair matrices, and among admissible
/// candidates the one maximizing min(sigma_min_even, sigma_min_odd) after
/// the append wins. Stage two fixes the largest interpolation degree m with
/// (m+1)^2 even, (m+1)^2 <= 2|J| and m < r (so m is odd), then removes
/// pairs one at a time, again keeping the min-sigma objective as large as
/// possible, until (m+1)^2 / 2 pairs remain. Returns the empty set when no
/// such m exists.
inline SelectionResult antipodal_select(const NodeSet& X_base, int r,
                                        const AntipodalSelectOptions& options = {}) {
  if (r < 0) throw std::invalid_argument("antipodal_select: degree must be >= 0");
  // Validates the X cap (-X) = empty precondition (throws AntipodalCollision).
  (void)antipodal_complete(X_base);
  const int n = X_base.size();

  const HarmonicBasis basis(r, /*parity_ordered=*/true);
  const int Rp = basis.num_even();
  const int Rm = basis.num_odd();
  Eigen::MatrixXd even_rows(n, Rp), odd_rows(n, Rm);
  for (int j = 0; j < n; ++j) {
    const Eigen::VectorXd row = eval_basis_row(basis, X_base[j]);
    even_rows.row(j) = row.head(Rp);
    odd_rows.row(j) = row.tail(Rm);
  }

  SelectionResult result;
  const double thr = options.rank_threshold;

  auto stack = [](const Eigen::MatrixXd& src, const std::vector<int>& rows) {
    Eigen::MatrixXd out(rows.size(), src.cols());
    for (size_t k = 0; k < rows.size(); ++k) out.row(Eigen::Index(k)) = src.row(rows[k]);
    return out;
  };
  auto record = [&](SelectionStep::Action action, int index, const std::vector<int>& J) {
    PairSystem sys{J, stack(even_rows, J), stack(odd_rows, J), 0, 0};
    sys.sigma_min_even = detail::sigma_min_of(sys.reduced_even);
    sys.sigma_min_odd = detail::sigma_min_of(sys.reduced_odd);
    result.history.push_back({action, index, sys.sigma_min_even, sys.sigma_min_odd});
    if (options.verify_additivity && !pair_rank_additivity_check(sys, thr)) {
      result.additivity_ok = false;
    }
  };

  // Stage one: greedy growth.
  std::vector<int> J;
  const int K_limit = std::min(Rp, Rm);
  while (int(J.size()) < K_limit) {
    std::vector<int> pool;
    for (int j = 0; j < n; ++j) {
      if (std::find(J.begin(), J.end(), j) == J.end()) pool.push_back(j);
    }
    if (options.candidate_cap > 0 && int(pool.size()) > options.candidate_cap) {
      std::stable_sort(pool.begin(), pool.end(), [&](int a, int b) {
        const double na = even_rows.row(a).squaredNorm() + odd_rows.row(a).squaredNorm();
        const double nb = even_rows.row(b).squaredNorm() + odd_rows.row(b).squaredNorm();
        return na > nb;
      });
      pool.resize(size_t(options.candidate_cap));
      std::sort(pool.begin(), pool.end());
    }

    int best = -1;
    double best_score = -std::numeric_limits<double>::infinity();
    const int k_new = int(J.size()) + 1;
    for (int j : pool) {
      std::vector<int> trial = J;
      trial.push_back(j);
      const Eigen::MatrixXd E = stack(even_rows, trial);
      const Eigen::MatrixXd O = stack(odd_rows, trial);
      const RankReport re = rank_report(E, thr);
      const RankReport ro = rank_report(O, thr);
      if (re.numerical_rank != k_new || ro.numerical_rank != k_new) continue;
      const double score = std::min(re.sigma_min, ro.sigma_min);
      if (score > best_score + options.tie_tolerance) {
        best_score = score;
        best = j;
      }
    }
    if (best < 0) break;  // no admissible pair remains
    J.push_back(best);
    record(SelectionStep::Action::Added, best, J);
  }

  result.k_max = int(J.size());
  const int M_max = 2 * result.k_max;

  // Stage two: pick m = max{s : (s+1)^2 <= M_max, s < r, (s+1)^2 even}.
  int m = -1;
  for (int s = 0; s < r; ++s) {
    const int card = (s + 1) * (s + 1);
    if (card <= M_max && card % 2 == 0) m = s;
  }
  if (m < 0) {
    return result;  // S empty: subset stays empty, history documents stage one
  }
  const int K_target = (m + 1) * (m + 1) / 2;

  while (int(J.size()) > K_target) {
    int best_pos = -1;
    double best_score = -std::numeric_limits<double>::infinity();
    // Scan removals in ascending base-index order so ties drop the lowest.
    std::vector<size_t> order(J.size());
    for (size_t p = 0; p < J.size(); ++p) order[p] = p;
    std::sort(order.begin(), order.end(), [&J](size_t a, size_t b) { return J[a] < J[b]; });
    for (size_t p : order) {
      std::vector<int> trial;
      trial.reserve(J.size() - 1);
      for (size_t q = 0; q < J.size(); ++q) {
        if (q != p) trial.push_back(J[q]);
      }
      const Eigen::MatrixXd E = stack(even_rows, trial);
      const Eigen::MatrixXd O = stack(odd_rows, trial);
      const RankReport re = rank_report(E, thr);
      const RankReport ro = rank_report(O, thr);
      // Row subsets of a full-row-rank matrix stay full rank; the check
      // guards the numerical threshold rather than exact-arithmetic rank.
      if (re.numerical_rank != int(trial.size()) || ro.numerical_rank != int(trial.size())) {
        continue;
      }
      const double score = std::min(re.sigma_min, ro.sigma_min);
      if (score > best_score + options.tie_tolerance) {
        best_score = score;
        best_pos = int(p);
      }
    }
    if (best_pos < 0) {
      throw RankDeficient("antipodal_select: no rank-preserving pair removal exists");
    }
    const int removed = J[size_t(best_pos)];
    J.erase(J.begin() + best_pos);
    record(SelectionStep::Action::Removed, removed, J);
  }

  std::sort(J.begin(), J.end());
  result.base_indices = J;
  result.m = m;

  std::vector<SphPoint> pts;
  std::vector<std::pair<int, int>> pairing;
  pts.reserve(J.size() * 2);
  for (size_t k = 0; k < J.size(); ++k) {
    pts.push_back(X_base[J[k]]);
    pts.push_back(X_base[J[k]].antipode());
    pairing.emplace_back(int(2 * k), int(2 * k + 1));
  }
  result.subset = NodeSet(std::move(pts), std::move(pairing),
                          X_base.label().empty() ? "selected" : X_base.label() + "+selected");
  result.rank_certificate = rank_report(assemble(result.subset, basis), thr);
  return result;
}

/// Approximate Fekete rows: greedy volume maximization via a column-pivoted
/// orthogonal factorization of V^T. Returns the first M pivot rows, in
/// pivot order. V should be the degree-m Vandermonde when the subset is
/// meant to be unisolvent for Pi_m.
inline std::vector<int> approximate_fekete(const Eigen::MatrixXd& V, int M) {
  if (M < 0) throw std::invalid_argument("approximate_fekete: M must be >= 0");
  const RankReport rep = rank_report(V);
  if (M > rep.numerical_rank) {
    throw RankDeficient("approximate_fekete: requested " + std::to_string(M) +
                        " rows but rank(V) = " + std::to_string(rep.numerical_rank));
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(V.transpose());
  const auto& perm = qr.colsPermutation().indices();
  std::vector<int> rows;
  rows.reserve(size_t(M));
  for (int k = 0; k < M; ++k) rows.push_back(int(perm[k]));
  return rows;
}

inline std::vector<int> approximate_fekete(const VandermondeMatrix& V, int M) {
  return approximate_fekete(V.matrix(), M);
}

}  // namespace spherefit
