#pragma once

#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spherefit/errors.hpp"
#include "spherefit/harmonics.hpp"
#include "spherefit/nodes.hpp"

namespace spherefit {

/// Default relative singular-value cutoff for numerical rank decisions.
inline constexpr double default_rank_threshold = 1e-10;

/// Dense N x R matrix of basis evaluations at the nodes, with the nodes and
/// basis kept alongside and the singular values cached on first use.
class VandermondeMatrix {
 public:
  VandermondeMatrix(NodeSet nodes, HarmonicBasis basis)
      : nodes_(std::move(nodes)), basis_(std::move(basis)),
        matrix_(nodes_.size(), basis_.size()) {
    if (nodes_.empty()) throw std::invalid_argument("VandermondeMatrix: empty node set");
    for (int i = 0; i < nodes_.size(); ++i) {
      matrix_.row(i) = eval_basis_row(basis_, nodes_[i]).transpose();
    }
  }

  int rows() const { return int(matrix_.rows()); }
  int cols() const { return int(matrix_.cols()); }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  const NodeSet& nodes() const { return nodes_; }
  const HarmonicBasis& basis() const { return basis_; }

  /// Singular values, nonincreasing; computed once, lazily, thread-safely.
  const Eigen::VectorXd& singular_values() const {
    std::call_once(cache_->flag, [this] {
      cache_->sigma = Eigen::BDCSVD<Eigen::MatrixXd>(matrix_).singularValues();
    });
    return cache_->sigma;
  }

  /// Columns of the even-degree (resp. odd-degree) harmonics. Only
  /// meaningful as a contiguous block under parity ordering.
  Eigen::MatrixXd::ConstColsBlockXpr even_block() const {
    require_parity_ordered("even_block");
    return matrix_.leftCols(basis_.num_even());
  }
  Eigen::MatrixXd::ConstColsBlockXpr odd_block() const {
    require_parity_ordered("odd_block");
    return matrix_.rightCols(basis_.num_odd());
  }

 private:
  void require_parity_ordered(const char* who) const {
    if (!basis_.parity_ordered()) {
      throw std::logic_error(std::string(who) + ": basis is not parity-ordered");
    }
  }

  struct SvdCache {
    std::once_flag flag;
    Eigen::VectorXd sigma;
  };

  NodeSet nodes_;
  HarmonicBasis basis_;
  Eigen::MatrixXd matrix_;
  std::shared_ptr<SvdCache> cache_ = std::make_shared<SvdCache>();
};

inline VandermondeMatrix assemble(const NodeSet& X, const HarmonicBasis& basis) {
  return VandermondeMatrix(X, basis);
}

/// Numerical rank of a matrix at a relative singular-value threshold.
/// condition_number is sigma_max / sigma_rank, infinite when the matrix
/// fails to reach rank min(rows, cols).
struct RankReport {
  int numerical_rank = 0;
  double sigma_max = 0;
  double sigma_min = 0;  // smallest singular value overall, accepted or not
  double rel_threshold = default_rank_threshold;
  double condition_number = std::numeric_limits<double>::infinity();

  bool full_rank(int rows, int cols) const {
    return numerical_rank == std::min(rows, cols);
  }
};

namespace detail {

inline RankReport rank_report_from_sigma(const Eigen::VectorXd& sigma, int rows, int cols,
                                         double rel_threshold) {
  RankReport rep;
  rep.rel_threshold = rel_threshold;
  if (sigma.size() == 0) return rep;
  rep.sigma_max = sigma[0];
  rep.sigma_min = sigma[sigma.size() - 1];
  if (rep.sigma_max > 0.0) {
    const double cut = rel_threshold * rep.sigma_max;
    while (rep.numerical_rank < sigma.size() && sigma[rep.numerical_rank] >= cut) {
      ++rep.numerical_rank;
    }
  }
  if (rep.numerical_rank == std::min(rows, cols) && rep.numerical_rank > 0) {
    rep.condition_number = rep.sigma_max / sigma[rep.numerical_rank - 1];
  }
  return rep;
}

}  // namespace detail

inline RankReport rank_report(const VandermondeMatrix& V,
                              double rel_threshold = default_rank_threshold) {
  return detail::rank_report_from_sigma(V.singular_values(), V.rows(), V.cols(),
                                        rel_threshold);
}

inline RankReport rank_report(const Eigen::MatrixXd& A,
                              double rel_threshold = default_rank_threshold) {
  const Eigen::VectorXd sigma = Eigen::BDCSVD<Eigen::MatrixXd>(A).singularValues();
  return detail::rank_report_from_sigma(sigma, int(A.rows()), int(A.cols()), rel_threshold);
}

/// The discrete inner product <p, q>_{X_N} = sum_i p(x_i) q(x_i) of two
/// polynomials given by coefficient vectors in the basis of V.
inline double discrete_inner(const Eigen::VectorXd& p_coeffs, const Eigen::VectorXd& q_coeffs,
                             const VandermondeMatrix& V) {
  if (p_coeffs.size() != V.cols() || q_coeffs.size() != V.cols()) {
    throw std::invalid_argument("discrete_inner: coefficient length must equal " +
                                std::to_string(V.cols()));
  }
  return (V.matrix() * p_coeffs).dot(V.matrix() * q_coeffs);
}

/// Singular values of the even and odd blocks of an antipodal, parity-ordered
/// Vandermonde matrix, plus the condition number recovered from them:
///   kappa2(V) = max(block maxima) / min(block minima).
struct ParitySplit {
  Eigen::VectorXd even;  // singular values of the N x R+ block, nonincreasing
  Eigen::VectorXd odd;   // singular values of the N x R- block, nonincreasing
  double kappa2 = std::numeric_limits<double>::infinity();
};

/// Computes the parity split and verifies, for the antipodally paired case,
/// that the block singular values and the full-matrix singular values are
/// the same multiset (they are equal in exact arithmetic because V^T V is
/// block diagonal); a disagreement beyond 1e-9 * sigma_max means the inputs
/// violate the symmetry assumptions and is reported as an error.
inline ParitySplit parity_split_spectrum(const VandermondeMatrix& V) {
  if (!V.nodes().has_pairing()) {
    throw NotAntipodal("parity_split_spectrum: nodes carry no antipodal pairing");
  }
  if (!V.basis().parity_ordered()) {
    throw std::logic_error("parity_split_spectrum: basis is not parity-ordered");
  }

  ParitySplit split;
  split.even = Eigen::BDCSVD<Eigen::MatrixXd>(V.even_block()).singularValues();
  split.odd = Eigen::BDCSVD<Eigen::MatrixXd>(V.odd_block()).singularValues();

  double block_max = 0.0;
  double block_min = std::numeric_limits<double>::infinity();
  for (const Eigen::VectorXd* s : {&split.even, &split.odd}) {
    if (s->size() == 0) continue;
    block_max = std::max(block_max, (*s)[0]);
    block_min = std::min(block_min, (*s)[s->size() - 1]);
  }
  if (block_min <= 0.0 || !(block_max > 0.0)) {
    split.kappa2 = std::numeric_limits<double>::infinity();
  } else {
    split.kappa2 = block_max / block_min;
  }

  // Multiset check: pad both sides with zeros up to R (the squared values
  // are the eigenvalues of the R x R block-diagonal normal matrix).
  const int R = V.cols();
  std::vector<double> merged;
  merged.reserve(size_t(R));
  for (const Eigen::VectorXd* s : {&split.even, &split.odd}) {
    for (int i = 0; i < s->size(); ++i) merged.push_back((*s)[i]);
  }
  merged.resize(size_t(R), 0.0);
  std::sort(merged.begin(), merged.end(), std::greater<>());
  std::vector<double> full(size_t(R), 0.0);
  const Eigen::VectorXd& sigma = V.singular_values();
  for (int i = 0; i < sigma.size() && i < R; ++i) full[size_t(i)] = sigma[i];
  const double tol = 1e-9 * (block_max > 0.0 ? block_max : 1.0);
  for (int i = 0; i < R; ++i) {
    if (std::abs(full[size_t(i)] - merged[size_t(i)]) > tol) {
      throw std::runtime_error(
          "parity_split_spectrum: block singular values disagree with the full "
          "spectrum; the node pairing or basis ordering is inconsistent");
    }
  }
  return split;
}

/// Debug dump, row-major CSV with 17 significant digits.
inline void dump_csv(const VandermondeMatrix& V, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("dump_csv: cannot open '" + path + "' for writing");
  for (int i = 0; i < V.rows(); ++i) {
    for (int j = 0; j < V.cols(); ++j) {
      if (j) out << ",";
      out << detail::format17(V.matrix()(i, j));
    }
    out << "\n";
  }
}

}  // namespace spherefit
