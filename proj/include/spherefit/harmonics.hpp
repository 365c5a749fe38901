#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "spherefit/errors.hpp"
#include "spherefit/point.hpp"

namespace spherefit {

/// Associated Legendre polynomial P_l^m(t), 0 <= m <= l, |t| <= 1.
///
/// Convention: no Condon-Shortley phase, i.e. P_1^1(t) = sqrt(1-t^2) >= 0.
/// Evaluated by the ascending three-term recurrence in l for fixed m,
/// seeded with the closed form P_m^m = (2m-1)!! (1-t^2)^(m/2). Stable for
/// degrees up to l ~ 100; beyond that the unnormalized values overflow.
inline double assoc_legendre(int ell, int m, double t) {
  if (ell < 0 || m < 0 || m > ell) {
    throw std::domain_error("assoc_legendre: need 0 <= m <= ell");
  }
  if (std::abs(t) > 1.0 + 1e-14) {
    throw std::domain_error("assoc_legendre: |t| > 1");
  }
  t = std::clamp(t, -1.0, 1.0);

  const double s = std::sqrt((1.0 - t) * (1.0 + t));
  double pmm = 1.0;  // P_m^m built as prod_{i=1..m} (2i-1) s
  for (int i = 1; i <= m; ++i) pmm *= (2.0 * i - 1.0) * s;
  if (ell == m) return pmm;

  double p_prev = pmm;
  double p_curr = t * (2.0 * m + 1.0) * pmm;  // P_{m+1}^m
  for (int l = m + 2; l <= ell; ++l) {
    const double p_next =
        (t * (2.0 * l - 1.0) * p_curr - (l + m - 1.0) * p_prev) / (l - m);
    p_prev = p_curr;
    p_curr = p_next;
  }
  return p_curr;
}

/// Fully normalized associated Legendre function
///   Pbar_l^m(t) = N_{l,m} P_l^m(t),  N_{l,m} = sqrt((2l+1)/(4pi) (l-m)!/(l+m)!).
///
/// All factorial ratios enter through incremental products inside the
/// recurrence, so intermediates stay O(1) for any degree.
inline double normalized_assoc_legendre(int ell, int m, double t) {
  if (ell < 0 || m < 0 || m > ell) {
    throw std::domain_error("normalized_assoc_legendre: need 0 <= m <= ell");
  }
  if (std::abs(t) > 1.0 + 1e-14) {
    throw std::domain_error("normalized_assoc_legendre: |t| > 1");
  }
  t = std::clamp(t, -1.0, 1.0);

  const double s = std::sqrt((1.0 - t) * (1.0 + t));
  double pmm = 1.0 / std::sqrt(four_pi);  // Pbar_0^0
  for (int i = 1; i <= m; ++i) {
    pmm *= s * std::sqrt((2.0 * i + 1.0) / (2.0 * i));
  }
  if (ell == m) return pmm;

  double p_prev = pmm;
  double p_curr = t * std::sqrt(2.0 * m + 3.0) * pmm;  // Pbar_{m+1}^m
  double a_prev = std::sqrt(2.0 * m + 3.0);
  for (int l = m + 2; l <= ell; ++l) {
    const double a = std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(m) * m));
    const double p_next = a * (t * p_curr - p_prev / a_prev);
    a_prev = a;
    p_prev = p_curr;
    p_curr = p_next;
  }
  return p_curr;
}

/// Degree/order pair identifying one real spherical harmonic.
struct HarmonicIndex {
  int ell = 0;
  int m = 0;

  bool valid() const { return ell >= 0 && m >= -ell && m <= ell; }
  bool even() const { return ell % 2 == 0; }

  friend bool operator==(const HarmonicIndex& a, const HarmonicIndex& b) {
    return a.ell == b.ell && a.m == b.m;
  }
};

/// u_{l,m} at a point of the sphere: orthonormal real spherical harmonics,
///   m > 0: sqrt(2) Pbar_l^m(cos phi) cos(m theta)
///   m = 0: Pbar_l^0(cos phi)
///   m < 0: sqrt(2) Pbar_l^|m|(cos phi) sin(|m| theta)
inline double eval_harmonic(const HarmonicIndex& idx, const SphPoint& p) {
  if (!idx.valid()) throw std::domain_error("eval_harmonic: invalid (ell, m)");
  const int am = std::abs(idx.m);
  const double pbar = normalized_assoc_legendre(idx.ell, am, p.z);
  if (idx.m == 0) return pbar;
  const double theta = p.azimuth();
  const double sqrt2 = std::numbers::sqrt2;
  return idx.m > 0 ? sqrt2 * pbar * std::cos(am * theta)
                   : sqrt2 * pbar * std::sin(am * theta);
}

/// The real spherical harmonic basis of Pi_r, dim R = (r+1)^2, with a fixed
/// ordering. Standard ordering walks l = 0..r, m = -l..l; parity ordering
/// lists all even-degree harmonics first, then all odd-degree ones.
class HarmonicBasis {
 public:
  explicit HarmonicBasis(int degree, bool parity_ordered = false)
      : degree_(degree), parity_ordered_(parity_ordered) {
    if (degree < 0) throw std::domain_error("HarmonicBasis: degree must be >= 0");
    ordering_.reserve(size());
    if (parity_ordered) {
      for (int pass = 0; pass < 2; ++pass) {
        for (int l = pass; l <= degree; l += 2) {
          for (int m = -l; m <= l; ++m) ordering_.push_back({l, m});
        }
      }
    } else {
      for (int l = 0; l <= degree; ++l) {
        for (int m = -l; m <= l; ++m) ordering_.push_back({l, m});
      }
    }
    for (int j = 0; j < size(); ++j) {
      const auto& idx = ordering_[j];
      (idx.even() ? even_positions_ : odd_positions_).push_back(j);
    }
  }

  int degree() const { return degree_; }
  int size() const { return (degree_ + 1) * (degree_ + 1); }
  bool parity_ordered() const { return parity_ordered_; }

  const std::vector<HarmonicIndex>& ordering() const { return ordering_; }
  const HarmonicIndex& at(int j) const { return ordering_.at(size_t(j)); }

  /// Positions of even-degree (resp. odd-degree) harmonics in the ordering.
  const std::vector<int>& even_positions() const { return even_positions_; }
  const std::vector<int>& odd_positions() const { return odd_positions_; }

  int num_even() const { return int(even_positions_.size()); }
  int num_odd() const { return int(odd_positions_.size()); }

  /// Position of (l, m) in the ordering; -1 if out of range.
  int position(const HarmonicIndex& idx) const {
    if (!idx.valid() || idx.ell > degree_) return -1;
    if (!parity_ordered_) return idx.ell * idx.ell + idx.ell + idx.m;
    int offset = 0;
    if (!idx.even()) {
      for (int l = 0; l <= degree_; l += 2) offset += 2 * l + 1;
      for (int l = 1; l < idx.ell; l += 2) offset += 2 * l + 1;
    } else {
      for (int l = 0; l < idx.ell; l += 2) offset += 2 * l + 1;
    }
    return offset + idx.ell + idx.m;
  }

 private:
  int degree_;
  bool parity_ordered_;
  std::vector<HarmonicIndex> ordering_;
  std::vector<int> even_positions_;
  std::vector<int> odd_positions_;
};

/// One Vandermonde row: every basis harmonic evaluated at p, in basis order.
/// Runs the ascending recurrence once per order m, so it matches per-entry
/// eval_harmonic bit for bit.
inline Eigen::VectorXd eval_basis_row(const HarmonicBasis& basis, const SphPoint& p) {
  const int r = basis.degree();
  const double t = p.z;
  const double theta = p.azimuth();
  const double sqrt2 = std::numbers::sqrt2;

  // pbar[l][m] for 0 <= m <= l <= r
  std::vector<std::vector<double>> pbar(size_t(r) + 1);
  for (int l = 0; l <= r; ++l) pbar[size_t(l)].resize(size_t(l) + 1);
  const double s = std::sqrt(std::max(0.0, (1.0 - t) * (1.0 + t)));
  double pmm = 1.0 / std::sqrt(four_pi);
  for (int m = 0; m <= r; ++m) {
    if (m > 0) pmm *= s * std::sqrt((2.0 * m + 1.0) / (2.0 * m));
    pbar[size_t(m)][size_t(m)] = pmm;
    if (m + 1 <= r) {
      double p_prev = pmm;
      double p_curr = t * std::sqrt(2.0 * m + 3.0) * pmm;
      pbar[size_t(m) + 1][size_t(m)] = p_curr;
      double a_prev = std::sqrt(2.0 * m + 3.0);
      for (int l = m + 2; l <= r; ++l) {
        const double a =
            std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(m) * m));
        const double p_next = a * (t * p_curr - p_prev / a_prev);
        a_prev = a;
        p_prev = p_curr;
        p_curr = p_next;
        pbar[size_t(l)][size_t(m)] = p_curr;
      }
    }
  }

  Eigen::VectorXd row(basis.size());
  for (int j = 0; j < basis.size(); ++j) {
    const auto& idx = basis.at(j);
    const int am = std::abs(idx.m);
    const double pb = pbar[size_t(idx.ell)][size_t(am)];
    if (idx.m == 0) {
      row[j] = pb;
    } else if (idx.m > 0) {
      row[j] = sqrt2 * pb * std::cos(am * theta);
    } else {
      row[j] = sqrt2 * pb * std::sin(am * theta);
    }
  }
  return row;
}

}  // namespace spherefit
