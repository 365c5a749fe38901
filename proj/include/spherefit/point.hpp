#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spherefit {

inline constexpr double four_pi = 4.0 * std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// A point on the unit sphere. The constructor normalizes, so x*x+y*y+z*z
/// is 1 to machine precision for any nonzero input.
struct SphPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  SphPoint() = default;

  SphPoint(double px, double py, double pz) {
    const double n2 = px * px + py * py + pz * pz;
    if (!(n2 > 0.0) || !std::isfinite(n2)) {
      throw std::domain_error("SphPoint: cannot normalize zero or non-finite vector");
    }
    // Keep already-unit vectors verbatim so normalization is idempotent and
    // saved coordinates reload bit-exactly; dividing by a norm within an ulp
    // of 1 would only churn the last bits.
    if (std::abs(n2 - 1.0) < 1e-13) {
      x = px;
      y = py;
      z = pz;
    } else {
      const double n = std::sqrt(n2);
      x = px / n;
      y = py / n;
      z = pz / n;
    }
  }

  /// Polar angle from +z, in [0, pi].
  double polar() const { return std::acos(std::clamp(z, -1.0, 1.0)); }

  /// Azimuth from +x, in [0, 2*pi). Defined as 0 at the poles.
  double azimuth() const {
    if (x == 0.0 && y == 0.0) return 0.0;
    const double t = std::atan2(y, x);
    return t < 0.0 ? t + two_pi : t;
  }

  static SphPoint from_spherical(double polar, double azimuth) {
    const double s = std::sin(polar);
    return SphPoint(s * std::cos(azimuth), s * std::sin(azimuth), std::cos(polar));
  }

  SphPoint antipode() const {
    SphPoint p;
    p.x = -x;
    p.y = -y;
    p.z = -z;
    return p;
  }

  friend SphPoint operator-(const SphPoint& p) { return p.antipode(); }

  friend double dot(const SphPoint& a, const SphPoint& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
  }

  friend double distance(const SphPoint& a, const SphPoint& b) {
    const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
  }
};

}  // namespace spherefit
