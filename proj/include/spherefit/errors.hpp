#pragma once

#include <stdexcept>
#include <string>

namespace spherefit {

/// A point and its antipode both occur in a set that must be half-symmetric.
struct AntipodalCollision : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Antipodal pairing metadata is required but absent or inconsistent.
struct NotAntipodal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A node file could not be parsed.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A loaded point is too far from the unit sphere to be normalized safely.
struct OffSphereError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A matrix fails the rank condition required by the operation.
struct RankDeficient : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The KKT factorization broke down.
struct SingularKKT : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The interpolation set does not determine a unique polynomial.
struct NotUnisolvent : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace spherefit
