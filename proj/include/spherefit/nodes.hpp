#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "spherefit/errors.hpp"
#include "spherefit/harmonics.hpp"
#include "spherefit/point.hpp"

namespace spherefit {

/// Euclidean tolerance below which two nodes count as the same point, and
/// below which a sum x + y counts as an antipodal pair. Overridable per call.
inline constexpr double node_collision_tol = 1e-10;

/// An ordered set of nodes on the sphere, immutable after construction.
///
/// The optional pairing is a list of index pairs (j, j') asserting
/// points[j'] == -points[j]; when present it must cover every index exactly
/// once. Construction rejects duplicate points (closer than 1e-12) and
/// pairing claims that are off by more than 1e-12.
class NodeSet {
 public:
  NodeSet() = default;

  explicit NodeSet(std::vector<SphPoint> points, std::string label = {})
      : points_(std::move(points)), label_(std::move(label)) {
    check_duplicates();
  }

  NodeSet(std::vector<SphPoint> points, std::vector<std::pair<int, int>> pairing,
          std::string label = {})
      : points_(std::move(points)), pairing_(std::move(pairing)),
        label_(std::move(label)), has_pairing_(true) {
    check_duplicates();
    check_pairing();
  }

  int size() const { return int(points_.size()); }
  bool empty() const { return points_.empty(); }
  const SphPoint& operator[](int i) const { return points_.at(size_t(i)); }
  const std::vector<SphPoint>& points() const { return points_; }
  const std::string& label() const { return label_; }

  bool has_pairing() const { return has_pairing_; }
  const std::vector<std::pair<int, int>>& pairing() const {
    if (!has_pairing_) throw NotAntipodal("NodeSet '" + label_ + "' carries no pairing");
    return pairing_;
  }

  /// Index of the antipodal partner of node i (requires pairing).
  int partner(int i) const {
    build_partner_map();
    return partner_.at(size_t(i));
  }

  /// New set with the given rows, in the given order; pairing is dropped
  /// (the subset need not be symmetric).
  NodeSet subset(const std::vector<int>& rows, std::string label = {}) const {
    std::vector<SphPoint> pts;
    pts.reserve(rows.size());
    for (int i : rows) pts.push_back(points_.at(size_t(i)));
    return NodeSet(std::move(pts), std::move(label));
  }

 private:
  void check_duplicates() const {
    for (size_t i = 0; i < points_.size(); ++i) {
      for (size_t j = i + 1; j < points_.size(); ++j) {
        if (distance(points_[i], points_[j]) < 1e-12) {
          throw std::invalid_argument(
              "NodeSet: nodes " + std::to_string(i) + " and " + std::to_string(j) +
              " coincide within 1e-12");
        }
      }
    }
  }

  void check_pairing() const {
    const size_t n = points_.size();
    std::vector<int> seen(n, 0);
    for (const auto& [j, jp] : pairing_) {
      if (j < 0 || jp < 0 || size_t(j) >= n || size_t(jp) >= n || j == jp) {
        throw NotAntipodal("NodeSet: pairing index out of range");
      }
      seen[size_t(j)] += 1;
      seen[size_t(jp)] += 1;
      const SphPoint &a = points_[size_t(j)], &b = points_[size_t(jp)];
      const double dx = a.x + b.x, dy = a.y + b.y, dz = a.z + b.z;
      if (std::sqrt(dx * dx + dy * dy + dz * dz) > 1e-12) {
        throw NotAntipodal("NodeSet: claimed pair (" + std::to_string(j) + ", " +
                           std::to_string(jp) + ") does not sum to zero");
      }
    }
    for (size_t i = 0; i < n; ++i) {
      if (seen[i] != 1) {
        throw NotAntipodal("NodeSet: pairing must cover every index exactly once");
      }
    }
  }

  void build_partner_map() const {
    if (!has_pairing_) throw NotAntipodal("NodeSet '" + label_ + "' carries no pairing");
    if (!partner_.empty()) return;
    partner_.assign(points_.size(), -1);
    for (const auto& [j, jp] : pairing_) {
      partner_[size_t(j)] = jp;
      partner_[size_t(jp)] = j;
    }
  }

  std::vector<SphPoint> points_;
  std::vector<std::pair<int, int>> pairing_;
  std::string label_;
  bool has_pairing_ = false;
  mutable std::vector<int> partner_;
};

/// X union (-X) with full pairing metadata: the originals keep their indices
/// 0..N-1 and the antipode of node i lands at index N+i. Rejects input that
/// already contains an antipodal pair (within tol), and input that already
/// carries pairing metadata, so completion is never silently applied twice.
inline NodeSet antipodal_complete(const NodeSet& X, double tol = node_collision_tol) {
  if (X.empty()) throw std::invalid_argument("antipodal_complete: empty input");
  if (X.has_pairing()) {
    throw AntipodalCollision("antipodal_complete: input is already antipodally paired");
  }
  const int n = X.size();
  for (int i = 0; i < n; ++i) {
    const SphPoint anti = X[i].antipode();
    for (int j = 0; j < n; ++j) {
      if (distance(X[j], anti) < tol) {
        throw AntipodalCollision("antipodal_complete: node " + std::to_string(j) +
                                 " is the antipode of node " + std::to_string(i));
      }
    }
  }
  std::vector<SphPoint> pts;
  pts.reserve(size_t(2 * n));
  for (int i = 0; i < n; ++i) pts.push_back(X[i]);
  for (int i = 0; i < n; ++i) pts.push_back(X[i].antipode());
  std::vector<std::pair<int, int>> pairing;
  pairing.reserve(size_t(n));
  for (int i = 0; i < n; ++i) pairing.emplace_back(i, n + i);
  return NodeSet(std::move(pts), std::move(pairing),
                 X.label().empty() ? "antipodal" : X.label() + "+antipodal");
}

/// Reconstruct pairing metadata for a set that is antipodally symmetric in
/// content but was built or loaded without it (e.g. read back from a file).
/// Throws NotAntipodal when some node has no partner within tol.
inline NodeSet detect_pairing(const NodeSet& X, double tol = node_collision_tol) {
  const int n = X.size();
  std::vector<int> partner(size_t(n), -1);
  std::vector<std::pair<int, int>> pairing;
  for (int i = 0; i < n; ++i) {
    if (partner[size_t(i)] >= 0) continue;
    const SphPoint anti = X[i].antipode();
    int found = -1;
    for (int j = i + 1; j < n; ++j) {
      if (partner[size_t(j)] < 0 && distance(X[j], anti) < tol) {
        found = j;
        break;
      }
    }
    if (found < 0) {
      throw NotAntipodal("detect_pairing: node " + std::to_string(i) +
                         " has no antipodal partner");
    }
    partner[size_t(i)] = found;
    partner[size_t(found)] = i;
    pairing.emplace_back(i, found);
  }
  return NodeSet(X.points(), std::move(pairing), X.label());
}

/// Golden-angle Fibonacci spiral with the half-offset latitude rule
/// z_i = 1 - (2i+1)/L, so the latitudes are symmetric about the equator.
/// Deterministic in L; used as a quasi-uniform sampling/validation mesh.
inline NodeSet fibonacci_grid(int L) {
  if (L < 1) throw std::invalid_argument("fibonacci_grid: L must be >= 1");
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<SphPoint> pts;
  pts.reserve(size_t(L));
  for (int i = 0; i < L; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / L;
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double theta = std::fmod(i / golden, 1.0) * two_pi;
    pts.emplace_back(s * std::cos(theta), s * std::sin(theta), z);
  }
  return NodeSet(std::move(pts), "fibonacci-" + std::to_string(L));
}

/// L independent uniform points on the sphere. The generator consumes raw
/// mt19937_64 output mapped to 53-bit doubles, so the stream is identical
/// on every platform for a given seed.
inline NodeSet random_nodes(int L, std::uint64_t seed) {
  if (L < 1) throw std::invalid_argument("random_nodes: L must be >= 1");
  std::mt19937_64 rng(seed);
  auto unit = [&rng]() { return double(rng() >> 11) * 0x1.0p-53; };
  std::vector<SphPoint> pts;
  pts.reserve(size_t(L));
  for (int i = 0; i < L; ++i) {
    const double z = 2.0 * unit() - 1.0;
    const double theta = two_pi * unit();
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    pts.emplace_back(s * std::cos(theta), s * std::sin(theta), z);
  }
  return NodeSet(std::move(pts), "random-" + std::to_string(L));
}

enum class NodeFormat { XyzText, Csv, Json };

/// Pick a format from a path suffix: .csv, .json, anything else = xyz text.
inline NodeFormat format_from_path(const std::string& path) {
  auto ends_with = [&path](const char* suffix) {
    const std::string s(suffix);
    return path.size() >= s.size() && path.compare(path.size() - s.size(), s.size(), s) == 0;
  };
  if (ends_with(".csv")) return NodeFormat::Csv;
  if (ends_with(".json")) return NodeFormat::Json;
  return NodeFormat::XyzText;
}

namespace detail {

inline SphPoint checked_point(double x, double y, double z, const std::string& where) {
  const double n = std::sqrt(x * x + y * y + z * z);
  if (!std::isfinite(n)) throw ParseError(where + ": non-finite coordinates");
  if (std::abs(n - 1.0) > 1e-6) {
    std::ostringstream os;
    os << where << ": point (" << x << ", " << y << ", " << z
       << ") is off the unit sphere by " << std::abs(n - 1.0);
    throw OffSphereError(os.str());
  }
  return SphPoint(x, y, z);
}

inline std::string format17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

/// Read nodes from a file. xyz text is the canonical format: one "x y z" per
/// line, '#' starts a comment, blank lines are skipped. CSV expects an
/// "x,y,z" header; JSON expects an array of [x, y, z] triples. Points must
/// lie within 1e-6 of the sphere and are renormalized on load.
inline NodeSet load_nodes(const std::string& path, NodeFormat format) {
  std::ifstream in(path);
  if (!in) throw ParseError("load_nodes: cannot open '" + path + "'");
  std::vector<SphPoint> pts;

  if (format == NodeFormat::Json) {
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("load_nodes: '" + path + "': " + e.what());
    }
    if (!j.is_array()) throw ParseError("load_nodes: '" + path + "': expected a JSON array");
    for (size_t i = 0; i < j.size(); ++i) {
      const auto& row = j[i];
      if (!row.is_array() || row.size() != 3 || !row[0].is_number() ||
          !row[1].is_number() || !row[2].is_number()) {
        throw ParseError("load_nodes: '" + path + "': entry " + std::to_string(i) +
                         " is not a numeric [x, y, z] triple");
      }
      pts.push_back(detail::checked_point(row[0].get<double>(), row[1].get<double>(),
                                          row[2].get<double>(),
                                          path + ": entry " + std::to_string(i)));
    }
  } else {
    std::string line;
    int lineno = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
      ++lineno;
      if (const auto hash = line.find('#'); hash != std::string::npos) {
        line.erase(hash);
      }
      if (format == NodeFormat::Csv) {
        for (char& c : line) {
          if (c == ',') c = ' ';
        }
      }
      std::istringstream is(line);
      double x, y, z;
      if (!(is >> x)) {
        // Blank line, or the csv header once at the top.
        std::string word;
        std::istringstream rescan(line);
        if (rescan >> word) {
          if (format == NodeFormat::Csv && !saw_header && pts.empty()) {
            saw_header = true;
            continue;
          }
          throw ParseError("load_nodes: '" + path + "': line " + std::to_string(lineno) +
                           ": expected numbers, got '" + word + "'");
        }
        continue;
      }
      std::string extra;
      if (!(is >> y >> z) || (is >> extra)) {
        throw ParseError("load_nodes: '" + path + "': line " + std::to_string(lineno) +
                         ": expected exactly 3 coordinates");
      }
      pts.push_back(detail::checked_point(x, y, z, path + ": line " + std::to_string(lineno)));
    }
  }
  return NodeSet(std::move(pts), path);
}

inline NodeSet load_nodes(const std::string& path) {
  return load_nodes(path, format_from_path(path));
}

/// Write nodes with 17 significant digits, enough for an exact double
/// round-trip. The pairing, if any, is not stored in any of the formats;
/// use detect_pairing after reloading.
inline void save_nodes(const NodeSet& X, const std::string& path, NodeFormat format) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_nodes: cannot open '" + path + "' for writing");
  switch (format) {
    case NodeFormat::XyzText:
      if (!X.label().empty()) out << "# " << X.label() << "\n";
      for (const SphPoint& p : X.points()) {
        out << detail::format17(p.x) << " " << detail::format17(p.y) << " "
            << detail::format17(p.z) << "\n";
      }
      break;
    case NodeFormat::Csv:
      out << "x,y,z\n";
      for (const SphPoint& p : X.points()) {
        out << detail::format17(p.x) << "," << detail::format17(p.y) << ","
            << detail::format17(p.z) << "\n";
      }
      break;
    case NodeFormat::Json: {
      out << "[";
      for (int i = 0; i < X.size(); ++i) {
        const SphPoint& p = X[i];
        out << (i ? ",\n " : "\n ") << "[" << detail::format17(p.x) << ", "
            << detail::format17(p.y) << ", " << detail::format17(p.z) << "]";
      }
      out << "\n]\n";
      break;
    }
  }
  if (!out) throw std::runtime_error("save_nodes: write to '" + path + "' failed");
}

inline void save_nodes(const NodeSet& X, const std::string& path) {
  save_nodes(X, path, format_from_path(path));
}

/// Outcome of checking the defining quadrature property of a spherical
/// k-design on the harmonic basis.
struct DesignCertificate {
  int strength = 0;       // the k that was tested
  double max_defect = 0;  // max over 1 <= l <= k, |m| <= l of |(1/N) sum_i u_{l,m}(x_i)|

  bool certified(double tol = 1e-10) const { return max_defect < tol; }
};

/// Test whether X integrates all of Pi_k exactly under equal weights. By
/// linearity it is enough to test the basis harmonics of degrees 1..k
/// (every u_{l,m} with l >= 1 has exact integral zero, and degree 0 is
/// automatic), so the defect below is the full quadrature error.
inline DesignCertificate verify_design(const NodeSet& X, int k) {
  if (k < 1) throw std::invalid_argument("verify_design: k must be >= 1");
  if (X.empty()) throw std::invalid_argument("verify_design: empty node set");
  const HarmonicBasis basis(k);
  Eigen::VectorXd sums = Eigen::VectorXd::Zero(basis.size());
  for (const SphPoint& p : X.points()) sums += eval_basis_row(basis, p);
  double defect = 0.0;
  for (int j = 0; j < basis.size(); ++j) {
    if (basis.at(j).ell == 0) continue;
    defect = std::max(defect, std::abs(sums[j]) / X.size());
  }
  return DesignCertificate{k, defect};
}

}  // namespace spherefit
