#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "spherefit/harmonics.hpp"
#include "spherefit/nodes.hpp"

#include "oracles.hpp"

using namespace spherefit;

namespace {
const std::string data_dir = SPHEREFIT_DATA_DIR;
}

TEST_CASE("assoc_legendre base cases are exact") {
  CHECK(assoc_legendre(0, 0, 0.3) == 1.0);
  CHECK(assoc_legendre(1, 0, 0.5) == 0.5);
  CHECK(assoc_legendre(1, 0, -0.25) == -0.25);
}

TEST_CASE("assoc_legendre rejects bad arguments") {
  CHECK_THROWS_AS(assoc_legendre(2, 3, 0.0), std::domain_error);
  CHECK_THROWS_AS(assoc_legendre(-1, 0, 0.0), std::domain_error);
  CHECK_THROWS_AS(assoc_legendre(1, -1, 0.0), std::domain_error);
  CHECK_THROWS_AS(assoc_legendre(3, 1, 1.0 + 1e-12), std::domain_error);
  CHECK_NOTHROW(assoc_legendre(3, 1, 1.0 + 1e-15));  // inside the guard band
}

TEST_CASE("assoc_legendre(2,1) matches the Rodrigues oracle on random inputs") {
  auto rng = oracles::seeded_rng(101);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double t = uni(rng);
    const double got = assoc_legendre(2, 1, t);
    const double want = oracles::legendre_rodrigues(2, 1, t);
    CHECK(std::abs(got - want) < 1e-12);
  }
}

TEST_CASE("assoc_legendre matches the Rodrigues oracle up to degree 10") {
  auto rng = oracles::seeded_rng(102);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int l = 0; l <= 10; ++l) {
    for (int m = 0; m <= l; ++m) {
      for (int trial = 0; trial < 5; ++trial) {
        const double t = uni(rng);
        const double got = assoc_legendre(l, m, t);
        const double want = oracles::legendre_rodrigues(l, m, t);
        CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want)));
      }
    }
  }
}

TEST_CASE("normalized_assoc_legendre equals N_{l,m} P_l^m") {
  auto rng = oracles::seeded_rng(103);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int l = 0; l <= 10; ++l) {
    for (int m = 0; m <= l; ++m) {
      const double t = uni(rng);
      const double want = oracles::harmonic_norm_factor(l, m) * assoc_legendre(l, m, t);
      const double got = normalized_assoc_legendre(l, m, t);
      CHECK(std::abs(got - want) <= 1e-13 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("eval_harmonic closed-form spot values") {
  auto rng = oracles::seeded_rng(104);
  const SphPoint north(0.0, 0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const SphPoint p = oracles::random_point(rng);
    CHECK(eval_harmonic({0, 0}, p) == Catch::Approx(0.2820947917738781).epsilon(1e-14));
  }
  CHECK(eval_harmonic({1, 0}, north) == Catch::Approx(0.4886025119029199).epsilon(1e-14));
}

TEST_CASE("eval_harmonic parity identity") {
  auto rng = oracles::seeded_rng(105);
  for (int trial = 0; trial < 10; ++trial) {
    const SphPoint p = oracles::random_point(rng);
    const SphPoint q = p.antipode();
    for (int l = 0; l <= 10; ++l) {
      for (int m = -l; m <= l; ++m) {
        const double up = eval_harmonic({l, m}, p);
        const double uq = eval_harmonic({l, m}, q);
        const double sign = (l % 2 == 0) ? 1.0 : -1.0;
        CHECK(std::abs(uq - sign * up) <= 1e-13 * std::max(1.0, std::abs(up)));
      }
    }
  }
}

TEST_CASE("all m != 0 harmonics vanish at the poles") {
  for (const SphPoint pole : {SphPoint(0, 0, 1), SphPoint(0, 0, -1)}) {
    for (int l = 1; l <= 8; ++l) {
      for (int m = -l; m <= l; ++m) {
        if (m == 0) continue;
        CHECK(eval_harmonic({l, m}, pole) == 0.0);
      }
    }
  }
}

TEST_CASE("discrete orthonormality on the ingested 12-design") {
  const NodeSet design = load_nodes(data_dir + "/design_t12_n169.xyz");
  REQUIRE(design.size() == 169);
  // Degrees l + l' <= 12, i.e. the full degree-6 basis, must produce an
  // identity Gram matrix under the equal-weight quadrature.
  const HarmonicBasis basis(6);
  Eigen::MatrixXd V(design.size(), basis.size());
  for (int i = 0; i < design.size(); ++i) {
    V.row(i) = eval_basis_row(basis, design[i]).transpose();
  }
  const Eigen::MatrixXd gram = (four_pi / design.size()) * (V.transpose() * V);
  const Eigen::MatrixXd err =
      gram - Eigen::MatrixXd::Identity(basis.size(), basis.size());
  CHECK(err.cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("discrete orthonormality on the icosahedron up to l + l' <= 5") {
  const NodeSet ico = load_nodes(data_dir + "/icosahedron.xyz");
  REQUIRE(ico.size() == 12);
  for (int l = 0; l <= 2; ++l) {
    for (int lp = 0; lp <= 5 - l; ++lp) {
      for (int m = -l; m <= l; ++m) {
        for (int mp = -lp; mp <= lp; ++mp) {
          double sum = 0.0;
          for (const SphPoint& p : ico.points()) {
            sum += eval_harmonic({l, m}, p) * eval_harmonic({lp, mp}, p);
          }
          const double want = (l == lp && m == mp) ? 1.0 : 0.0;
          CHECK(std::abs((four_pi / 12.0) * sum - want) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("degree-space norms are rotation invariant") {
  auto rng = oracles::seeded_rng(106);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::Matrix3d Q = oracles::random_rotation(rng);
    const SphPoint p = oracles::random_point(rng);
    const SphPoint qp = oracles::rotate(Q, p);
    for (int l = 0; l <= 10; ++l) {
      double np = 0.0, nq = 0.0;
      for (int m = -l; m <= l; ++m) {
        np += std::pow(eval_harmonic({l, m}, p), 2);
        nq += std::pow(eval_harmonic({l, m}, qp), 2);
      }
      CHECK(std::abs(std::sqrt(np) - std::sqrt(nq)) < 1e-11);
    }
  }
}

TEST_CASE("HarmonicBasis ordering and parity partition") {
  for (const bool parity : {false, true}) {
    for (const int r : {0, 1, 3, 6}) {
      const HarmonicBasis basis(r, parity);
      REQUIRE(basis.size() == (r + 1) * (r + 1));
      REQUIRE(int(basis.ordering().size()) == basis.size());

      std::set<std::pair<int, int>> seen;
      for (const HarmonicIndex& idx : basis.ordering()) {
        CHECK(idx.valid());
        CHECK(idx.ell <= r);
        seen.insert({idx.ell, idx.m});
      }
      CHECK(int(seen.size()) == basis.size());  // no duplicates

      int even_want = 0, odd_want = 0;
      for (int l = 0; l <= r; ++l) ((l % 2 == 0) ? even_want : odd_want) += 2 * l + 1;
      CHECK(basis.num_even() == even_want);
      CHECK(basis.num_odd() == odd_want);
      CHECK(basis.num_even() + basis.num_odd() == basis.size());

      if (parity) {
        for (int j = 0; j < basis.num_even(); ++j) CHECK(basis.at(j).even());
        for (int j = basis.num_even(); j < basis.size(); ++j) CHECK_FALSE(basis.at(j).even());
      }
      for (int j = 0; j < basis.size(); ++j) {
        CHECK(basis.position(basis.at(j)) == j);
      }
      CHECK(basis.position({r + 1, 0}) == -1);
    }
  }
}

TEST_CASE("eval_basis_row agrees with per-entry evaluation") {
  const SphPoint north(0.0, 0.0, 1.0);

  const HarmonicBasis b0(0);
  const Eigen::VectorXd row0 = eval_basis_row(b0, north);
  REQUIRE(row0.size() == 1);
  CHECK(row0[0] == Catch::Approx(1.0 / std::sqrt(four_pi)).epsilon(1e-15));

  const HarmonicBasis b1(1);
  const Eigen::VectorXd row1 = eval_basis_row(b1, north);
  for (int j = 0; j < b1.size(); ++j) {
    const HarmonicIndex idx = b1.at(j);
    if ((idx.ell == 0 && idx.m == 0) || (idx.ell == 1 && idx.m == 0)) {
      CHECK(row1[j] != 0.0);
    } else {
      CHECK(row1[j] == 0.0);
    }
  }

  auto rng = oracles::seeded_rng(107);
  for (const bool parity : {false, true}) {
    const HarmonicBasis basis(4, parity);
    for (int trial = 0; trial < 50; ++trial) {
      const SphPoint p = oracles::random_point(rng);
      const Eigen::VectorXd row = eval_basis_row(basis, p);
      for (int j = 0; j < basis.size(); ++j) {
        CHECK(std::abs(row[j] - eval_harmonic(basis.at(j), p)) <= 1e-13);
      }
    }
  }
}
