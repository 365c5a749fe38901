#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "spherefit/nodes.hpp"
#include "spherefit/vandermonde.hpp"

#include "oracles.hpp"

using namespace spherefit;

namespace {
const std::string data_dir = SPHEREFIT_DATA_DIR;
}

TEST_CASE("1x1 basis matrix is the constant harmonic") {
  const VandermondeMatrix V(NodeSet({SphPoint(0, 0, 1)}), HarmonicBasis(0));
  REQUIRE(V.rows() == 1);
  REQUIRE(V.cols() == 1);
  CHECK(std::abs(V.matrix()(0, 0) - 1.0 / std::sqrt(four_pi)) < 1e-16);
}

TEST_CASE("entries match pointwise harmonic evaluation") {
  const NodeSet X = random_nodes(20, 13);
  const HarmonicBasis basis(4);
  const VandermondeMatrix V(X, basis);
  for (int i = 0; i < V.rows(); ++i) {
    for (int j = 0; j < V.cols(); ++j) {
      const double direct = eval_harmonic(basis.at(j), X[i]);
      CHECK(std::abs(V.matrix()(i, j) - direct) < 1e-13);
    }
  }
}

TEST_CASE("icosahedron Gram matrix is a multiple of the identity") {
  const NodeSet ico = load_nodes(data_dir + "/icosahedron.xyz");
  const VandermondeMatrix V(ico, HarmonicBasis(2));
  const Eigen::MatrixXd gram = V.matrix().transpose() * V.matrix();
  const double alpha = ico.size() / four_pi;
  CHECK((gram - alpha * Eigen::MatrixXd::Identity(9, 9)).cwiseAbs().maxCoeff() < 1e-12);

  const RankReport rep = rank_report(V);
  CHECK(rep.numerical_rank == 9);
  CHECK(rep.full_rank(V.rows(), V.cols()));
  CHECK(std::abs(rep.condition_number - 1.0) < 1e-12);
}

TEST_CASE("equatorial nodes lose the z-dependent directions") {
  std::vector<SphPoint> pts;
  for (int k = 0; k < 4; ++k) {
    const double th = two_pi * k / 4.0;
    pts.emplace_back(std::cos(th), std::sin(th), 0.0);
  }
  const VandermondeMatrix V(NodeSet(pts), HarmonicBasis(1));
  const RankReport rep = rank_report(V);
  CHECK(rep.numerical_rank <= 3);
  CHECK_FALSE(rep.full_rank(V.rows(), V.cols()));
}

TEST_CASE("rank_report on short-and-wide matrices") {
  const NodeSet X = random_nodes(5, 99);
  const VandermondeMatrix V(X, HarmonicBasis(3));  // 5 x 16
  const RankReport rep = rank_report(V);
  CHECK(rep.numerical_rank == 5);
  CHECK(rep.full_rank(V.rows(), V.cols()));
  CHECK(std::isfinite(rep.condition_number));
}

TEST_CASE("rank is monotone under row addition") {
  const HarmonicBasis basis(3);
  NodeSet grown = random_nodes(3, 5);
  int prev_rank = rank_report(VandermondeMatrix(grown, basis)).numerical_rank;
  const NodeSet extra = random_nodes(20, 6);
  for (int i = 0; i < extra.size(); ++i) {
    std::vector<SphPoint> pts = grown.points();
    pts.push_back(extra[i]);
    grown = NodeSet(pts);
    const int r = rank_report(VandermondeMatrix(grown, basis)).numerical_rank;
    CHECK(r >= prev_rank);
    CHECK(r <= prev_rank + 1);
    prev_rank = r;
  }
  CHECK(prev_rank == basis.size());
}

TEST_CASE("discrete_inner matches the design quadrature weight") {
  const NodeSet ico = load_nodes(data_dir + "/icosahedron.xyz");
  const VandermondeMatrix V(ico, HarmonicBasis(2));
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(9);
  e1(1) = 1.0;
  CHECK(std::abs(discrete_inner(e1, e1, V) - 12.0 / four_pi) < 1e-12);
  CHECK(std::abs(discrete_inner(e1, e1, V) - 0.954929658551372) < 1e-12);

  Eigen::VectorXd e0 = Eigen::VectorXd::Zero(9);
  e0(0) = 1.0;
  CHECK(std::abs(discrete_inner(e0, e1, V)) < 1e-13);

  CHECK(discrete_inner(Eigen::VectorXd::Zero(9), e1, V) == 0.0);
  CHECK_THROWS_AS(discrete_inner(Eigen::VectorXd::Zero(4), e1, V),
                  std::invalid_argument);
}

TEST_CASE("even and odd blocks are orthogonal on paired nodes") {
  const NodeSet done = antipodal_complete(random_nodes(15, 21));
  const VandermondeMatrix V(done, HarmonicBasis(4, /*parity_order=*/true));
  const Eigen::MatrixXd cross =
      Eigen::MatrixXd(V.even_block()).transpose() * Eigen::MatrixXd(V.odd_block());
  const double sigma_max = V.singular_values()(0);
  CHECK(cross.cwiseAbs().maxCoeff() < 1e-12 * sigma_max * sigma_max);
}

TEST_CASE("parity blocks require parity ordering") {
  const NodeSet done = antipodal_complete(random_nodes(8, 22));
  const VandermondeMatrix V(done, HarmonicBasis(3));
  CHECK_THROWS_AS(V.even_block(), std::logic_error);
  CHECK_THROWS_AS(V.odd_block(), std::logic_error);
}

TEST_CASE("parity_split_spectrum matches the direct SVD") {
  const NodeSet done = antipodal_complete(random_nodes(30, 31));
  const HarmonicBasis basis(5, /*parity_order=*/true);
  const VandermondeMatrix V(done, basis);
  const ParitySplit split = parity_split_spectrum(V);
  REQUIRE(split.even.size() == basis.num_even());
  REQUIRE(split.odd.size() == basis.num_odd());

  const RankReport full = rank_report(V);
  const double sigma_max = std::max(split.even(0), split.odd(0));
  CHECK(std::abs(sigma_max - full.sigma_max) < 1e-9 * full.sigma_max);

  // kappa2 from the block extremes agrees with the full matrix.
  CHECK(std::abs(split.kappa2 - full.condition_number) <
        1e-9 * full.condition_number);
}

TEST_CASE("parity_split_spectrum rejects unpaired or misordered input") {
  const NodeSet done = antipodal_complete(random_nodes(10, 33));
  const NodeSet stripped(done.points());
  CHECK_THROWS_AS(parity_split_spectrum(VandermondeMatrix(
                      stripped, HarmonicBasis(3, /*parity_order=*/true))),
                  NotAntipodal);
  CHECK_THROWS_AS(parity_split_spectrum(VandermondeMatrix(done, HarmonicBasis(3))),
                  std::logic_error);
}

TEST_CASE("dump_csv emits one row per node") {
  const NodeSet X = random_nodes(4, 44);
  const VandermondeMatrix V(X, HarmonicBasis(1));
  const auto path = std::filesystem::temp_directory_path() / "spherefit_vdm.csv";
  dump_csv(V, path.string());
  std::ifstream in(path);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 3);
  }
  CHECK(rows == 4);
  std::filesystem::remove(path);
}
