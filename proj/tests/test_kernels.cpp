#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "oracles.hpp"
#include "softclique/kernels.hpp"

using namespace softclique;

namespace {

PointCloud line(std::initializer_list<double> xs) {
  PointCloud p;
  for (double x : xs) p.push_back({x});
  return p;
}

SimilarityMatrix from_rows(std::vector<std::vector<double>> rows) {
  SquareMatrix<double> m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  return SimilarityMatrix(std::move(m));
}

double min_eigenvalue(const SimilarityMatrix& k) {
  Eigen::MatrixXd m(k.size(), k.size());
  for (std::size_t i = 0; i < k.size(); ++i)
    for (std::size_t j = 0; j < k.size(); ++j) m(i, j) = k(i, j);
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues().minCoeff();
}

}  // namespace

TEST_CASE("median width") {
  CHECK(median_width(line({0, 1, 3})) == 4.0);
  CHECK(median_width(PointCloud{{0.0, 0.0}, {1.0, 1.0}}) == 2.0);
  // squared distances {1,1,1,4,4,9}
  CHECK(median_width(line({0, 1, 2, 3})) == 2.5);
  // distances {1,1,1,2,2,3}
  CHECK(median_width(line({0, 1, 2, 3}), DistanceMode::euclidean) == 1.5);
  CHECK_THROWS_AS(median_width(line({1})), std::invalid_argument);
  CHECK_THROWS_AS(median_width(line({2, 2, 2})), std::invalid_argument);
}

TEST_CASE("rbf similarity") {
  const auto k = rbf_similarity(line({0, 1, 3}), 4.0);
  CHECK(k(0, 0) == 1.0);
  CHECK(k(0, 1) == doctest::Approx(std::exp(-0.25)).epsilon(1e-15));
  CHECK(k(0, 2) == doctest::Approx(std::exp(-2.25)).epsilon(1e-15));
  CHECK(k(1, 2) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(rbf_similarity(line({0, 2}), 4.0)(0, 1) == doctest::Approx(0.367879).epsilon(1e-6));
  CHECK(rbf_similarity(line({5, 5}), 1.0)(0, 1) == 1.0);
  CHECK_THROWS_AS(rbf_similarity(line({0, 1}), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(rbf_similarity(line({0, 1}), -1.0), std::invalid_argument);
}

TEST_CASE("rbf entries lie in (0,1] and fall with distance") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> z;
  for (int trial = 0; trial < 20; ++trial) {
    PointCloud pts(8, Point(3));
    for (auto& p : pts)
      for (auto& c : p) c = z(rng);
    const double w = median_width(pts);
    const auto k = rbf_similarity(pts, w);
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j) {
        CHECK(k(i, j) > 0.0);
        CHECK(k(i, j) <= 1.0);
        CHECK(k(i, j) == k(j, i));
        for (std::size_t l = 0; l < 8; ++l)
          if (squared_distance(pts[i], pts[j]) < squared_distance(pts[i], pts[l])) CHECK(k(i, j) >= k(i, l));
      }
  }
}

TEST_CASE("total similarity") {
  const auto a = from_rows({{1, 0.3}, {0.3, 1}});
  const auto b = from_rows({{1, 0.5}, {0.5, 1}});
  const std::vector<SimilarityMatrix> one{a};
  CHECK(total_similarity(one) == a);
  const std::vector<SimilarityMatrix> two{a, b};
  CHECK(total_similarity(two)(0, 1) == doctest::Approx(0.8));
  const std::vector<SimilarityMatrix> copies(4, a);
  CHECK(total_similarity(copies)(0, 1) == doctest::Approx(1.2));
  CHECK(total_similarity(copies)(1, 1) == 4.0);
  CHECK_THROWS_AS(total_similarity(std::vector<SimilarityMatrix>{}), std::invalid_argument);
  const std::vector<SimilarityMatrix> mismatch{a, from_rows({{1}})};
  CHECK_THROWS_AS(total_similarity(mismatch), std::invalid_argument);
}

TEST_CASE("total similarity is permutation equivariant") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 6;
    std::vector<SimilarityMatrix> ks;
    for (int t = 0; t < 3; ++t) ks.push_back(oracle::random_similarity(rng, n));
    const auto perm = oracle::random_permutation(rng, n);
    auto permuted = [&](const SimilarityMatrix& k) {
      SquareMatrix<double> m(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(perm[i], perm[j]) = k(i, j);
      return SimilarityMatrix(std::move(m));
    };
    std::vector<SimilarityMatrix> pks;
    for (const auto& k : ks) pks.push_back(permuted(k));
    CHECK(total_similarity(pks) == permuted(total_similarity(ks)));
  }
}

TEST_CASE("set kernel") {
  SUBCASE("singleton bags reduce to the base kernel") {
    const BagDataset bags({{{0.0}}, {{2.0}}});
    CHECK(set_kernel(bags, 4.0)(0, 1) == doctest::Approx(std::exp(-1.0)));
  }
  SUBCASE("identical descriptors sum to |a||b|") {
    const BagDataset bags({{{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}}});
    CHECK(set_kernel(bags, 1.0)(0, 0) == 9.0);
  }
  SUBCASE("two-term sum") {
    const BagDataset bags({{{0.0}}, {{1.0}, {3.0}}});
    CHECK(set_kernel(bags, 1.0)(0, 1) == doctest::Approx(std::exp(-1.0) + std::exp(-9.0)).epsilon(1e-15));
  }
  CHECK_THROWS_AS(BagDataset({{{0.0}}, {}}), std::invalid_argument);
  CHECK_THROWS_AS(set_kernel(BagDataset(std::vector<std::vector<Point>>{{{0.0}}}), 0.0), std::invalid_argument);
}

TEST_CASE("set kernel is symmetric in its bags") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> z;
  std::vector<std::vector<Point>> raw(6);
  for (std::size_t b = 0; b < raw.size(); ++b)
    for (std::size_t k = 0; k < 1 + b % 4; ++k) raw[b].push_back({z(rng), z(rng)});
  const auto k = set_kernel(BagDataset(raw), 1.5);
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) CHECK(k(a, b) == k(b, a));
}

TEST_CASE("sub-polynomial transform") {
  SUBCASE("identity is a fixed point") {
    const auto id = from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(subpoly_transform(id, 0.3) == id);
  }
  SUBCASE("all ones stays all ones") {
    const auto ones = from_rows({{1, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}});
    const auto out = subpoly_transform(ones, 0.7);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) CHECK(out(i, j) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("2x2 worked example") {
    const auto out = subpoly_transform(from_rows({{4, 1}, {1, 4}}), 0.5);
    CHECK(std::abs(out(0, 0) - 1.0) <= 1e-12);
    CHECK(std::abs(out(1, 1) - 1.0) <= 1e-12);
    CHECK(std::abs(out(0, 1) - 0.8) <= 1e-12);
  }
  CHECK_THROWS_AS(subpoly_transform(from_rows({{1}}), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(subpoly_transform(from_rows({{1}}), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(subpoly_transform(from_rows({{1, 0}, {0, 0}}), 0.5), std::invalid_argument);
}

TEST_CASE("sub-polynomial output is a unit-diagonal Gram matrix") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> p_dist(0.05, 0.95);
  for (int trial = 0; trial < 20; ++trial) {
    const auto k = oracle::random_similarity(rng, 3 + trial % 8, 0.0, 5.0);
    const auto out = subpoly_transform(k, p_dist(rng));
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(std::abs(out(i, i) - 1.0) <= 1e-12);
    CHECK(min_eigenvalue(out) >= -1e-8);
  }
}

TEST_CASE("matrix JSON round-trips at full precision") {
  std::mt19937_64 rng(4);
  const auto k = oracle::random_similarity(rng, 5);
  CHECK(similarity_from_json(nlohmann::json::parse(to_json(k).dump())) == k);
  CHECK_THROWS_AS(similarity_from_json(nlohmann::json::parse(R"({"n":2,"rows":[[1,0.5],[0.4,1]]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(similarity_from_json(nlohmann::json::parse(R"({"n":2,"rows":[[1,-0.5],[-0.5,1]]})")),
                  std::invalid_argument);
}

TEST_CASE("point CSV") {
  std::istringstream in("t,vertex,coord_0,coord_1\n1,0,5,6\n0,1,3,4\n0,0,1,2\n1,1,7,8\n");
  const auto s = read_point_csv(in);
  CHECK(s.slice_count() == 2);
  CHECK(s.point_count() == 2);
  CHECK(s.slice(0)[1] == Point{3, 4});
  CHECK(s.slice(1)[0] == Point{5, 6});

  std::ostringstream out;
  write_point_csv(out, s);
  std::istringstream back(out.str());
  CHECK(read_point_csv(back) == s);

  std::istringstream missing("t,vertex,coord_0\n0,0,1\n1,1,2\n");
  CHECK_THROWS_AS(read_point_csv(missing), std::invalid_argument);
  std::istringstream dup("t,vertex,coord_0\n0,0,1\n0,0,2\n");
  CHECK_THROWS_AS(read_point_csv(dup), std::invalid_argument);
  std::istringstream header("time,vertex,coord_0\n0,0,1\n");
  CHECK_THROWS_AS(read_point_csv(header), std::invalid_argument);
}

TEST_CASE("bag CSV") {
  std::istringstream in("vertex,coord_0\n0,0\n1,1\n1,3\n");
  const auto bags = read_bag_csv(in);
  CHECK(bags.size() == 2);
  CHECK(bags.bag(1).size() == 2);
  CHECK(set_kernel(bags, 1.0)(0, 1) == doctest::Approx(std::exp(-1.0) + std::exp(-9.0)));
  std::istringstream gap("vertex,coord_0\n0,0\n2,1\n");
  CHECK_THROWS_AS(read_bag_csv(gap), std::invalid_argument);
}
