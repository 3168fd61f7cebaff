#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "softclique/experiments.hpp"
#include "softclique/kernels.hpp"
#include "softclique/soft_clique.hpp"

using namespace softclique;

TEST_CASE("synthetic shapes") {
  for (auto [d, T] : {std::pair{Dataset::A, 3u}, {Dataset::B, 3u}, {Dataset::C, 5u}, {Dataset::D, 7u}}) {
    const auto [points, truth] = gen_synthetic({d, 3});
    CHECK(points.slice_count() == T);
    CHECK(points.point_count() == 18);
    CHECK(points.dimension() == 2);
    CHECK(truth.clique == std::vector<Vertex>{0, 1, 2, 3, 4, 5, 6});
  }
  CHECK(noise_schedule(Dataset::C) == std::vector<double>{10.0, 2.0, 5.0, 0.8});
  CHECK(noise_schedule(Dataset::D) == std::vector<double>{10.0, 2.0, 5.0, 0.8, 2.5, 0.5});
}

TEST_CASE("synthetic data is seeded") {
  const auto a = gen_synthetic({Dataset::B, 7}).first;
  const auto b = gen_synthetic({Dataset::B, 7}).first;
  const auto c = gen_synthetic({Dataset::B, 8}).first;
  CHECK(a == b);
  CHECK_FALSE(a == c);
  // A and B share slices 0 and 1 for one seed; only the last noise level differs
  const auto pa = gen_synthetic({Dataset::A, 7}).first;
  CHECK(pa.slice(0) == a.slice(0));
  CHECK(pa.slice(1) == a.slice(1));
}

TEST_CASE("synthetic components sit where they should") {
  // Mean of the slice-0 points per component over many seeds.
  double sums[3][2] = {};
  const int seeds = 400;
  for (int s = 0; s < seeds; ++s) {
    const auto p = gen_synthetic({Dataset::A, static_cast<std::uint64_t>(s)}).first.slice(0);
    for (std::size_t v = 0; v < 18; ++v) {
      const int c = v < 7 ? 0 : (v < 13 ? 1 : 2);
      sums[c][0] += p[v][0];
      sums[c][1] += p[v][1];
    }
  }
  const double counts[3] = {7.0 * seeds, 6.0 * seeds, 5.0 * seeds};
  CHECK(sums[0][0] / counts[0] == doctest::Approx(0.0).epsilon(0.05).scale(1.0));
  CHECK(sums[1][0] / counts[1] == doctest::Approx(-6.0).epsilon(0.02));
  CHECK(sums[1][1] / counts[1] == doctest::Approx(3.0).epsilon(0.03));
  CHECK(sums[2][0] / counts[2] == doctest::Approx(8.0).epsilon(0.02));
  CHECK(sums[2][1] / counts[2] == doctest::Approx(-3.0).epsilon(0.03));
}

TEST_CASE("normal sampler moments") {
  NormalSampler z(1);
  double s = 0.0;
  double s2 = 0.0;
  const int m = 200000;
  for (int i = 0; i < m; ++i) {
    const double v = z();
    s += v;
    s2 += v * v;
  }
  CHECK(std::abs(s / m) < 0.01);
  CHECK(std::abs(s2 / m - 1.0) < 0.01);
}

TEST_CASE("quantile") {
  CHECK(quantile({3, 1, 2}, 0.5) == 2.0);
  CHECK(quantile({1, 2, 3, 4}, 0.5) == 2.5);
  CHECK(quantile({1, 2, 3, 4}, 0.0) == 1.0);
  CHECK(quantile({1, 2, 3, 4}, 1.0) == 4.0);
  CHECK_THROWS_AS(quantile({1.0}, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(quantile({}, 0.5), std::invalid_argument);
}

TEST_CASE("edge sets from distance quantiles") {
  SUBCASE("line example") {
    const PointCloudSeries s(std::vector<PointCloud>{{{0.0}, {1.0}, {3.0}}});
    const auto g = build_edge_sets(s, 0.5);
    CHECK(g.slice(0).sorted_pairs() == std::vector<VertexPair>{{0, 1}, {1, 2}});
  }
  SUBCASE("extremes") {
    const auto points = gen_synthetic({Dataset::C, 2}).first;
    const auto full = build_edge_sets(points, 1.0);
    for (const auto& e : full.slices()) CHECK(e.size() == 18 * 17 / 2);
    const auto min = build_edge_sets(points, 0.0);
    for (const auto& e : min.slices()) CHECK(e.size() == 1);
    const PointCloudSeries tied(std::vector<PointCloud>{{{0.0}, {1.0}, {2.0}}});
    CHECK(build_edge_sets(tied, 0.0).slice(0).size() == 2);
  }
  CHECK_THROWS_AS(build_edge_sets(gen_synthetic({Dataset::A, 0}).first, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(build_edge_sets(gen_synthetic({Dataset::A, 0}).first, 1.1), std::invalid_argument);
}

TEST_CASE("jaccard") {
  const std::vector<Vertex> a{1, 2, 3};
  const std::vector<Vertex> b{2, 3, 4};
  const std::vector<Vertex> c{7, 8};
  const std::vector<Vertex> none;
  CHECK(jaccard(a, a) == 1.0);
  CHECK(jaccard(a, c) == 0.0);
  CHECK(jaccard(a, b) == 0.5);
  CHECK(jaccard(b, a) == jaccard(a, b));
  CHECK(jaccard(a, none) == 0.0);
  CHECK_THROWS_AS(jaccard(none, none), std::invalid_argument);
  CHECK(jaccard(std::vector<Vertex>{1, 2}, std::vector<Vertex>{1, 2, 3}) < 1.0);
}

TEST_CASE("hard clique on complete slices selects every vertex") {
  const auto [points, truth] = gen_synthetic({Dataset::A, 11});
  const auto graph = build_edge_sets(points, 1.0);
  const auto k = total_similarity(slice_similarities(points));
  const auto s = solve_hard(graph, k);
  CHECK(s.x == Selection::all(18));
  CHECK(jaccard(truth.clique, s.x.indices()) == doctest::Approx(7.0 / 18.0));
}

TEST_CASE("mean and sample standard deviation") {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  const auto [m, sd] = mean_and_std(v);
  CHECK(m == 2.5);
  CHECK(sd == doctest::Approx(std::sqrt(5.0 / 3.0)));
  const std::vector<double> one{0.4};
  CHECK(mean_and_std(one).second == 0.0);
}

TEST_CASE("benchmark harness") {
  BenchmarkConfig cfg;
  cfg.datasets = {Dataset::A};
  cfg.methods = {BenchMethod::hard, BenchMethod::l1};
  cfg.repeats = 1;
  cfg.q = 1.0;
  const auto report = run_benchmark(cfg);
  REQUIRE(report.summary.size() == 2);
  const auto& hard = report.row(Dataset::A, BenchMethod::hard);
  CHECK(hard.jaccard_mean == doctest::Approx(7.0 / 18.0));
  CHECK(hard.jaccard_std == 0.0);
  CHECK_FALSE(hard.std_defined);
  CHECK(report.runs.size() == 2);

  std::ostringstream csv;
  write_benchmark_csv(csv, report);
  CHECK(csv.str() ==
        "dataset,method,repeats,q,eta,jaccard_mean,jaccard_std,runtime_mean_s\n"
        "A,hard,1,1,1,0.388889,0,0\n"
        "A,l1,1,1,1,0.388889,0,0\n");

  std::ostringstream jsonl;
  write_benchmark_jsonl(jsonl, report);
  std::istringstream lines(jsonl.str());
  std::string line;
  std::getline(lines, line);
  const auto meta = nlohmann::json::parse(line);
  CHECK(meta["type"] == "meta");
  CHECK(meta["std_undefined"].size() == 2);
  int runs = 0;
  while (std::getline(lines, line)) {
    CHECK(nlohmann::json::parse(line)["type"] == "run");
    ++runs;
  }
  CHECK(runs == 2);
}

TEST_CASE("benchmark statistics are recomputable from the runs") {
  BenchmarkConfig cfg;
  cfg.datasets = {Dataset::B, Dataset::D};
  cfg.repeats = 4;
  const auto report = run_benchmark(cfg);
  for (const auto& row : report.summary) {
    std::vector<double> scores;
    for (const auto& r : report.runs)
      if (r.dataset == row.dataset && r.method == row.method) scores.push_back(r.jaccard);
    REQUIRE(scores.size() == 4);
    const auto [m, sd] = mean_and_std(scores);
    CHECK(row.jaccard_mean == m);
    CHECK(row.jaccard_std == sd);
  }
  CHECK_THROWS_AS(run_benchmark(BenchmarkConfig{.repeats = 0}), std::invalid_argument);
}
