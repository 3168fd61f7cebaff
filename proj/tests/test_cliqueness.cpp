#include <doctest.h>

#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "softclique/cliqueness.hpp"

using namespace softclique;
using nlohmann::json;

namespace {

Selection pick(std::size_t n, std::vector<Vertex> idx) { return Selection::from_indices(n, idx); }

}  // namespace

TEST_CASE("slack per slice") {
  const auto g = load_temporal_graph(json::parse(
      R"({"n":4,"slices":[{"edges":[[0,1],[0,2],[1,2]]},{"edges":[]},{"edges":[[0,1]]}]})"));
  const auto beta = slack_per_slice(pick(4, {0, 1, 2}), g);
  CHECK(beta == SlackVector{0, 3, 2});
  CHECK(slack_per_slice(Selection::all(4), g) == SlackVector{3, 6, 5});
  CHECK_THROWS_AS(slack_per_slice(Selection(3), g), std::invalid_argument);
}

TEST_CASE("missing counts") {
  const auto g = load_temporal_graph(json::parse(
      R"({"n":3,"slices":[{"edges":[[0,1],[1,2]]},{"edges":[[0,1]]},{"edges":[[0,1],[1,2]]}]})"));
  const auto c = missing_counts(g);
  CHECK(c(0, 1) == 0);
  CHECK(c(0, 2) == 3);
  CHECK(c(1, 2) == 1);
  CHECK(c(2, 1) == 1);
  CHECK(c(1, 1) == 0);
}

TEST_CASE("persistent clique predicate") {
  const auto g = load_temporal_graph(json::parse(R"({"n":3,"slices":[{"edges":[[0,1]]},{"edges":[]}]})"));
  CHECK(is_persistent_clique(Selection(3), g));
  CHECK(is_persistent_clique(pick(3, {2}), g));
  CHECK_FALSE(is_persistent_clique(pick(3, {0, 1}), g));
}

TEST_CASE("summed slack equals the count-weighted pair sum") {
  std::mt19937_64 rng(123);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 11;
    const auto g = oracle::random_graph(rng, n, 1 + trial % 5);
    const auto c = missing_counts(g);
    Selection x(n);
    for (std::size_t i = 0; i < n; ++i) x.set(i, coin(rng));
    std::int64_t lhs = 0;
    for (auto b : slack_per_slice(x, g)) lhs += b;
    std::int64_t rhs = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (x[i] && x[j]) rhs += c(i, j);
    CHECK(lhs == rhs);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) CHECK(c(i, j) == oracle::count_missing(g, i, j));

    // growing x never lowers any slack
    const auto before = slack_per_slice(x, g);
    for (std::size_t v = 0; v < n; ++v) {
      if (x[v]) continue;
      auto bigger = x;
      bigger.set(v, true);
      const auto after = slack_per_slice(bigger, g);
      for (std::size_t t = 0; t < before.size(); ++t) CHECK(after[t] >= before[t]);
    }

    const auto k = x.cardinality();
    for (auto b : before) {
      CHECK(b >= 0);
      CHECK(b <= static_cast<std::int64_t>(k * (k - (k > 0 ? 1 : 0)) / 2));
    }
  }
}

TEST_CASE("persistent cliques are exactly the cliques of the intersection graph") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 3 + trial % 6;
    const auto g = oracle::random_graph(rng, n, 1 + trial % 4, 0.6, 0.95);
    const auto common = intersection_edges(g);
    for (std::uint64_t mask = 0; mask < (1u << n); ++mask) {
      Selection x(n);
      for (std::size_t i = 0; i < n; ++i) x.set(i, (mask >> i) & 1u);
      CHECK(is_persistent_clique(x, g) == is_clique(x, common));
    }
  }
}

TEST_CASE("empty slice gives the maximal slack") {
  const auto g = load_temporal_graph(json::parse(R"({"n":5,"slices":[{"edges":[]}]})"));
  for (std::size_t k = 0; k <= 5; ++k) {
    std::vector<Vertex> idx;
    for (std::size_t i = 0; i < k; ++i) idx.push_back(i);
    CHECK(slack_per_slice(Selection::from_indices(5, idx), g)[0] == static_cast<std::int64_t>(k * (k ? k - 1 : 0) / 2));
  }
}
