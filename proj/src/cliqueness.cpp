#include "softclique/cliqueness.hpp"

#include <algorithm>
#include <stdexcept>

namespace softclique {

namespace {

void check_length(const Selection& x, const TemporalGraph& g) {
  if (x.size() != g.vertex_count())
    throw std::invalid_argument("selection length " + std::to_string(x.size()) + " does not match n=" +
                                std::to_string(g.vertex_count()));
}

}  // namespace

SlackVector slack_per_slice(const Selection& x, const TemporalGraph& g) {
  check_length(x, g);
  const auto members = x.indices();
  SlackVector beta(g.slice_count(), 0);
  for (std::size_t t = 0; t < g.slice_count(); ++t) {
    const auto& edges = g.slice(t);
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b)
        if (!edges.contains(members[a], members[b])) ++beta[t];
  }
  return beta;
}

MissingEdgeCounts missing_counts(const TemporalGraph& g) {
  const auto n = g.vertex_count();
  const int T = static_cast<int>(g.slice_count());
  SquareMatrix<int> present(n, 0);
  for (const auto& s : g.slices())
    for (const auto& [i, j] : s.sorted_pairs()) ++present(i, j);
  SquareMatrix<int> counts(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) counts.set_symmetric(i, j, T - present(i, j));
  return MissingEdgeCounts(std::move(counts));
}

bool is_persistent_clique(const Selection& x, const TemporalGraph& g) {
  const auto beta = slack_per_slice(x, g);
  return std::all_of(beta.begin(), beta.end(), [](auto b) { return b == 0; });
}

}  // namespace softclique
