#pragma once

#include <cstdint>
#include <vector>

#include "softclique/matrix.hpp"
#include "softclique/temporal_graph.hpp"

namespace softclique {

/// Per-slice count of pairs of selected vertices with no edge.
using SlackVector = std::vector<std::int64_t>;

/// counts(i,j) = number of slices in which (i,j) is absent; zero diagonal.
class MissingEdgeCounts {
 public:
  explicit MissingEdgeCounts(SquareMatrix<int> counts) : counts_(std::move(counts)) {}

  std::size_t size() const noexcept { return counts_.size(); }
  int operator()(std::size_t i, std::size_t j) const noexcept { return counts_(i, j); }
  const SquareMatrix<int>& values() const noexcept { return counts_; }

 private:
  SquareMatrix<int> counts_;
};

SlackVector slack_per_slice(const Selection& x, const TemporalGraph& g);
MissingEdgeCounts missing_counts(const TemporalGraph& g);
bool is_persistent_clique(const Selection& x, const TemporalGraph& g);

}  // namespace softclique
