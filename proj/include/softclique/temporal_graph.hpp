#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

namespace softclique {

using Vertex = std::size_t;
using VertexPair = std::pair<Vertex, Vertex>;

/// Undirected, irreflexive edge set. Pairs are kept canonical (i < j).
class EdgeSet {
 public:
  EdgeSet() = default;

  /// Inserts {i, j} in either orientation. Returns false when already present.
  /// Throws std::invalid_argument on a self-loop.
  bool insert(Vertex i, Vertex j);
  bool contains(Vertex i, Vertex j) const noexcept;

  std::size_t size() const noexcept { return keys_.size(); }
  bool empty() const noexcept { return keys_.empty(); }

  /// Canonical pairs sorted lexicographically.
  std::vector<VertexPair> sorted_pairs() const;

  bool operator==(const EdgeSet& other) const { return keys_ == other.keys_; }

 private:
  static std::uint64_t key(Vertex i, Vertex j) noexcept {
    if (i > j) std::swap(i, j);
    return (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint64_t>(j);
  }

  std::unordered_set<std::uint64_t> keys_;
};

/// A vertex set observed through T edge-set samples. Vertex i is the same
/// vertex in every slice.
class TemporalGraph {
 public:
  /// Validates endpoints against n. Throws std::invalid_argument when n or T
  /// is zero, an endpoint is out of range, or labels have the wrong length.
  TemporalGraph(std::size_t n, std::vector<EdgeSet> slices,
                std::optional<std::vector<std::string>> labels = std::nullopt);

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t slice_count() const noexcept { return slices_.size(); }
  const EdgeSet& slice(std::size_t t) const { return slices_.at(t); }
  std::span<const EdgeSet> slices() const noexcept { return slices_; }
  const std::optional<std::vector<std::string>>& labels() const noexcept { return labels_; }

 private:
  std::size_t n_;
  std::vector<EdgeSet> slices_;
  std::optional<std::vector<std::string>> labels_;
};

/// Binary indicator vector over the vertex set. Ordering is lexicographic
/// with bit 0 most significant.
class Selection {
 public:
  Selection() = default;
  explicit Selection(std::size_t n) : bits_(n, 0) {}

  static Selection from_indices(std::size_t n, std::span<const Vertex> indices);
  static Selection all(std::size_t n);

  std::size_t size() const noexcept { return bits_.size(); }
  bool operator[](std::size_t i) const noexcept { return bits_[i] != 0; }
  void set(std::size_t i, bool on) { bits_.at(i) = on ? 1 : 0; }
  void flip(std::size_t i) { bits_.at(i) ^= 1; }

  std::size_t cardinality() const noexcept;
  std::vector<Vertex> indices() const;

  auto operator<=>(const Selection&) const = default;
  bool operator==(const Selection&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Parses the temporal graph JSON document
/// `{"n": int, "labels": [string]?, "slices": [{"edges": [[i,j], ...]}, ...]}`.
/// Duplicate and reversed pairs collapse into one canonical edge.
TemporalGraph load_temporal_graph(const nlohmann::json& doc);

/// Emits edges sorted lexicographically with i < j.
nlohmann::json to_json(const TemporalGraph& g);

/// Pairs present in every slice.
EdgeSet intersection_edges(const TemporalGraph& g);

/// Relabels vertex v as perm[v] in every slice. perm must be a permutation of [0, n).
TemporalGraph permute(const TemporalGraph& g, std::span<const Vertex> perm);

/// True when every pair of selected vertices is an edge of `edges`.
bool is_clique(const Selection& x, const EdgeSet& edges);

}  // namespace softclique
