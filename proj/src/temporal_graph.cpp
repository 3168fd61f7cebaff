#include "softclique/temporal_graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace softclique {

bool EdgeSet::insert(Vertex i, Vertex j) {
  if (i == j) throw std::invalid_argument("self-loop on vertex " + std::to_string(i));
  return keys_.insert(key(i, j)).second;
}

bool EdgeSet::contains(Vertex i, Vertex j) const noexcept {
  if (i == j) return false;
  return keys_.contains(key(i, j));
}

std::vector<VertexPair> EdgeSet::sorted_pairs() const {
  std::vector<std::uint64_t> keys(keys_.begin(), keys_.end());
  std::sort(keys.begin(), keys.end());
  std::vector<VertexPair> out;
  out.reserve(keys.size());
  for (auto k : keys) out.emplace_back(static_cast<Vertex>(k >> 32), static_cast<Vertex>(k & 0xffffffffu));
  return out;
}

TemporalGraph::TemporalGraph(std::size_t n, std::vector<EdgeSet> slices,
                             std::optional<std::vector<std::string>> labels)
    : n_(n), slices_(std::move(slices)), labels_(std::move(labels)) {
  if (n_ == 0) throw std::invalid_argument("graph must have at least one vertex");
  if (slices_.empty()) throw std::invalid_argument("graph must have at least one slice");
  if (n_ > 0xffffffffu) throw std::invalid_argument("vertex count too large");
  for (std::size_t t = 0; t < slices_.size(); ++t) {
    for (const auto& [i, j] : slices_[t].sorted_pairs()) {
      if (j >= n_)
        throw std::invalid_argument("edge (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") in slice " + std::to_string(t) + " out of range for n=" +
                                    std::to_string(n_));
    }
  }
  if (labels_ && labels_->size() != n_)
    throw std::invalid_argument("labels length " + std::to_string(labels_->size()) +
                                " does not match n=" + std::to_string(n_));
}

Selection Selection::from_indices(std::size_t n, std::span<const Vertex> indices) {
  Selection s(n);
  for (auto v : indices) {
    if (v >= n) throw std::invalid_argument("selected vertex " + std::to_string(v) + " out of range");
    s.bits_[v] = 1;
  }
  return s;
}

Selection Selection::all(std::size_t n) {
  Selection s(n);
  std::fill(s.bits_.begin(), s.bits_.end(), 1);
  return s;
}

std::size_t Selection::cardinality() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::vector<Vertex> Selection::indices() const {
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out.push_back(i);
  return out;
}

TemporalGraph load_temporal_graph(const nlohmann::json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("graph document must be a JSON object");
  if (!doc.contains("n") || !doc["n"].is_number_integer())
    throw std::invalid_argument("graph document needs integer field \"n\"");
  const auto n_signed = doc["n"].get<long long>();
  if (n_signed <= 0) throw std::invalid_argument("graph must have at least one vertex");
  const auto n = static_cast<std::size_t>(n_signed);

  if (!doc.contains("slices") || !doc["slices"].is_array())
    throw std::invalid_argument("graph document needs array field \"slices\"");

  std::vector<EdgeSet> slices;
  for (const auto& slice : doc["slices"]) {
    if (!slice.is_object() || !slice.contains("edges") || !slice["edges"].is_array())
      throw std::invalid_argument("every slice needs an \"edges\" array");
    EdgeSet edges;
    for (const auto& e : slice["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
        throw std::invalid_argument("edge must be a pair of integers");
      const auto a = e[0].get<long long>();
      const auto b = e[1].get<long long>();
      if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n)
        throw std::invalid_argument("edge endpoint out of range: [" + std::to_string(a) + "," +
                                    std::to_string(b) + "]");
      edges.insert(static_cast<Vertex>(a), static_cast<Vertex>(b));
    }
    slices.push_back(std::move(edges));
  }

  std::optional<std::vector<std::string>> labels;
  if (doc.contains("labels") && !doc["labels"].is_null()) {
    if (!doc["labels"].is_array()) throw std::invalid_argument("\"labels\" must be an array of strings");
    labels.emplace();
    for (const auto& l : doc["labels"]) {
      if (!l.is_string()) throw std::invalid_argument("\"labels\" must be an array of strings");
      labels->push_back(l.get<std::string>());
    }
  }
  return TemporalGraph(n, std::move(slices), std::move(labels));
}

nlohmann::json to_json(const TemporalGraph& g) {
  nlohmann::json doc;
  doc["n"] = g.vertex_count();
  if (g.labels()) doc["labels"] = *g.labels();
  auto slices = nlohmann::json::array();
  for (const auto& s : g.slices()) {
    auto edges = nlohmann::json::array();
    for (const auto& [i, j] : s.sorted_pairs()) edges.push_back({i, j});
    slices.push_back({{"edges", std::move(edges)}});
  }
  doc["slices"] = std::move(slices);
  return doc;
}

EdgeSet intersection_edges(const TemporalGraph& g) {
  EdgeSet out;
  const auto& first = g.slice(0);
  for (const auto& [i, j] : first.sorted_pairs()) {
    bool everywhere = true;
    for (std::size_t t = 1; t < g.slice_count() && everywhere; ++t) everywhere = g.slice(t).contains(i, j);
    if (everywhere) out.insert(i, j);
  }
  return out;
}

TemporalGraph permute(const TemporalGraph& g, std::span<const Vertex> perm) {
  const auto n = g.vertex_count();
  if (perm.size() != n) throw std::invalid_argument("permutation length does not match n");
  std::vector<bool> seen(n, false);
  for (auto v : perm) {
    if (v >= n || seen[v]) throw std::invalid_argument("not a permutation");
    seen[v] = true;
  }
  std::vector<EdgeSet> slices;
  for (const auto& s : g.slices()) {
    EdgeSet mapped;
    for (const auto& [i, j] : s.sorted_pairs()) mapped.insert(perm[i], perm[j]);
    slices.push_back(std::move(mapped));
  }
  std::optional<std::vector<std::string>> labels;
  if (g.labels()) {
    labels.emplace(n);
    for (std::size_t v = 0; v < n; ++v) (*labels)[perm[v]] = (*g.labels())[v];
  }
  return TemporalGraph(n, std::move(slices), std::move(labels));
}

bool is_clique(const Selection& x, const EdgeSet& edges) {
  const auto members = x.indices();
  for (std::size_t a = 0; a < members.size(); ++a)
    for (std::size_t b = a + 1; b < members.size(); ++b)
      if (!edges.contains(members[a], members[b])) return false;
  return true;
}

}  // namespace softclique
