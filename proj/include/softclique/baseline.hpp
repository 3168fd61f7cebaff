#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <json.hpp>

#include "softclique/kernels.hpp"
#include "softclique/temporal_graph.hpp"

namespace softclique {

// Dominant-set mode seeking with discrete replicator dynamics, run on the
// temporal mean of the affinity matrices and restarted from every vertex.

struct ReplicatorOptions {
  double tol = 1e-9;
  std::size_t max_steps = 10000;
  double support_threshold = 1e-6;  // relative to the largest entry
};

struct BaselineResult {
  Selection x;
  double score = 0.0;
  Vertex start_vertex = 0;
  std::size_t steps = 0;
};

SimilarityMatrix averaged_affinity(std::span<const SimilarityMatrix> per_slice);

/// Copy of A with a zero diagonal.
SquareMatrix<double> zero_diagonal(const SimilarityMatrix& a);

/// x^T A x.
double quadratic_score(const SquareMatrix<double>& a, std::span<const double> x);

/// One step x <- x * (A x) / (x^T A x). Returns false and leaves x
/// untouched when x^T A x is zero.
bool replicator_step(const SquareMatrix<double>& a, std::vector<double>& x);

/// 0.9 on `start`, the remaining 0.1 spread evenly over the other vertices.
std::vector<double> start_distribution(std::size_t n, Vertex start);

BaselineResult dominant_set(const SimilarityMatrix& a, Vertex start, const ReplicatorOptions& opts = {});

/// dominant_set from every vertex; highest score wins. Scores within opts.tol
/// (relative) are ties and go to the lowest start.
BaselineResult best_mode(const SimilarityMatrix& a, const ReplicatorOptions& opts = {});

/// Solution-shaped JSON with `"method": "baseline"`, `"start_vertex"`, `"score"`.
nlohmann::json to_json(const BaselineResult& r, const ReplicatorOptions& opts);

}  // namespace softclique
