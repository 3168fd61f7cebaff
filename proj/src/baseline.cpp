#include "softclique/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace softclique {

SimilarityMatrix averaged_affinity(std::span<const SimilarityMatrix> per_slice) {
  if (per_slice.empty()) throw std::invalid_argument("averaged affinity needs at least one matrix");
  const auto n = per_slice.front().size();
  for (const auto& k : per_slice)
    if (k.size() != n) throw std::invalid_argument("affinity matrices differ in size");
  const double count = static_cast<double>(per_slice.size());
  SquareMatrix<double> mean(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (const auto& k : per_slice) s += k(i, j);
      mean.set_symmetric(i, j, s / count);
    }
  }
  return SimilarityMatrix(std::move(mean));
}

SquareMatrix<double> zero_diagonal(const SimilarityMatrix& a) {
  auto m = a.values();
  for (std::size_t i = 0; i < m.size(); ++i) m(i, i) = 0.0;
  return m;
}

double quadratic_score(const SquareMatrix<double>& a, std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) row += a(i, j) * x[j];
    s += x[i] * row;
  }
  return s;
}

bool replicator_step(const SquareMatrix<double>& a, std::vector<double>& x) {
  const auto n = a.size();
  std::vector<double> ax(n, 0.0);
  double score = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) ax[i] += a(i, j) * x[j];
    score += x[i] * ax[i];
  }
  if (!(score > 0.0)) return false;
  for (std::size_t i = 0; i < n; ++i) x[i] = x[i] * ax[i] / score;
  return true;
}

std::vector<double> start_distribution(std::size_t n, Vertex start) {
  if (start >= n) throw std::invalid_argument("start vertex out of range");
  if (n == 1) return {1.0};
  std::vector<double> x(n, 0.1 / static_cast<double>(n - 1));
  x[start] = 0.9;
  return x;
}

BaselineResult dominant_set(const SimilarityMatrix& a, Vertex start, const ReplicatorOptions& opts) {
  const auto n = a.size();
  const auto m = zero_diagonal(a);
  auto x = start_distribution(n, start);

  BaselineResult out;
  out.start_vertex = start;
  for (std::size_t step = 0; step < opts.max_steps; ++step) {
    const auto before = x;
    if (!replicator_step(m, x)) {
      out.x = Selection(n);
      out.x.set(start, true);
      out.score = 0.0;
      out.steps = step;
      return out;
    }
    out.steps = step + 1;
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) change = std::max(change, std::abs(x[i] - before[i]));
    if (change < opts.tol) break;
  }

  const double peak = *std::max_element(x.begin(), x.end());
  out.x = Selection(n);
  for (std::size_t i = 0; i < n; ++i)
    if (x[i] > opts.support_threshold * peak) out.x.set(i, true);
  out.score = quadratic_score(m, x);
  return out;
}

BaselineResult best_mode(const SimilarityMatrix& a, const ReplicatorOptions& opts) {
  if (a.size() == 0) throw std::invalid_argument("affinity matrix is empty");
  BaselineResult best = dominant_set(a, 0, opts);
  for (Vertex v = 1; v < a.size(); ++v) {
    auto r = dominant_set(a, v, opts);
    // scores closer than the convergence tolerance count as ties
    if (r.score > best.score + opts.tol * std::max(1.0, std::abs(best.score))) best = std::move(r);
  }
  return best;
}

nlohmann::json to_json(const BaselineResult& r, const ReplicatorOptions& opts) {
  return {
      {"method", "baseline"},
      {"selected", r.x.indices()},
      {"score", r.score},
      {"objective", r.score},
      {"start_vertex", r.start_vertex},
      {"iterations", r.steps},
      {"tol", opts.tol},
      {"max_steps", opts.max_steps},
      {"support_threshold", opts.support_threshold},
  };
}

}  // namespace softclique
