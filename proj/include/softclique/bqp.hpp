#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "softclique/matrix.hpp"
#include "softclique/temporal_graph.hpp"

namespace softclique {

/// max over x in {0,1}^n of sum_{i<j} x_i x_j Q_ij. Q is symmetric with an
/// exactly zero diagonal; off-diagonal entries may be negative.
class BqpProblem {
 public:
  /// Throws std::invalid_argument on asymmetry, nonzero diagonal or
  /// non-finite entries.
  explicit BqpProblem(SquareMatrix<double> q);

  std::size_t size() const noexcept { return q_.size(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return q_(i, j); }
  const SquareMatrix<double>& values() const noexcept { return q_; }

 private:
  SquareMatrix<double> q_;
};

enum class Certificate { exact, local };

std::string_view to_string(Certificate c) noexcept;

struct BqpSolution {
  Selection x;
  double objective = 0.0;
  Certificate certificate = Certificate::local;
};

inline constexpr std::size_t kDefaultExactLimit = 20;

struct BqpConfig {
  std::size_t exact_limit = kDefaultExactLimit;
  std::uint64_t seed = 0;
  std::size_t extra_restarts = 0;
};

/// Sum over i < j of x_i x_j Q_ij, i outer and j inner.
double bqp_objective(const BqpProblem& q, const Selection& x);

/// Depth-first branch and bound. Returns a global optimum; among optima
/// the lexicographically smallest selection.
BqpSolution solve_exact(const BqpProblem& q, std::size_t exact_limit = kDefaultExactLimit);

/// Best-improvement 1-flip ascent started from the empty set and from every
/// singleton, plus `extra_restarts` random starts drawn from `seed`.
BqpSolution solve_local(const BqpProblem& q, std::uint64_t seed = 0, std::size_t extra_restarts = 0);

/// Exact backend when n <= exact_limit, local search otherwise.
BqpSolution solve(const BqpProblem& q, const BqpConfig& config = {});

}  // namespace softclique
