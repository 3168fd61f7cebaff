#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "softclique/bqp.hpp"
#include "softclique/cliqueness.hpp"
#include "softclique/kernels.hpp"
#include "softclique/temporal_graph.hpp"

namespace softclique {

enum class Method { l1, l2, hard };
enum class NormOrder { l1, l2 };

std::string_view to_string(Method m) noexcept;

struct PenaltyConfig {
  double eta = 1.0;
  NormOrder norm_order = NormOrder::l1;
  std::size_t max_iterations = 20;  // l2 only
  BqpConfig solver;
};

struct SoftCliqueSolution {
  Selection x;
  SlackVector beta;
  double objective = 0.0;
  Method method = Method::l1;
  Certificate certificate = Certificate::exact;
};

struct L2Iteration {
  Selection x;
  std::vector<double> lambda;  // after the closed-form update
  double bqp_objective = 0.0;  // Step 1 value under the previous multipliers
  double lagrangian = 0.0;     // partial Lagrangian at (x, lambda)
};

struct L2State {
  std::vector<double> lambda;
  std::size_t iteration = 0;
  std::vector<L2Iteration> history;
};

/// Q_ij = K_ij - eta * C_ij off the diagonal.
BqpProblem build_l1_problem(const SimilarityMatrix& k, const MissingEdgeCounts& c, double eta);

/// Q_ij = K_ij - sum_t lambda_t [(i,j) missing from slice t].
BqpProblem build_l2_problem(const SimilarityMatrix& k, const TemporalGraph& g, std::span<const double> lambda);

/// -sum_{i<j} x_i x_j K_ij - (1 / 4 eta) sum_t lambda_t^2 + sum_t lambda_t beta_t.
double l2_lagrangian(const SimilarityMatrix& k, const Selection& x, std::span<const double> lambda,
                     std::span<const std::int64_t> beta, double eta);

/// Sum over i < j of x_i x_j K_ij.
double selection_weight(const SimilarityMatrix& k, const Selection& x);

SoftCliqueSolution solve_l1(const TemporalGraph& g, const SimilarityMatrix& k, const PenaltyConfig& cfg);

/// Alternates the BQP step with lambda_t = 2 eta beta_t, starting from
/// lambda = 0, for at most max_iterations rounds or until the selection
/// repeats. The reported objective is the partial Lagrangian at the end.
std::pair<SoftCliqueSolution, L2State> solve_l2(const TemporalGraph& g, const SimilarityMatrix& k,
                                                const PenaltyConfig& cfg);

/// Maximum-weight clique of the intersection graph.
SoftCliqueSolution solve_hard(const TemporalGraph& g, const SimilarityMatrix& k, const BqpConfig& solver = {});

/// `{"method", "selected", "objective", "beta", "lambda"?, "iterations"?, "certificate"}`.
nlohmann::json to_json(const SoftCliqueSolution& s, const L2State* state = nullptr);

}  // namespace softclique
