#include "softclique/soft_clique.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

namespace softclique {

namespace {

void check_dims(const TemporalGraph& g, const SimilarityMatrix& k) {
  if (k.size() != g.vertex_count())
    throw std::invalid_argument("similarity matrix size " + std::to_string(k.size()) +
                                " does not match graph with n=" + std::to_string(g.vertex_count()));
}

void check_eta(double eta) {
  if (!std::isfinite(eta) || eta < 0.0) throw std::invalid_argument("eta must be finite and nonnegative");
}

}  // namespace

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::l1: return "l1";
    case Method::l2: return "l2";
    case Method::hard: return "hard";
  }
  return "";
}

BqpProblem build_l1_problem(const SimilarityMatrix& k, const MissingEdgeCounts& c, double eta) {
  if (k.size() != c.size()) throw std::invalid_argument("similarity and missing-count matrices differ in size");
  check_eta(eta);
  const auto n = k.size();
  SquareMatrix<double> q(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) q.set_symmetric(i, j, k(i, j) - eta * static_cast<double>(c(i, j)));
  return BqpProblem(std::move(q));
}

BqpProblem build_l2_problem(const SimilarityMatrix& k, const TemporalGraph& g, std::span<const double> lambda) {
  check_dims(g, k);
  if (lambda.size() != g.slice_count()) throw std::invalid_argument("one multiplier per slice required");
  const auto n = k.size();
  SquareMatrix<double> q(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double c = 0.0;
      for (std::size_t t = 0; t < g.slice_count(); ++t)
        if (!g.slice(t).contains(i, j)) c += lambda[t];
      q.set_symmetric(i, j, k(i, j) - c);
    }
  }
  return BqpProblem(std::move(q));
}

double selection_weight(const SimilarityMatrix& k, const Selection& x) {
  if (x.size() != k.size()) throw std::invalid_argument("selection length does not match similarity matrix");
  double s = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (!x[i]) continue;
    for (std::size_t j = i + 1; j < k.size(); ++j)
      if (x[j]) s += k(i, j);
  }
  return s;
}

double l2_lagrangian(const SimilarityMatrix& k, const Selection& x, std::span<const double> lambda,
                     std::span<const std::int64_t> beta, double eta) {
  if (lambda.size() != beta.size()) throw std::invalid_argument("lambda and beta differ in length");
  double squares = 0.0;
  double coupling = 0.0;
  for (std::size_t t = 0; t < lambda.size(); ++t) {
    squares += lambda[t] * lambda[t];
    coupling += lambda[t] * static_cast<double>(beta[t]);
  }
  return -selection_weight(k, x) - squares / (4.0 * eta) + coupling;
}

SoftCliqueSolution solve_l1(const TemporalGraph& g, const SimilarityMatrix& k, const PenaltyConfig& cfg) {
  check_dims(g, k);
  if (cfg.norm_order != NormOrder::l1) throw std::invalid_argument("solve_l1 requires the l1 penalty");
  const auto problem = build_l1_problem(k, missing_counts(g), cfg.eta);
  auto sol = solve(problem, cfg.solver);
  auto beta = slack_per_slice(sol.x, g);
  return {std::move(sol.x), std::move(beta), sol.objective, Method::l1, sol.certificate};
}

std::pair<SoftCliqueSolution, L2State> solve_l2(const TemporalGraph& g, const SimilarityMatrix& k,
                                                const PenaltyConfig& cfg) {
  check_dims(g, k);
  if (cfg.norm_order != NormOrder::l2) throw std::invalid_argument("solve_l2 requires the l2 penalty");
  if (!(cfg.eta > 0.0) || !std::isfinite(cfg.eta)) throw std::invalid_argument("eta must be positive for l2");
  if (cfg.max_iterations < 1) throw std::invalid_argument("l2 needs at least one iteration");

  const auto T = g.slice_count();
  L2State state;
  state.lambda.assign(T, 0.0);

  Certificate certificate = Certificate::exact;
  Selection x;
  SlackVector beta;
  std::optional<Selection> previous;
  for (std::size_t it = 1; it <= cfg.max_iterations; ++it) {
    auto step = solve(build_l2_problem(k, g, state.lambda), cfg.solver);
    if (step.certificate == Certificate::local) certificate = Certificate::local;
    x = std::move(step.x);
    beta = slack_per_slice(x, g);
    for (std::size_t t = 0; t < T; ++t) state.lambda[t] = 2.0 * cfg.eta * static_cast<double>(beta[t]);
    state.iteration = it;
    state.history.push_back({x, state.lambda, step.objective, l2_lagrangian(k, x, state.lambda, beta, cfg.eta)});
    if (previous && *previous == x) break;
    previous = x;
  }

  SoftCliqueSolution sol{x, beta, state.history.back().lagrangian, Method::l2, certificate};
  return {std::move(sol), std::move(state)};
}

SoftCliqueSolution solve_hard(const TemporalGraph& g, const SimilarityMatrix& k, const BqpConfig& solver) {
  check_dims(g, k);
  const auto n = k.size();
  const auto common = intersection_edges(g);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) total += k(i, j);
  const double prohibitive = 1.0 + total;

  SquareMatrix<double> q(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) q.set_symmetric(i, j, common.contains(i, j) ? k(i, j) : -prohibitive);
  auto sol = solve(BqpProblem(std::move(q)), solver);
  auto beta = slack_per_slice(sol.x, g);
  for (auto b : beta)
    if (b != 0) throw std::logic_error("hard clique solver returned a selection with missing edges");
  return {std::move(sol.x), std::move(beta), sol.objective, Method::hard, sol.certificate};
}

nlohmann::json to_json(const SoftCliqueSolution& s, const L2State* state) {
  nlohmann::json doc;
  doc["method"] = std::string(to_string(s.method));
  doc["selected"] = s.x.indices();
  doc["objective"] = s.objective;
  doc["beta"] = s.beta;
  if (state) {
    doc["lambda"] = state->lambda;
    doc["iterations"] = state->iteration;
  }
  doc["certificate"] = std::string(to_string(s.certificate));
  return doc;
}

}  // namespace softclique
