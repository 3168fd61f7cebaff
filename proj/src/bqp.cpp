#include "softclique/bqp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace softclique {

namespace {

double abs_mass(const BqpProblem& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = i + 1; j < q.size(); ++j) s += std::abs(q(i, j));
  return s;
}

bool better(double obj, const Selection& x, double best_obj, const Selection& best_x) {
  return obj > best_obj || (obj == best_obj && x < best_x);
}

class BranchAndBound {
 public:
  explicit BranchAndBound(const BqpProblem& q)
      : q_(q), n_(q.size()), x_(n_), gain_(n_, 0.0), tail_(n_, 0.0), best_x_(n_),
        tol_(1e-12 * (1.0 + abs_mass(q))) {
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = j + 1; k < n_; ++k) tail_[j] += std::max(0.0, q_(j, k));
  }

  BqpSolution run() {
    best_obj_ = 0.0;  // empty selection
    search(0, 0.0);
    return {best_x_, best_obj_, Certificate::exact};
  }

 private:
  void leaf() {
    const double obj = bqp_objective(q_, x_);
    if (better(obj, x_, best_obj_, best_x_)) {
      best_obj_ = obj;
      best_x_ = x_;
    }
  }

  void search(std::size_t depth, double value) {
    if (depth == n_) {
      leaf();
      return;
    }
    // gain_[j] + tail_[j] bounds what vertex j can still contribute.
    double bound = value;
    bool any_positive = false;
    for (std::size_t j = depth; j < n_; ++j) {
      const double potential = gain_[j] + tail_[j];
      if (potential > 0.0) bound += potential;
      if (potential >= -tol_) any_positive = true;
    }
    if (bound < best_obj_ - tol_) return;
    if (!any_positive) {
      // Every completion loses value; the all-zero tail is the only candidate.
      leaf();
      return;
    }

    search(depth + 1, value);

    x_.set(depth, true);
    const double picked = gain_[depth];
    for (std::size_t j = depth + 1; j < n_; ++j) gain_[j] += q_(depth, j);
    search(depth + 1, value + picked);
    for (std::size_t j = depth + 1; j < n_; ++j) gain_[j] -= q_(depth, j);
    x_.set(depth, false);
  }

  const BqpProblem& q_;
  std::size_t n_;
  Selection x_;
  std::vector<double> gain_;  // sum of Q(i, j) over selected i
  std::vector<double> tail_;  // sum of positive Q(j, k) over k > j
  Selection best_x_;
  double best_obj_ = 0.0;
  double tol_;
};

Selection ascend(const BqpProblem& q, Selection x, double eps) {
  const auto n = q.size();
  std::vector<double> field(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    if (x[i])
      for (std::size_t j = 0; j < n; ++j) field[j] += q(i, j);

  const std::size_t max_steps = 64 * n * n + 64;
  for (std::size_t step = 0; step < max_steps; ++step) {
    std::size_t best = n;
    double best_gain = eps;
    for (std::size_t i = 0; i < n; ++i) {
      const double g = x[i] ? -field[i] : field[i];
      if (g > best_gain) {
        best_gain = g;
        best = i;
      }
    }
    if (best == n) break;
    x.flip(best);
    const double sign = x[best] ? 1.0 : -1.0;
    for (std::size_t j = 0; j < n; ++j) field[j] += sign * q(best, j);
  }
  return x;
}

}  // namespace

BqpProblem::BqpProblem(SquareMatrix<double> q) : q_(std::move(q)) {
  const auto n = q_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (q_(i, i) != 0.0) throw std::invalid_argument("BQP matrix diagonal must be zero");
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!std::isfinite(q_(i, j))) throw std::invalid_argument("BQP matrix entries must be finite");
      if (q_(i, j) != q_(j, i)) throw std::invalid_argument("BQP matrix must be symmetric");
    }
  }
}

std::string_view to_string(Certificate c) noexcept {
  return c == Certificate::exact ? "exact" : "local";
}

double bqp_objective(const BqpProblem& q, const Selection& x) {
  if (x.size() != q.size())
    throw std::invalid_argument("selection length " + std::to_string(x.size()) +
                                " does not match problem size " + std::to_string(q.size()));
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!x[i]) continue;
    for (std::size_t j = i + 1; j < q.size(); ++j)
      if (x[j]) s += q(i, j);
  }
  return s;
}

BqpSolution solve_exact(const BqpProblem& q, std::size_t exact_limit) {
  if (q.size() > exact_limit)
    throw std::invalid_argument("problem size " + std::to_string(q.size()) + " exceeds exact limit " +
                                std::to_string(exact_limit));
  return BranchAndBound(q).run();
}

BqpSolution solve_local(const BqpProblem& q, std::uint64_t seed, std::size_t extra_restarts) {
  const auto n = q.size();
  const double eps = 1e-13 * (1.0 + abs_mass(q));

  std::vector<Selection> starts;
  starts.reserve(n + 1 + extra_restarts);
  starts.emplace_back(n);
  for (std::size_t v = 0; v < n; ++v) {
    Selection s(n);
    s.set(v, true);
    starts.push_back(std::move(s));
  }
  std::mt19937_64 rng(seed);
  for (std::size_t r = 0; r < extra_restarts; ++r) {
    Selection s(n);
    for (std::size_t v = 0; v < n; ++v) s.set(v, (rng() >> 63) != 0);
    starts.push_back(std::move(s));
  }

  Selection best_x(n);
  double best_obj = -std::numeric_limits<double>::infinity();
  for (auto& start : starts) {
    auto x = ascend(q, std::move(start), eps);
    const double obj = bqp_objective(q, x);
    if (better(obj, x, best_obj, best_x)) {
      best_obj = obj;
      best_x = std::move(x);
    }
  }
  return {best_x, best_obj, Certificate::local};
}

BqpSolution solve(const BqpProblem& q, const BqpConfig& config) {
  if (q.size() <= config.exact_limit) return solve_exact(q, config.exact_limit);
  return solve_local(q, config.seed, config.extra_restarts);
}

}  // namespace softclique
