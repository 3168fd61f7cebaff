#include "softclique/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "softclique/baseline.hpp"
#include "softclique/soft_clique.hpp"

namespace softclique {

namespace {

struct Component {
  std::size_t count;
  double mean_x;
  double mean_y;
  double variance;
};

constexpr Component kComponents[] = {
    {7, 0.0, 0.0, 1.0},
    {6, -6.0, 3.0, 2.0},
    {5, 8.0, -3.0, 2.0},
};

std::string format_g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string_view to_string(Dataset d) noexcept {
  switch (d) {
    case Dataset::A: return "A";
    case Dataset::B: return "B";
    case Dataset::C: return "C";
    case Dataset::D: return "D";
  }
  return "";
}

std::optional<Dataset> parse_dataset(std::string_view name) noexcept {
  if (name == "A") return Dataset::A;
  if (name == "B") return Dataset::B;
  if (name == "C") return Dataset::C;
  if (name == "D") return Dataset::D;
  return std::nullopt;
}

std::vector<double> noise_schedule(Dataset d) {
  switch (d) {
    case Dataset::A: return {10.0, 0.8};
    case Dataset::B: return {10.0, 10.0};
    case Dataset::C: return {10.0, 2.0, 5.0, 0.8};
    case Dataset::D: return {10.0, 2.0, 5.0, 0.8, 2.5, 0.5};
  }
  return {};
}

double NormalSampler::uniform_open() {
  // 53 random bits mapped onto (0, 1].
  return (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
}

double NormalSampler::operator()() {
  if (spare_) {
    const double z = *spare_;
    spare_.reset();
    return z;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform_open()));
  const double angle = 2.0 * std::numbers::pi * uniform_open();
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

std::pair<PointCloudSeries, GroundTruth> gen_synthetic(const SyntheticSpec& spec) {
  NormalSampler normal(spec.seed);
  PointCloud base;
  GroundTruth truth;
  for (std::size_t c = 0; c < std::size(kComponents); ++c) {
    const auto& comp = kComponents[c];
    const double sd = std::sqrt(comp.variance);
    for (std::size_t k = 0; k < comp.count; ++k) {
      if (c == 0) truth.clique.push_back(base.size());
      const double x = comp.mean_x + sd * normal();
      const double y = comp.mean_y + sd * normal();
      base.push_back({x, y});
    }
  }

  std::vector<PointCloud> slices{base};
  for (double variance : noise_schedule(spec.dataset)) {
    const double sd = std::sqrt(variance);
    PointCloud noisy = base;
    for (auto& p : noisy)
      for (auto& coord : p) coord += sd * normal();
    slices.push_back(std::move(noisy));
  }
  return {PointCloudSeries(std::move(slices)), std::move(truth)};
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile q must lie in [0,1]");
  std::sort(values.begin(), values.end());
  const double h = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = h - static_cast<double>(lo);
  if (frac == 0.0) return values[lo];
  return values[lo] + frac * (values[hi] - values[lo]);
}

TemporalGraph build_edge_sets(const PointCloudSeries& points, double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile q must lie in [0,1]");
  const auto n = points.point_count();
  std::vector<EdgeSet> slices;
  for (const auto& cloud : points.slices()) {
    SquareMatrix<double> dist(n, 0.0);
    std::vector<double> all;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        dist.set_symmetric(i, j, std::sqrt(squared_distance(cloud[i], cloud[j])));
        all.push_back(dist(i, j));
      }
    }
    EdgeSet edges;
    if (!all.empty()) {
      const double tau = quantile(std::move(all), q);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (dist(i, j) <= tau) edges.insert(i, j);
    }
    slices.push_back(std::move(edges));
  }
  return TemporalGraph(n, std::move(slices));
}

double jaccard(std::span<const Vertex> truth, std::span<const Vertex> predicted) {
  const std::set<Vertex> a(truth.begin(), truth.end());
  const std::set<Vertex> b(predicted.begin(), predicted.end());
  std::size_t common = 0;
  for (auto v : a) common += b.count(v);
  const std::size_t united = a.size() + b.size() - common;
  if (united == 0) throw std::invalid_argument("Jaccard index undefined for two empty sets");
  return static_cast<double>(common) / static_cast<double>(united);
}

std::string_view to_string(BenchMethod m) noexcept {
  switch (m) {
    case BenchMethod::l1: return "l1";
    case BenchMethod::l2: return "l2";
    case BenchMethod::baseline: return "baseline";
    case BenchMethod::hard: return "hard";
  }
  return "";
}

std::optional<BenchMethod> parse_bench_method(std::string_view name) noexcept {
  if (name == "l1") return BenchMethod::l1;
  if (name == "l2") return BenchMethod::l2;
  if (name == "baseline") return BenchMethod::baseline;
  if (name == "hard") return BenchMethod::hard;
  return std::nullopt;
}

const SummaryRow& BenchmarkReport::row(Dataset d, BenchMethod m) const {
  for (const auto& r : summary)
    if (r.dataset == d && r.method == m) return r;
  throw std::out_of_range("no summary row for dataset " + std::string(to_string(d)) + ", method " +
                          std::string(to_string(m)));
}

std::pair<double, double> mean_and_std(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("mean of an empty sample");
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  if (values.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

BenchmarkReport run_benchmark(const BenchmarkConfig& config) {
  if (config.repeats < 1) throw std::invalid_argument("repeats must be at least 1");
  if (!(config.q >= 0.0 && config.q <= 1.0)) throw std::invalid_argument("quantile q must lie in [0,1]");
  if (config.datasets.empty() || config.methods.empty())
    throw std::invalid_argument("benchmark needs at least one dataset and one method");

  using Clock = std::chrono::steady_clock;
  BenchmarkReport report;
  report.config = config;

  PenaltyConfig l1_cfg{config.eta, NormOrder::l1, config.l2_iterations, config.solver};
  PenaltyConfig l2_cfg{config.eta, NormOrder::l2, config.l2_iterations, config.solver};

  for (auto dataset : config.datasets) {
    std::vector<std::vector<double>> scores(config.methods.size());
    std::vector<double> runtime_sum(config.methods.size(), 0.0);
    for (std::size_t r = 0; r < config.repeats; ++r) {
      const std::uint64_t seed = config.base_seed + r;
      const auto [points, truth] = gen_synthetic({dataset, seed});
      const auto per_slice = slice_similarities(points);
      const auto total = total_similarity(per_slice);
      const auto graph = build_edge_sets(points, config.q);

      for (std::size_t m = 0; m < config.methods.size(); ++m) {
        const auto method = config.methods[m];
        const auto started = Clock::now();
        Selection x;
        switch (method) {
          case BenchMethod::l1: x = solve_l1(graph, total, l1_cfg).x; break;
          case BenchMethod::l2: x = solve_l2(graph, total, l2_cfg).first.x; break;
          case BenchMethod::hard: x = solve_hard(graph, total, config.solver).x; break;
          case BenchMethod::baseline: x = best_mode(averaged_affinity(per_slice)).x; break;
        }
        const double elapsed =
            config.record_timing ? std::chrono::duration<double>(Clock::now() - started).count() : 0.0;
        auto selected = x.indices();
        const double score = jaccard(truth.clique, selected);
        scores[m].push_back(score);
        runtime_sum[m] += elapsed;
        report.runs.push_back({dataset, method, r, seed, std::move(selected), score, elapsed});
      }
    }
    for (std::size_t m = 0; m < config.methods.size(); ++m) {
      const auto [mean, sd] = mean_and_std(scores[m]);
      report.summary.push_back({dataset, config.methods[m], config.repeats, mean, sd, config.repeats > 1,
                                runtime_sum[m] / static_cast<double>(config.repeats)});
    }
  }
  return report;
}

void write_benchmark_csv(std::ostream& out, const BenchmarkReport& report) {
  out << "dataset,method,repeats,q,eta,jaccard_mean,jaccard_std,runtime_mean_s\n";
  for (const auto& row : report.summary) {
    out << to_string(row.dataset) << ',' << to_string(row.method) << ',' << row.repeats << ','
        << format_g6(report.config.q) << ',' << format_g6(report.config.eta) << ',' << format_g6(row.jaccard_mean)
        << ',' << format_g6(row.jaccard_std) << ',' << format_g6(row.runtime_mean_s) << '\n';
  }
}

void write_benchmark_jsonl(std::ostream& out, const BenchmarkReport& report) {
  const auto& cfg = report.config;
  std::vector<std::string> datasets;
  for (auto d : cfg.datasets) datasets.emplace_back(to_string(d));
  std::vector<std::string> methods;
  for (auto m : cfg.methods) methods.emplace_back(to_string(m));
  std::vector<std::string> undefined_std;
  for (const auto& row : report.summary)
    if (!row.std_defined) undefined_std.push_back(std::string(to_string(row.dataset)) + "/" + std::string(to_string(row.method)));

  const ReplicatorOptions replicator;
  nlohmann::json meta = {
      {"type", "meta"},
      {"datasets", datasets},
      {"methods", methods},
      {"repeats", cfg.repeats},
      {"q", cfg.q},
      {"eta", cfg.eta},
      {"base_seed", cfg.base_seed},
      {"l2_iterations", cfg.l2_iterations},
      {"exact_limit", cfg.solver.exact_limit},
      {"std", "sample (n-1 denominator)"},
      {"std_undefined", undefined_std},
      {"timing", cfg.record_timing},
      {"kernel", "per-slice RBF, width = median squared distance"},
      {"rng", "mt19937_64 + Box-Muller"},
      {"baseline", {{"tol", replicator.tol},
                    {"max_steps", replicator.max_steps},
                    {"support_threshold", replicator.support_threshold}}},
  };
  out << meta.dump() << '\n';
  for (const auto& run : report.runs) {
    nlohmann::json line = {
        {"type", "run"},
        {"dataset", std::string(to_string(run.dataset))},
        {"method", std::string(to_string(run.method))},
        {"repeat", run.repeat},
        {"seed", run.seed},
        {"selected", run.selection},
        {"jaccard", run.jaccard},
        {"runtime_s", run.runtime_s},
    };
    out << line.dump() << '\n';
  }
}

}  // namespace softclique
