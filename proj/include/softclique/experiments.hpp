#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "softclique/bqp.hpp"
#include "softclique/kernels.hpp"
#include "softclique/temporal_graph.hpp"

namespace softclique {

enum class Dataset { A, B, C, D };

std::string_view to_string(Dataset d) noexcept;
std::optional<Dataset> parse_dataset(std::string_view name) noexcept;

struct SyntheticSpec {
  Dataset dataset = Dataset::A;
  std::uint64_t seed = 0;
};

struct GroundTruth {
  std::vector<Vertex> clique;
};

/// Covariance scale of the noise added to the first slice, one entry per
/// later slice.
std::vector<double> noise_schedule(Dataset d);

/// Standard normal deviates from std::mt19937_64 through the Box-Muller
/// transform, so streams are identical across standard libraries.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}
  double operator()();

 private:
  double uniform_open();  // (0, 1]

  std::mt19937_64 rng_;
  std::optional<double> spare_;
};

/// 18 planar points at slice 0 (7 around (0,0), 6 around (-6,3), 5 around
/// (8,-3)); every later slice perturbs the slice-0 points with isotropic
/// noise. The target clique is the 7-point component.
std::pair<PointCloudSeries, GroundTruth> gen_synthetic(const SyntheticSpec& spec);

/// q-quantile (linear interpolation) of a sample.
double quantile(std::vector<double> values, double q);

/// Per slice, (i,j) is an edge iff its Euclidean distance is at most the
/// q-quantile of that slice's pairwise distances.
TemporalGraph build_edge_sets(const PointCloudSeries& points, double q);

/// |X n Y| / |X u Y|. Throws when both sets are empty.
double jaccard(std::span<const Vertex> truth, std::span<const Vertex> predicted);

enum class BenchMethod { l1, l2, baseline, hard };

std::string_view to_string(BenchMethod m) noexcept;
std::optional<BenchMethod> parse_bench_method(std::string_view name) noexcept;

struct BenchmarkConfig {
  std::vector<Dataset> datasets{Dataset::A, Dataset::B, Dataset::C, Dataset::D};
  std::vector<BenchMethod> methods{BenchMethod::l1, BenchMethod::l2, BenchMethod::baseline};
  std::size_t repeats = 10;
  double q = 0.3;
  double eta = 1.0;
  std::uint64_t base_seed = 0;
  std::size_t l2_iterations = 20;
  BqpConfig solver;
  bool record_timing = false;  // wall-clock runtimes make output non-reproducible
};

struct RunRecord {
  Dataset dataset;
  BenchMethod method;
  std::size_t repeat;
  std::uint64_t seed;
  std::vector<Vertex> selection;
  double jaccard;
  double runtime_s;
};

struct SummaryRow {
  Dataset dataset;
  BenchMethod method;
  std::size_t repeats;
  double jaccard_mean;
  double jaccard_std;  // sample standard deviation; 0 when repeats == 1
  bool std_defined;
  double runtime_mean_s;
};

struct BenchmarkReport {
  BenchmarkConfig config;
  std::vector<RunRecord> runs;
  std::vector<SummaryRow> summary;

  const SummaryRow& row(Dataset d, BenchMethod m) const;
};

/// Mean and sample standard deviation.
std::pair<double, double> mean_and_std(std::span<const double> values);

BenchmarkReport run_benchmark(const BenchmarkConfig& config);

/// Header `dataset,method,repeats,q,eta,jaccard_mean,jaccard_std,runtime_mean_s`.
void write_benchmark_csv(std::ostream& out, const BenchmarkReport& report);

/// One metadata line followed by one line per run.
void write_benchmark_jsonl(std::ostream& out, const BenchmarkReport& report);

}  // namespace softclique
