#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "softclique/baseline.hpp"
#include "softclique/experiments.hpp"
#include "softclique/kernels.hpp"
#include "softclique/soft_clique.hpp"
#include "softclique/temporal_graph.hpp"

namespace softclique::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

json read_json(const std::string& path) {
  auto in = open_in(path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("error writing " + path);
}

void write_json(const std::string& path, const json& doc) { write_text(path, doc.dump(2) + "\n"); }

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

struct GenArgs {
  std::string dataset = "A";
  std::uint64_t seed = 0;
  std::string out;
  std::string truth;
  std::string graph;
  double q = 0.3;
};

struct KernelArgs {
  std::string points;
  std::vector<std::string> bags;
  double base_width = 0.0;
  std::string out;
  std::string slices_dir;
  double subpoly = 0.0;
  bool global_width = false;
  std::string median = "squared";
};

struct SolveArgs {
  std::string graph;
  std::string similarity;
  std::string method = "l1";
  double eta = 1.0;
  std::size_t iters = 20;
  std::size_t exact_limit = kDefaultExactLimit;
  std::uint64_t seed = 0;
  std::size_t restarts = 0;
  std::string out;
};

struct BaselineArgs {
  std::string slices_dir;
  std::string out;
  double tol = 1e-9;
  std::size_t max_steps = 10000;
};

struct BenchArgs {
  std::string datasets = "A,B,C,D";
  std::string methods = "l1,l2,baseline";
  std::size_t repeats = 10;
  double q = 0.3;
  double eta = 1.0;
  std::uint64_t seed = 0;
  std::size_t iters = 20;
  std::size_t exact_limit = kDefaultExactLimit;
  std::string out;
  std::string runs_out;
  bool timing = false;
};

struct EvalArgs {
  std::string truth;
  std::string solution;
};

void run_gen(const GenArgs& a) {
  const auto dataset = parse_dataset(a.dataset);
  require(dataset.has_value(), "unknown dataset \"" + a.dataset + "\" (expected A, B, C or D)");
  require(a.q >= 0.0 && a.q <= 1.0, "q must lie in [0,1]");
  const auto [points, truth] = gen_synthetic({*dataset, a.seed});

  std::ostringstream csv;
  write_point_csv(csv, points);
  write_text(a.out, csv.str());
  if (!a.truth.empty())
    write_json(a.truth, json{{"dataset", a.dataset}, {"seed", a.seed}, {"clique", truth.clique}});
  if (!a.graph.empty()) write_json(a.graph, to_json(build_edge_sets(points, a.q)));
}

void run_kernel(const KernelArgs& a) {
  require(a.points.empty() != a.bags.empty(), "give exactly one of --points or --bags");
  require(a.subpoly == 0.0 || (a.subpoly > 0.0 && a.subpoly < 1.0), "--subpoly exponent must lie in (0,1)");
  require(a.median == "squared" || a.median == "euclidean", "--median must be squared or euclidean");

  std::vector<SimilarityMatrix> slices;
  if (!a.points.empty()) {
    auto in = open_in(a.points);
    const auto series = read_point_csv(in);
    const auto mode = a.median == "squared" ? DistanceMode::squared : DistanceMode::euclidean;
    slices = slice_similarities(series, mode, a.global_width);
  } else {
    require(a.base_width > 0.0 && std::isfinite(a.base_width), "--base-width must be positive");
    for (const auto& path : a.bags) {
      auto in = open_in(path);
      slices.push_back(set_kernel(read_bag_csv(in), a.base_width));
    }
  }
  if (a.subpoly > 0.0)
    for (auto& k : slices) k = subpoly_transform(k, a.subpoly);

  write_json(a.out, to_json(total_similarity(slices)));
  if (!a.slices_dir.empty()) {
    fs::create_directories(a.slices_dir);
    for (std::size_t t = 0; t < slices.size(); ++t) {
      char name[32];
      std::snprintf(name, sizeof name, "slice_%03zu.json", t);
      write_json((fs::path(a.slices_dir) / name).string(), to_json(slices[t]));
    }
  }
}

void run_solve(const SolveArgs& a) {
  require(a.method == "l1" || a.method == "l2" || a.method == "hard", "--method must be l1, l2 or hard");
  require(std::isfinite(a.eta), "eta must be finite");
  if (a.method == "l2") {
    require(a.eta > 0.0, "eta must be positive for l2");
    require(a.iters >= 1, "--iters must be at least 1");
  } else {
    require(a.eta >= 0.0, "eta must be nonnegative");
  }

  const auto graph = load_temporal_graph(read_json(a.graph));
  const auto k = similarity_from_json(read_json(a.similarity));
  const BqpConfig solver{a.exact_limit, a.seed, a.restarts};

  json doc;
  if (a.method == "l1") {
    doc = to_json(solve_l1(graph, k, {a.eta, NormOrder::l1, a.iters, solver}));
  } else if (a.method == "l2") {
    const auto [sol, state] = solve_l2(graph, k, {a.eta, NormOrder::l2, a.iters, solver});
    doc = to_json(sol, &state);
  } else {
    doc = to_json(solve_hard(graph, k, solver));
  }
  write_json(a.out, doc);
}

void run_baseline(const BaselineArgs& a) {
  require(a.tol > 0.0, "--tol must be positive");
  require(a.max_steps >= 1, "--max-steps must be at least 1");
  require(fs::is_directory(a.slices_dir), a.slices_dir + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(a.slices_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  require(!files.empty(), "no .json similarity matrices in " + a.slices_dir);

  std::vector<SimilarityMatrix> slices;
  for (const auto& f : files) slices.push_back(similarity_from_json(read_json(f.string())));
  const ReplicatorOptions opts{a.tol, a.max_steps};
  write_json(a.out, to_json(best_mode(averaged_affinity(slices), opts), opts));
}

void run_bench(const BenchArgs& a) {
  BenchmarkConfig cfg;
  cfg.datasets.clear();
  for (const auto& name : split_list(a.datasets)) {
    const auto d = parse_dataset(name);
    require(d.has_value(), "unknown dataset \"" + name + "\"");
    cfg.datasets.push_back(*d);
  }
  cfg.methods.clear();
  for (const auto& name : split_list(a.methods)) {
    const auto m = parse_bench_method(name);
    require(m.has_value(), "unknown method \"" + name + "\"");
    cfg.methods.push_back(*m);
  }
  require(!cfg.datasets.empty() && !cfg.methods.empty(), "need at least one dataset and one method");
  require(a.repeats >= 1, "--repeats must be at least 1");
  require(a.q >= 0.0 && a.q <= 1.0, "q must lie in [0,1]");
  require(std::isfinite(a.eta) && a.eta >= 0.0, "eta must be nonnegative");
  const bool uses_l2 = std::find(cfg.methods.begin(), cfg.methods.end(), BenchMethod::l2) != cfg.methods.end();
  if (uses_l2) require(a.eta > 0.0, "eta must be positive for l2");
  require(a.iters >= 1, "--iters must be at least 1");

  cfg.repeats = a.repeats;
  cfg.q = a.q;
  cfg.eta = a.eta;
  cfg.base_seed = a.seed;
  cfg.l2_iterations = a.iters;
  cfg.solver.exact_limit = a.exact_limit;
  cfg.record_timing = a.timing;

  const auto report = run_benchmark(cfg);
  std::ostringstream csv;
  write_benchmark_csv(csv, report);
  write_text(a.out, csv.str());

  std::string runs = a.runs_out;
  if (runs.empty()) runs = fs::path(a.out).replace_extension(".jsonl").string();
  std::ostringstream jsonl;
  write_benchmark_jsonl(jsonl, report);
  write_text(runs, jsonl.str());

  std::cout << csv.str();
}

void run_eval(const EvalArgs& a) {
  const auto truth = read_json(a.truth);
  const auto sol = read_json(a.solution);
  require(truth.contains("clique") && truth["clique"].is_array(), a.truth + " needs a \"clique\" array");
  require(sol.contains("selected") && sol["selected"].is_array(), a.solution + " needs a \"selected\" array");
  const auto x = truth["clique"].get<std::vector<Vertex>>();
  const auto y = sol["selected"].get<std::vector<Vertex>>();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", jaccard(x, y));
  std::cout << buf << '\n';
}

}  // namespace

int dispatch(int argc, const char* const* argv) {
  CLI::App app{"Most persistent soft-clique search over sampled graphs", "softclique"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic point-cloud series");
  gen_cmd->add_option("--dataset", gen.dataset, "Synthetic dataset: A, B, C or D");
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--out", gen.out, "Point CSV output")->required();
  gen_cmd->add_option("--truth", gen.truth, "Ground-truth clique JSON output");
  gen_cmd->add_option("--graph", gen.graph, "Temporal graph JSON output (quantile edge sets)");
  gen_cmd->add_option("--q", gen.q, "Distance quantile for edge sets");

  KernelArgs kernel;
  auto* kernel_cmd = app.add_subcommand("kernel", "Build the total similarity matrix");
  kernel_cmd->add_option("--points", kernel.points, "Point CSV (t,vertex,coord_0,...)");
  kernel_cmd->add_option("--bags", kernel.bags, "Bag CSV (vertex,coord_0,...), one file per slice");
  kernel_cmd->add_option("--base-width", kernel.base_width, "RBF width for the set kernel base");
  kernel_cmd->add_option("--out", kernel.out, "Total similarity JSON output")->required();
  kernel_cmd->add_option("--slices-dir", kernel.slices_dir, "Directory for per-slice matrices");
  kernel_cmd->add_option("--subpoly", kernel.subpoly, "Sub-polynomial exponent in (0,1); 0 disables");
  kernel_cmd->add_flag("--global-width", kernel.global_width, "One median width pooled over all slices");
  kernel_cmd->add_option("--median", kernel.median, "Median of squared or euclidean distances");

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Find a persistent soft-clique");
  solve_cmd->add_option("--graph", solve_args.graph, "Temporal graph JSON")->required();
  solve_cmd->add_option("--similarity", solve_args.similarity, "Similarity matrix JSON")->required();
  solve_cmd->add_option("--method", solve_args.method, "l1, l2 or hard");
  solve_cmd->add_option("--eta", solve_args.eta, "Penalty trade-off");
  solve_cmd->add_option("--iters", solve_args.iters, "Maximum l2 alternations");
  solve_cmd->add_option("--exact-limit", solve_args.exact_limit, "Largest n solved exactly");
  solve_cmd->add_option("--seed", solve_args.seed, "Seed for extra local-search restarts");
  solve_cmd->add_option("--restarts", solve_args.restarts, "Extra random local-search restarts");
  solve_cmd->add_option("--out", solve_args.out, "Solution JSON output")->required();

  BaselineArgs base;
  auto* base_cmd = app.add_subcommand("baseline", "Dominant-set mode on the averaged affinity");
  base_cmd->add_option("--similarity-slices", base.slices_dir, "Directory of per-slice matrix JSON files")
      ->required();
  base_cmd->add_option("--out", base.out, "Result JSON output")->required();
  base_cmd->add_option("--tol", base.tol, "Convergence tolerance on the largest entry change");
  base_cmd->add_option("--max-steps", base.max_steps, "Replicator step limit");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run the synthetic benchmark");
  bench_cmd->add_option("--datasets", bench.datasets, "Comma-separated datasets");
  bench_cmd->add_option("--methods", bench.methods, "Comma-separated methods: l1,l2,baseline,hard");
  bench_cmd->add_option("--repeats", bench.repeats, "Repeats per dataset");
  bench_cmd->add_option("--q", bench.q, "Distance quantile for edge sets");
  bench_cmd->add_option("--eta", bench.eta, "Penalty trade-off");
  bench_cmd->add_option("--seed", bench.seed, "Base seed; repeat r uses seed + r");
  bench_cmd->add_option("--iters", bench.iters, "Maximum l2 alternations");
  bench_cmd->add_option("--exact-limit", bench.exact_limit, "Largest n solved exactly");
  bench_cmd->add_option("--out", bench.out, "Summary CSV output")->required();
  bench_cmd->add_option("--runs-out", bench.runs_out, "Per-run JSONL output (default: --out with .jsonl)");
  bench_cmd->add_flag("--timing", bench.timing, "Record wall-clock runtimes (output no longer reproducible)");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Print the Jaccard index of a solution");
  eval_cmd->add_option("--truth", eval.truth, "Ground-truth JSON")->required();
  eval_cmd->add_option("--solution", eval.solution, "Solution JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e);
      return 0;
    }
    std::cerr << app.help() << '\n';
    app.exit(e);
    return 2;
  }

  try {
    if (*gen_cmd) run_gen(gen);
    else if (*kernel_cmd) run_kernel(kernel);
    else if (*solve_cmd) run_solve(solve_args);
    else if (*base_cmd) run_baseline(base);
    else if (*bench_cmd) run_bench(bench);
    else if (*eval_cmd) run_eval(eval);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace softclique::cli
