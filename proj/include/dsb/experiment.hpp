#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dsb/baselines.hpp"
#include "dsb/dslin.hpp"
#include "dsb/graph.hpp"
#include "dsb/oracle.hpp"

namespace dsb {

enum class Algorithm { dslin, dssr, naive, r_oracle, g_oracle, exact, brute };

std::string to_string(Algorithm a);
/// Accepts the CLI spellings: dslin, dssr, naive, r-oracle, g-oracle, exact, brute.
Algorithm parse_algorithm(const std::string& name);

/// Knockout model: S* is the exact densest set of the unweighted graph;
/// w(e) ~ U(1, 20) on E(S*) and U(1, 100) elsewhere, drawn in edge order.
WeightVector knockout_weights(const Graph& g, std::uint64_t seed);

/// 10^ceil(log10(sum_{i=1}^{n+1} i)), i.e. the smallest power of ten that is
/// at least (n+1)(n+2)/2. Needs n >= 2.
std::uint64_t default_budget(std::int64_t n);

/// Budget DS-SR runs with when none is given: default_budget(n), moved up one
/// power of ten when it equals the overhead (only n = 3), since the schedule
/// needs T > overhead.
std::uint64_t dssr_default_budget(std::int64_t n);

struct ExperimentConfig {
  std::filesystem::path graph_path;
  /// Frozen weights; when absent, knockout weights are drawn from weight_seed.
  std::optional<std::filesystem::path> weights_path;
  std::uint64_t weight_seed = 1;
  Algorithm algorithm = Algorithm::dssr;
  std::vector<std::uint64_t> seeds{1};
  /// DS-SR: T (default dssr_default_budget(n)); Naive: T (default m + 10000).
  std::optional<std::uint64_t> budget;
  /// DS-Lin and Naive arm family: minimum size k and number of arms (default 4m).
  std::size_t k = 10;
  std::optional<std::size_t> arm_count;
  DslinOptions dslin;
  ROracleOptions r_oracle;
  NoiseModel noise = NoiseModel::gaussian(1.0);
  bool compute_opt = true;
  /// Empty: nothing is written.
  std::filesystem::path out_dir;
  bool write_histograms = true;
  bool write_diagnostics = true;
};

struct RunRecord {
  std::string algo;
  std::string graph;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  double quality = 0.0;
  std::optional<double> opt;
  std::size_t out_size = 0;
  std::uint64_t total_queries = 0;
  std::uint64_t single_edge_queries = 0;
  double elapsed_ms = 0.0;
  /// Not serialized in the results CSV; written as a separate histogram file.
  std::map<std::size_t, std::uint64_t> histogram;
  /// DS-SR phase trace or DS-Lin round trace as CSV text; empty otherwise.
  std::string diagnostics_csv;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct AggregateRow {
  std::string algo;
  std::string graph;
  std::size_t runs = 0;
  double quality_mean = 0.0;
  double quality_std = 0.0;
  double opt_mean = 0.0;
  double single_edge_mean = 0.0;
  double total_queries_mean = 0.0;
  double elapsed_ms_mean = 0.0;
};

struct ExperimentResult {
  std::vector<RunRecord> runs;
  /// seed -> error message for seeds that threw.
  std::map<std::uint64_t, std::string> failures;
  AggregateRow aggregate;
};

/// Throws std::invalid_argument for parameters that would fail every seed.
/// Runs one algorithm for every seed (seeds in parallel when OpenMP is on)
/// and, if out_dir is set, writes results.csv, aggregate.csv and one
/// histogram CSV per run. Files are written to a temporary name and renamed.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Runs a single seed on an already loaded instance.
RunRecord run_single(const ExperimentConfig& config, const Graph& g, const WeightVector& w,
                     const std::string& graph_name, std::uint64_t seed, std::optional<double> opt);

AggregateRow aggregate(const std::vector<RunRecord>& runs);

/// histogram[1] / sum(histogram); 0 for an empty histogram.
double single_edge_fraction(const std::map<std::size_t, std::uint64_t>& histogram);

}  // namespace dsb
