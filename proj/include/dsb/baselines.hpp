#pragma once

#include <cstdint>
#include <vector>

#include "dsb/dslin.hpp"
#include "dsb/graph.hpp"
#include "dsb/oracle.hpp"
#include "dsb/rng.hpp"

namespace dsb {

struct NaiveResult {
  VertexSet set;
  /// Running per-edge averages of the equal-split rewards.
  std::vector<double> edge_average;
  /// Number of sampled arms that contained each edge.
  std::vector<std::uint64_t> edge_visits;
  /// Rounds that drew an arm without induced edges (no query issued).
  std::uint64_t skipped = 0;
};

/// Naive baseline: T uniformly random arms; each reward r is split equally
/// over the |E(S)| induced edges and folded into per-edge running means;
/// one exact solve on the averages at the end.
NaiveResult run_naive(const Graph& g, const ArmFamily& family, SamplingOracle& oracle, std::uint64_t T, Rng& rng);

struct ROracleOptions {
  double gamma = 0.9;
  double epsilon = 0.9;
  /// Use l_e = min(w_e - 1, 0) exactly as printed instead of max(w_e - 1, 0).
  /// Negative bounds are clipped to 0 before any densest-subgraph solve.
  bool literal_lower_bound = false;
};

struct ROracleResult {
  VertexSet set;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> lower_out;
  std::vector<double> upper_out;
  /// t_e per edge (0 for degenerate intervals)
  std::vector<std::uint64_t> samples;
  double lower_opt = 0.0;
  std::uint64_t single_edge_queries = 0;
};

/// t_e = ceil(m (r - l)^2 ln(2m / gamma) / (epsilon^2 f^2)).
std::uint64_t r_oracle_sample_count(EdgeIndex m, double width, double gamma, double epsilon, double lower_opt);

/// R-Oracle with intervals [l_e, r_e] built from `true_weights` (harness
/// privilege): l_e = max(w_e - 1, 0), r_e = w_e + 1. Edges with l_e < r_e are
/// sampled t_e times as single edges; the empirical mean, clamped to
/// [l_e, r_e], gives [max(l, p - d), min(r, p + d)] with
/// d = epsilon f / sqrt(2m); the output is the exact densest set under the
/// new lower bounds. Throws DomainError when f = f_{w-}(S*_{w-}) is 0.
ROracleResult run_r_oracle(const Graph& g, const WeightVector& true_weights, SamplingOracle& oracle,
                           const ROracleOptions& options = {});

}  // namespace dsb
