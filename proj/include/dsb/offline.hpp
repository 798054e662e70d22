#pragma once

#include <span>
#include <vector>

#include "dsb/graph.hpp"

namespace dsb {

struct DensestResult {
  VertexSet set;
  double value = 0.0;
  /// Set when no edge carries positive weight; the result is then ({0}, 0).
  bool degenerate = false;
};

/// Exact densest subgraph by parametric min-cut.
///
/// Reference formulation (Charikar's LP):
///   max sum_e y_e  s.t.  y_e <= x_u, y_e <= x_v for e = {u, v},
///                        sum_v x_v = 1,  x, y >= 0.
/// Instead of solving the LP, we binary-search the density g and answer
/// "is there S with w(S) - g|S| > 0?" with one max-flow on the network
///   source -> edge node e (capacity w_e), e -> u and e -> v (infinite),
///   vertex v -> sink (capacity g),
/// whose minimum source side is a maximizer of w(S) - g|S|. The search stops
/// once the bracket is below 1e-9 * max(1, w_max), a few Dinkelbach steps then
/// drive the incumbent to a fixed point, and ties among maximizers are resolved
/// to the smallest cardinality, then lexicographically smallest, set.
DensestResult exact_densest(const Graph& g, const WeightVector& w);

/// Densest subgraph over sets that contain every vertex flagged in
/// `forced_in` and none flagged in `forced_out` (masks of length n).
/// Throws DomainError when no nonempty set is feasible.
DensestResult constrained_densest(const Graph& g, const WeightVector& w, std::span<const char> forced_in,
                                  std::span<const char> forced_out);

/// Exhaustive search over all 2^n - 1 nonempty subsets; n <= 20.
/// Ties: smallest cardinality, then lexicographic member order.
DensestResult brute_force_densest(const Graph& g, const WeightVector& w);
DensestResult brute_force_densest_serial(const Graph& g, const WeightVector& w);

struct PeelingTrace {
  /// Vertex removed at each of the n - 1 steps.
  std::vector<Vertex> removal_order;
  /// Score of S_n, S_{n-1}, ..., S_1 (the set before each removal, then the last vertex).
  std::vector<double> prefix_scores;
  /// Size of the returned prefix.
  std::size_t best_size = 0;
};

/// Charikar's greedy peeling: repeatedly remove the minimum weighted-degree
/// vertex (smallest index on ties) and return the best prefix (largest on
/// ties). Guarantees density >= OPT / 2.
DensestResult greedy_peeling(const Graph& g, const WeightVector& w, PeelingTrace* trace = nullptr);

/// max f_w(S) over nonempty S != sstar, via one constrained solve per vertex:
/// exclude each member of sstar, force in each non-member.
double second_best_density(const Graph& g, const WeightVector& w, const VertexSet& sstar);

}  // namespace dsb
