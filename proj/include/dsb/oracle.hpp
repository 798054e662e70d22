#pragma once

#include <cstdint>
#include <map>
#include <span>

#include "dsb/graph.hpp"
#include "dsb/rng.hpp"

namespace dsb {

struct NoiseModel {
  enum class Kind { none, gaussian_per_edge };
  Kind kind = Kind::gaussian_per_edge;
  /// Sub-Gaussian scale; the per-edge noise is N(0, R^2).
  double R = 1.0;

  static NoiseModel none() { return {Kind::none, 1.0}; }
  static NoiseModel gaussian(double r = 1.0) { return {Kind::gaussian_per_edge, r}; }
};

struct QueryCounters {
  std::uint64_t total = 0;
  std::uint64_t single_edge = 0;
  /// query size -> number of queries of that size
  std::map<std::size_t, std::uint64_t> by_size;
};

/// Blurred-graph feedback: each query returns sum_{e in F} (w(e) + eta_e)
/// with fresh i.i.d. eta_e ~ N(0, R^2). The true weights never leave the
/// oracle except through observations.
///
/// Query q draws its noise from the stream Rng(seed, q), so a run is fully
/// determined by the seed and the sequence of queried sets.
class SamplingOracle {
 public:
  /// Keeps a reference to g; the graph must outlive the oracle.
  SamplingOracle(const Graph& g, WeightVector w, NoiseModel noise, std::uint64_t seed);

  /// One noisy observation of the edge set F (summed in the given order).
  double sample_edges(std::span<const EdgeIndex> edges);
  /// One observation of E_S(v), the edges from v to other members of S.
  double sample_vertex_star(const VertexSet& s, Vertex v);
  /// Same, with S given as a membership mask.
  double sample_vertex_star(std::span<const char> in_set, Vertex v);

  [[nodiscard]] const QueryCounters& counters() const { return counters_; }
  [[nodiscard]] const Graph& graph() const { return g_; }
  [[nodiscard]] const NoiseModel& noise() const { return noise_; }
  [[nodiscard]] std::uint64_t seed() const { return seed_; }

  /// Evaluation-only access for harness code that scores outputs.
  [[nodiscard]] const WeightVector& hidden_weights() const { return w_; }

 private:
  const Graph& g_;
  WeightVector w_;
  NoiseModel noise_;
  std::uint64_t seed_;
  QueryCounters counters_;
  std::vector<EdgeIndex> scratch_;
};

}  // namespace dsb
