#include "dsb/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace dsb {

SamplingOracle::SamplingOracle(const Graph& g, WeightVector w, NoiseModel noise, std::uint64_t seed)
    : g_(g), w_(std::move(w)), noise_(noise), seed_(seed) {
  check_weights(g_, w_);
  if (noise_.kind == NoiseModel::Kind::gaussian_per_edge && !(std::isfinite(noise_.R) && noise_.R > 0.0))
    throw std::invalid_argument("gaussian noise needs a finite R > 0");
}

double SamplingOracle::sample_edges(std::span<const EdgeIndex> edges) {
  if (edges.empty()) throw DomainError("cannot query an empty edge set");
  double total = 0.0;
  if (noise_.kind == NoiseModel::Kind::none) {
    for (EdgeIndex e : edges) total += w_[e];
  } else {
    Rng stream(seed_, counters_.total);
    for (EdgeIndex e : edges) total += w_[e] + noise_.R * stream.normal();
  }
  ++counters_.total;
  ++counters_.by_size[edges.size()];
  if (edges.size() == 1) ++counters_.single_edge;
  return total;
}

double SamplingOracle::sample_vertex_star(std::span<const char> in_set, Vertex v) {
  if (!in_set[static_cast<std::size_t>(v)]) throw DomainError("vertex " + std::to_string(v) + " is not in the set");
  scratch_.clear();
  for (const auto& inc : g_.incident(v))
    if (in_set[static_cast<std::size_t>(inc.neighbor)]) scratch_.push_back(inc.edge);
  if (scratch_.empty()) throw DomainError("vertex " + std::to_string(v) + " has no neighbors in the set");
  return sample_edges(scratch_);
}

double SamplingOracle::sample_vertex_star(const VertexSet& s, Vertex v) {
  return sample_vertex_star(s.mask(g_.n()), v);
}

}  // namespace dsb
