#pragma once

#include <bit>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "dsb/graph.hpp"
#include "dsb/rng.hpp"

namespace dsb::test {

inline Graph complete(Vertex n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) e.push_back({u, v});
  return Graph(n, e);
}

inline Graph star(Vertex leaves) {
  std::vector<Edge> e;
  for (Vertex v = 1; v <= leaves; ++v) e.push_back({0, v});
  return Graph(leaves + 1, e);
}

// triangle {0,1,2} plus pendant {0,3}
inline Graph lollipop() { return Graph(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}}); }

inline Graph random_graph(Rng& rng, Vertex n, double p) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.uniform01() < p) e.push_back({u, v});
  return Graph(n, e);
}

// Random graph with at least one edge.
inline Graph random_nonempty_graph(Rng& rng, Vertex n, double p) {
  while (true) {
    auto g = random_graph(rng, n, p);
    if (g.m() > 0) return g;
  }
}

inline WeightVector random_weights(Rng& rng, EdgeIndex m, double lo, double hi) {
  std::vector<double> w(static_cast<std::size_t>(m));
  for (auto& x : w) x = rng.uniform(lo, hi);
  return WeightVector(std::move(w));
}

inline VertexSet from_mask(std::uint32_t mask, Vertex n) {
  std::vector<Vertex> s;
  for (Vertex v = 0; v < n; ++v)
    if (mask >> v & 1U) s.push_back(v);
  return VertexSet(std::move(s));
}

// Plain enumeration, densities recomputed from the edge list for every subset.
struct Enumerated {
  VertexSet best;
  double best_value = -std::numeric_limits<double>::infinity();
  double second_value = -std::numeric_limits<double>::infinity();  // best over S != best
};

inline double plain_density(const Graph& g, const WeightVector& w, std::uint32_t mask) {
  double s = 0.0;
  for (EdgeIndex e = 0; e < g.m(); ++e) {
    const auto& ed = g.edge(e);
    if ((mask >> ed.u & 1U) && (mask >> ed.v & 1U)) s += w[e];
  }
  return s / static_cast<double>(std::popcount(mask));
}

// Ties within rel 1e-12 go to the smaller set, then the lexicographically smaller one.
inline Enumerated enumerate(const Graph& g, const WeightVector& w) {
  Enumerated r;
  const std::uint32_t full = 1U << g.n();
  std::vector<double> vals(full, 0.0);
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    const double d = plain_density(g, w, mask);
    vals[mask] = d;
    const auto cand = from_mask(mask, g.n());
    if (r.best.empty()) {
      r.best = cand;
      r.best_value = d;
      continue;
    }
    const double tol = 1e-12 * std::max(1.0, std::abs(r.best_value));
    bool better = d > r.best_value + tol;
    if (!better && std::abs(d - r.best_value) <= tol) {
      better = cand.size() < r.best.size() || (cand.size() == r.best.size() && cand < r.best);
    }
    if (better) {
      r.best = cand;
      r.best_value = d;
    }
  }
  std::uint32_t best_mask = 0;
  for (Vertex v : r.best) best_mask |= 1U << v;
  for (std::uint32_t mask = 1; mask < full; ++mask)
    if (mask != best_mask) r.second_value = std::max(r.second_value, vals[mask]);
  return r;
}

}  // namespace dsb::test
