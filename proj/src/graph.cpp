#include "dsb/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace dsb {

VertexSet::VertexSet(std::vector<Vertex> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

VertexSet VertexSet::all(Vertex n) {
  std::vector<Vertex> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), Vertex{0});
  return VertexSet(std::move(v));
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

std::vector<char> VertexSet::mask(Vertex n) const {
  std::vector<char> m(static_cast<std::size_t>(n), 0);
  for (Vertex v : members_) {
    if (v < 0 || v >= n) throw DomainError("vertex " + std::to_string(v) + " out of range");
    m[static_cast<std::size_t>(v)] = 1;
  }
  return m;
}

Graph::Graph(Vertex n, std::vector<Edge> edges, std::vector<std::string> labels)
    : n_(n), edges_(std::move(edges)), labels_(std::move(labels)) {
  if (n_ < 0) throw std::invalid_argument("negative vertex count");
  if (labels_.empty()) {
    labels_.reserve(static_cast<std::size_t>(n_));
    for (Vertex v = 0; v < n_; ++v) labels_.push_back(std::to_string(v));
  }
  if (labels_.size() != static_cast<std::size_t>(n_)) throw std::invalid_argument("label table size mismatch");

  std::set<std::pair<Vertex, Vertex>> seen;
  std::vector<std::size_t> deg(static_cast<std::size_t>(n_), 0);
  for (auto& e : edges_) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u == e.v) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
    if (e.u < 0 || e.v >= n_) throw std::invalid_argument("edge endpoint out of range");
    if (!seen.emplace(e.u, e.v).second) throw std::invalid_argument("duplicate edge");
    ++deg[static_cast<std::size_t>(e.u)];
    ++deg[static_cast<std::size_t>(e.v)];
  }
  offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
  for (Vertex v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
  incidences_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (EdgeIndex i = 0; i < m(); ++i) {
    const Edge& e = edges_[i];
    incidences_[fill[e.u]++] = {e.v, i};
    incidences_[fill[e.v]++] = {e.u, i};
  }
}

std::span<const Incidence> Graph::incident(Vertex v) const {
  auto b = offsets_[static_cast<std::size_t>(v)];
  auto e = offsets_[static_cast<std::size_t>(v) + 1];
  return {incidences_.data() + b, e - b};
}

EdgeIndex Graph::find_edge(Vertex u, Vertex v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return -1;
  if (degree(u) > degree(v)) std::swap(u, v);
  for (const auto& inc : incident(u))
    if (inc.neighbor == v) return inc.edge;
  return -1;
}

WeightVector::WeightVector(std::vector<double> w) : w_(std::move(w)) {
  for (double x : w_)
    if (!std::isfinite(x) || x < 0.0) throw std::invalid_argument("edge weights must be finite and >= 0");
}

WeightVector WeightVector::constant(EdgeIndex m, double value) {
  return WeightVector(std::vector<double>(static_cast<std::size_t>(m), value));
}

double WeightVector::max() const {
  double r = 0.0;
  for (double x : w_) r = std::max(r, x);
  return r;
}

double WeightVector::sum() const { return std::accumulate(w_.begin(), w_.end(), 0.0); }

void check_weights(const Graph& g, const WeightVector& w) {
  if (w.size() != static_cast<std::size_t>(g.m()))
    throw std::invalid_argument("weight vector length " + std::to_string(w.size()) + " does not match m = " +
                                std::to_string(g.m()));
}

std::vector<EdgeIndex> induced_edges(const Graph& g, const VertexSet& s) {
  auto in = s.mask(g.n());
  std::vector<EdgeIndex> out;
  for (EdgeIndex i = 0; i < g.m(); ++i) {
    const Edge& e = g.edge(i);
    if (in[e.u] && in[e.v]) out.push_back(i);
  }
  return out;
}

double density(const Graph& g, const WeightVector& w, const VertexSet& s) {
  if (s.empty()) throw DomainError("density of the empty set is undefined");
  check_weights(g, w);
  double total = 0.0;
  for (EdgeIndex e : induced_edges(g, s)) total += w[e];
  return total / static_cast<double>(s.size());
}

std::vector<EdgeIndex> star_edges(const Graph& g, std::span<const char> in_set, Vertex v) {
  std::vector<EdgeIndex> out;
  for (const auto& inc : g.incident(v))
    if (in_set[static_cast<std::size_t>(inc.neighbor)]) out.push_back(inc.edge);
  return out;
}

double star_weight(const Graph& g, const WeightVector& w, std::span<const char> in_set, Vertex v) {
  double total = 0.0;
  for (const auto& inc : g.incident(v))
    if (in_set[static_cast<std::size_t>(inc.neighbor)]) total += w[inc.edge];
  return total;
}

double degree_in(const Graph& g, const WeightVector& w, const VertexSet& s, Vertex v) {
  if (!s.contains(v)) throw DomainError("vertex " + std::to_string(v) + " is not in the set");
  check_weights(g, w);
  auto in = s.mask(g.n());
  return star_weight(g, w, in, v);
}

std::size_t max_degree(const Graph& g) {
  std::size_t best = 0;
  for (Vertex v = 0; v < g.n(); ++v) best = std::max(best, g.degree(v));
  return best;
}

double half_degree_density(std::span<const double> degrees) {
  if (degrees.empty()) throw DomainError("density of the empty set is undefined");
  double total = 0.0;
  for (double d : degrees) total += d;
  return 0.5 * total / static_cast<double>(degrees.size());
}

}  // namespace dsb
