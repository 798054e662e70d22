#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dsb {

using Vertex = std::int32_t;
using EdgeIndex = std::int32_t;

/// Raised when an operation is called outside its mathematical domain
/// (empty vertex set, vertex not in set, empty query, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct Edge {
  Vertex u;
  Vertex v;  // u < v
};

struct Incidence {
  Vertex neighbor;
  EdgeIndex edge;
};

/// Sorted set of vertex indices.
class VertexSet {
 public:
  VertexSet() = default;
  /// Sorts and deduplicates.
  explicit VertexSet(std::vector<Vertex> members);

  static VertexSet all(Vertex n);

  [[nodiscard]] std::span<const Vertex> members() const { return members_; }
  [[nodiscard]] std::size_t size() const { return members_.size(); }
  [[nodiscard]] bool empty() const { return members_.empty(); }
  [[nodiscard]] bool contains(Vertex v) const;
  [[nodiscard]] auto begin() const { return members_.begin(); }
  [[nodiscard]] auto end() const { return members_.end(); }

  /// Membership bitmap of length n.
  [[nodiscard]] std::vector<char> mask(Vertex n) const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  /// Lexicographic order on the sorted member lists.
  friend auto operator<=>(const VertexSet& a, const VertexSet& b) { return a.members_ <=> b.members_; }

 private:
  std::vector<Vertex> members_;
};

/// Immutable simple undirected graph with dense indices.
///
/// Edge indices follow insertion order; each vertex's incidence list is
/// ordered by ascending edge index, which fixes the summation order of every
/// weighted-degree computation in the library.
class Graph {
 public:
  Graph() = default;
  /// Throws std::invalid_argument on self-loops, duplicates or out-of-range ids.
  Graph(Vertex n, std::vector<Edge> edges, std::vector<std::string> labels = {});

  [[nodiscard]] Vertex n() const { return n_; }
  [[nodiscard]] EdgeIndex m() const { return static_cast<EdgeIndex>(edges_.size()); }
  [[nodiscard]] std::span<const Edge> edges() const { return edges_; }
  [[nodiscard]] const Edge& edge(EdgeIndex e) const { return edges_[static_cast<std::size_t>(e)]; }
  [[nodiscard]] std::span<const Incidence> incident(Vertex v) const;
  [[nodiscard]] std::size_t degree(Vertex v) const { return incident(v).size(); }
  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
  [[nodiscard]] const std::string& label(Vertex v) const { return labels_[static_cast<std::size_t>(v)]; }

  /// Edge index of {u, v}, or -1.
  [[nodiscard]] EdgeIndex find_edge(Vertex u, Vertex v) const;

 private:
  Vertex n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;  // CSR offsets, size n + 1
  std::vector<Incidence> incidences_;
  std::vector<std::string> labels_;
};

/// Per-edge nonnegative weights aligned with Graph edge indices.
class WeightVector {
 public:
  WeightVector() = default;
  /// Throws std::invalid_argument on negative or non-finite entries.
  explicit WeightVector(std::vector<double> w);

  static WeightVector constant(EdgeIndex m, double value);

  [[nodiscard]] std::size_t size() const { return w_.size(); }
  [[nodiscard]] double operator[](EdgeIndex e) const { return w_[static_cast<std::size_t>(e)]; }
  [[nodiscard]] std::span<const double> values() const { return w_; }
  [[nodiscard]] double max() const;
  [[nodiscard]] double sum() const;

 private:
  std::vector<double> w_;
};

/// Throws std::invalid_argument if w does not match g.
void check_weights(const Graph& g, const WeightVector& w);

/// Edges with both endpoints in s, ascending.
std::vector<EdgeIndex> induced_edges(const Graph& g, const VertexSet& s);

/// w(E(S)) / |S|.
double density(const Graph& g, const WeightVector& w, const VertexSet& s);

/// Weighted degree of v inside G[S], summed in ascending edge-index order.
double degree_in(const Graph& g, const WeightVector& w, const VertexSet& s, Vertex v);

/// Edges joining v to members of the mask, ascending edge index (E_S(v)).
std::vector<EdgeIndex> star_edges(const Graph& g, std::span<const char> in_set, Vertex v);

/// Sum of w over the star of v restricted to the mask.
double star_weight(const Graph& g, const WeightVector& w, std::span<const char> in_set, Vertex v);

/// Unweighted maximum degree.
std::size_t max_degree(const Graph& g);

/// Score shared by greedy peeling and DS-SR: (1/2) * sum(degrees) / count.
/// Summation runs in the order given.
double half_degree_density(std::span<const double> degrees);

}  // namespace dsb
