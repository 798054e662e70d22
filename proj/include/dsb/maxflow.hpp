#pragma once

#include <cstdint>
#include <vector>

namespace dsb {

/// Dinic's algorithm on real capacities. Arcs are stored in pairs
/// (forward at even id, reverse at id ^ 1). A residual capacity at or below
/// the tolerance passed to max_flow counts as saturated.
class FlowNetwork {
 public:
  using Node = std::int32_t;
  using ArcId = std::int32_t;

  explicit FlowNetwork(Node nodes = 0);

  Node add_node();
  ArcId add_arc(Node from, Node to, double capacity);
  void set_capacity(ArcId arc, double capacity);
  /// Zeroes all flow, keeping capacities.
  void reset_flow();

  double max_flow(Node source, Node sink, double tolerance);

  [[nodiscard]] Node nodes() const { return static_cast<Node>(first_.size()); }
  [[nodiscard]] double residual(ArcId arc) const { return cap_[arc] - flow_[arc]; }
  [[nodiscard]] Node head(ArcId arc) const { return to_[arc]; }
  /// Outgoing arc ids of a node (forward and reverse arcs alike).
  [[nodiscard]] const std::vector<ArcId>& out_arcs(Node v) const { return first_[v]; }

  /// Nodes reachable from `from` through arcs with residual > tolerance.
  [[nodiscard]] std::vector<char> residual_reach(Node from, double tolerance) const;

 private:
  bool bfs(Node s, Node t, double tol);
  double dfs(Node v, Node t, double pushed, double tol);

  std::vector<std::vector<ArcId>> first_;
  std::vector<Node> to_;
  std::vector<double> cap_;
  std::vector<double> flow_;
  std::vector<std::int32_t> level_;
  std::vector<std::size_t> it_;
};

}  // namespace dsb
