#include "dsb/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace dsb {

FlowNetwork::FlowNetwork(Node nodes) : first_(static_cast<std::size_t>(nodes)) {}

FlowNetwork::Node FlowNetwork::add_node() {
  first_.emplace_back();
  return static_cast<Node>(first_.size() - 1);
}

FlowNetwork::ArcId FlowNetwork::add_arc(Node from, Node to, double capacity) {
  if (capacity < 0.0) throw std::invalid_argument("negative arc capacity");
  auto id = static_cast<ArcId>(to_.size());
  to_.push_back(to);
  cap_.push_back(capacity);
  flow_.push_back(0.0);
  to_.push_back(from);
  cap_.push_back(0.0);
  flow_.push_back(0.0);
  first_[from].push_back(id);
  first_[to].push_back(id + 1);
  return id;
}

void FlowNetwork::set_capacity(ArcId arc, double capacity) {
  if (capacity < 0.0) throw std::invalid_argument("negative arc capacity");
  cap_[arc] = capacity;
}

void FlowNetwork::reset_flow() { std::fill(flow_.begin(), flow_.end(), 0.0); }

bool FlowNetwork::bfs(Node s, Node t, double tol) {
  level_.assign(first_.size(), -1);
  std::queue<Node> q;
  level_[s] = 0;
  q.push(s);
  while (!q.empty()) {
    Node v = q.front();
    q.pop();
    for (ArcId a : first_[v]) {
      Node w = to_[a];
      if (level_[w] < 0 && cap_[a] - flow_[a] > tol) {
        level_[w] = level_[v] + 1;
        q.push(w);
      }
    }
  }
  return level_[t] >= 0;
}

double FlowNetwork::dfs(Node v, Node t, double pushed, double tol) {
  if (v == t) return pushed;
  for (auto& i = it_[v]; i < first_[v].size(); ++i) {
    ArcId a = first_[v][i];
    Node w = to_[a];
    double r = cap_[a] - flow_[a];
    if (level_[w] != level_[v] + 1 || r <= tol) continue;
    double got = dfs(w, t, std::min(pushed, r), tol);
    if (got > 0.0) {
      flow_[a] += got;
      flow_[a ^ 1] -= got;
      return got;
    }
  }
  return 0.0;
}

double FlowNetwork::max_flow(Node source, Node sink, double tolerance) {
  double total = 0.0;
  while (bfs(source, sink, tolerance)) {
    it_.assign(first_.size(), 0);
    while (double f = dfs(source, sink, std::numeric_limits<double>::infinity(), tolerance)) total += f;
  }
  return total;
}

std::vector<char> FlowNetwork::residual_reach(Node from, double tolerance) const {
  std::vector<char> seen(first_.size(), 0);
  std::vector<Node> stack{from};
  seen[from] = 1;
  while (!stack.empty()) {
    Node v = stack.back();
    stack.pop_back();
    for (ArcId a : first_[v]) {
      Node w = to_[a];
      if (!seen[w] && cap_[a] - flow_[a] > tolerance) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace dsb
