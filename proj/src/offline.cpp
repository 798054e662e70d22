#include "dsb/offline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "dsb/kernels.hpp"
#include "dsb/maxflow.hpp"

namespace dsb {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double induced_weight(const Graph& g, const WeightVector& w, const std::vector<char>& in) {
  double total = 0.0;
  for (EdgeIndex e = 0; e < g.m(); ++e)
    if (in[g.edge(e).u] && in[g.edge(e).v]) total += w[e];
  return total;
}

/// Parametric network for max_S w(S) - g|S| under vertex constraints.
class DensityNetwork {
 public:
  DensityNetwork(const Graph& g, const WeightVector& w, std::span<const char> forced_in,
                 std::span<const char> forced_out)
      : g_(g), w_(w), net_(2 + g.n() + g.m()), forced_out_(forced_out.begin(), forced_out.end()) {
    scale_ = std::max(1.0, w.sum());
    tol_ = 1e-13 * scale_;
    for (EdgeIndex e = 0; e < g.m(); ++e) {
      const Edge& ed = g.edge(e);
      const bool blocked = forced_out_[ed.u] || forced_out_[ed.v];
      const auto en = edge_node(e);
      net_.add_arc(kSource, en, blocked ? 0.0 : w[e]);
      net_.add_arc(en, vertex_node(ed.u), kInf);
      net_.add_arc(en, vertex_node(ed.v), kInf);
    }
    sink_arcs_.resize(static_cast<std::size_t>(g.n()));
    for (Vertex v = 0; v < g.n(); ++v) {
      if (!forced_in.empty() && forced_in[v]) net_.add_arc(kSource, vertex_node(v), kInf);
      sink_arcs_[v] = net_.add_arc(vertex_node(v), kSink, forced_out_[v] ? kInf : 0.0);
    }
  }

  /// Runs the max-flow at density g and returns the minimal source side.
  std::vector<char> solve(double g) {
    for (Vertex v = 0; v < g_.n(); ++v)
      if (!forced_out_[v]) net_.set_capacity(sink_arcs_[v], g);
    net_.reset_flow();
    net_.max_flow(kSource, kSink, tol_);
    auto reach = net_.residual_reach(kSource, tol_);
    std::vector<char> in(static_cast<std::size_t>(g_.n()), 0);
    for (Vertex v = 0; v < g_.n(); ++v) in[v] = reach[vertex_node(v)];
    return in;
  }

  /// Inclusion-minimal maximizers of w(S) - g|S| at the g of the last solve():
  /// the minimal source side if it contains vertices, otherwise one set per
  /// sink component of the residual graph restricted to nodes that neither
  /// the source reaches nor can reach the sink.
  std::vector<std::vector<char>> minimal_maximizers() const;

  double tolerance() const { return tol_; }

 private:
  static constexpr FlowNetwork::Node kSource = 0;
  static constexpr FlowNetwork::Node kSink = 1;
  FlowNetwork::Node vertex_node(Vertex v) const { return 2 + v; }
  FlowNetwork::Node edge_node(EdgeIndex e) const { return 2 + g_.n() + e; }

  const Graph& g_;
  const WeightVector& w_;
  FlowNetwork net_;
  std::vector<char> forced_out_;
  std::vector<FlowNetwork::ArcId> sink_arcs_;
  double scale_ = 1.0;
  double tol_ = 0.0;
};

std::vector<std::vector<char>> DensityNetwork::minimal_maximizers() const {
  using Node = FlowNetwork::Node;
  const Node total = net_.nodes();
  const auto from_source = net_.residual_reach(kSource, tol_);

  std::vector<char> base(static_cast<std::size_t>(g_.n()), 0);
  bool base_nonempty = false;
  for (Vertex v = 0; v < g_.n(); ++v) {
    base[v] = from_source[vertex_node(v)];
    base_nonempty = base_nonempty || base[v];
  }
  if (base_nonempty) return {base};

  // Nodes with a residual path to the sink (reverse search).
  std::vector<char> to_sink(static_cast<std::size_t>(total), 0);
  std::vector<Node> stack{kSink};
  to_sink[kSink] = 1;
  while (!stack.empty()) {
    Node y = stack.back();
    stack.pop_back();
    for (auto rev : net_.out_arcs(y)) {
      Node x = net_.head(rev);
      if (!to_sink[x] && net_.residual(rev ^ 1) > tol_) {
        to_sink[x] = 1;
        stack.push_back(x);
      }
    }
  }
  std::vector<char> eligible(static_cast<std::size_t>(total), 0);
  for (Node x = 2; x < total; ++x) eligible[x] = !from_source[x] && !to_sink[x];

  // Iterative Tarjan over eligible nodes and residual arcs.
  std::vector<std::int32_t> index(static_cast<std::size_t>(total), -1), low(static_cast<std::size_t>(total), 0),
      comp(static_cast<std::size_t>(total), -1);
  std::vector<char> on_stack(static_cast<std::size_t>(total), 0);
  std::vector<Node> scc_stack;
  std::vector<std::pair<Node, std::size_t>> call;
  std::int32_t counter = 0, ncomp = 0;
  for (Node root = 2; root < total; ++root) {
    if (!eligible[root] || index[root] >= 0) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    scc_stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      const auto& arcs = net_.out_arcs(v);
      if (pos < arcs.size()) {
        auto a = arcs[pos++];
        Node w = net_.head(a);
        if (!eligible[w] || net_.residual(a) <= tol_) continue;
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          scc_stack.push_back(w);
          on_stack[w] = 1;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        Node x;
        do {
          x = scc_stack.back();
          scc_stack.pop_back();
          on_stack[x] = 0;
          comp[x] = ncomp;
        } while (x != v);
        ++ncomp;
      }
      Node done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }

  std::vector<char> is_sink(static_cast<std::size_t>(ncomp), 1);
  for (Node x = 2; x < total; ++x) {
    if (!eligible[x]) continue;
    for (auto a : net_.out_arcs(x)) {
      Node w = net_.head(a);
      if (eligible[w] && net_.residual(a) > tol_ && comp[w] != comp[x]) is_sink[comp[x]] = 0;
    }
  }
  std::vector<std::vector<char>> out;
  std::vector<std::int32_t> slot(static_cast<std::size_t>(ncomp), -1);
  for (Vertex v = 0; v < g_.n(); ++v) {
    Node x = vertex_node(v);
    if (!eligible[x] || !is_sink[comp[x]]) continue;
    auto& s = slot[comp[x]];
    if (s < 0) {
      s = static_cast<std::int32_t>(out.size());
      out.emplace_back(static_cast<std::size_t>(g_.n()), 0);
    }
    out[s][v] = 1;
  }
  return out;
}

VertexSet to_set(const std::vector<char>& in) {
  std::vector<Vertex> members;
  for (std::size_t v = 0; v < in.size(); ++v)
    if (in[v]) members.push_back(static_cast<Vertex>(v));
  return VertexSet(std::move(members));
}

struct Scored {
  std::vector<char> in;
  std::size_t size = 0;
  double value = 0.0;
};

Scored score(const Graph& g, const WeightVector& w, std::vector<char> in) {
  Scored s;
  s.size = static_cast<std::size_t>(std::count(in.begin(), in.end(), 1));
  s.value = s.size == 0 ? -kInf : induced_weight(g, w, in) / static_cast<double>(s.size);
  s.in = std::move(in);
  return s;
}

bool all_zero(const WeightVector& w) {
  return std::all_of(w.values().begin(), w.values().end(), [](double x) { return x == 0.0; });
}

DensestResult degenerate_result() { return {VertexSet({0}), 0.0, true}; }

DensestResult solve_densest(const Graph& g, const WeightVector& w, std::span<const char> forced_in,
                            std::span<const char> forced_out, bool tie_break) {
  const auto n = static_cast<std::size_t>(g.n());
  // Feasible starting point: everything not forced out.
  std::vector<char> start(n, 0);
  for (std::size_t v = 0; v < n; ++v) start[v] = forced_out.empty() || !forced_out[v];
  for (std::size_t v = 0; v < n; ++v)
    if (!forced_in.empty() && forced_in[v] && !start[v])
      throw DomainError("vertex " + std::to_string(v) + " is both forced in and forced out");
  Scored best = score(g, w, std::move(start));
  if (best.size == 0) throw DomainError("no nonempty vertex set satisfies the constraints");

  std::vector<char> out_mask = forced_out.empty() ? std::vector<char>(n, 0)
                                                  : std::vector<char>(forced_out.begin(), forced_out.end());
  DensityNetwork net(g, w, forced_in, out_mask);

  double hi = 0.0;
  for (Vertex v = 0; v < g.n(); ++v) {
    double d = 0.0;
    for (const auto& inc : g.incident(v)) d += w[inc.edge];
    hi = std::max(hi, 0.5 * d);
  }
  hi = std::max(hi, best.value);
  double lo = best.value;
  const double tol = 1e-9 * std::max(1.0, w.max());

  auto improve = [&](double at) {
    Scored cand = score(g, w, net.solve(at));
    if (cand.size > 0 && cand.value > at && cand.value > best.value) {
      best = std::move(cand);
      return true;
    }
    return false;
  };

  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (improve(mid))
      lo = std::max(mid, best.value);
    else
      hi = mid;
  }
  // Dinkelbach steps: re-solve at the incumbent density until no set beats it.
  for (int it = 0; it < 64 && improve(best.value); ++it) {
  }

  if (tie_break) {
    net.solve(best.value);
    const double eq = tol;
    Scored chosen = best;
    for (auto& cand_in : net.minimal_maximizers()) {
      Scored c = score(g, w, std::move(cand_in));
      if (c.size == 0 || c.value < best.value - eq) continue;
      const bool better_value = c.value > chosen.value + eq;
      const bool tied = std::abs(c.value - chosen.value) <= eq;
      if (better_value || (tied && (c.size < chosen.size || (c.size == chosen.size && to_set(c.in) < to_set(chosen.in)))))
        chosen = std::move(c);
    }
    best = std::move(chosen);
  }
  return {to_set(best.in), best.value, false};
}

}  // namespace

DensestResult exact_densest(const Graph& g, const WeightVector& w) {
  if (g.n() < 1) throw DomainError("exact_densest needs at least one vertex");
  check_weights(g, w);
  if (all_zero(w)) return degenerate_result();
  return solve_densest(g, w, {}, {}, true);
}

DensestResult constrained_densest(const Graph& g, const WeightVector& w, std::span<const char> forced_in,
                                  std::span<const char> forced_out) {
  if (g.n() < 1) throw DomainError("constrained_densest needs at least one vertex");
  check_weights(g, w);
  const auto n = static_cast<std::size_t>(g.n());
  if ((!forced_in.empty() && forced_in.size() != n) || (!forced_out.empty() && forced_out.size() != n))
    throw std::invalid_argument("constraint masks must have length n");
  return solve_densest(g, w, forced_in, forced_out, false);
}

namespace {

std::vector<double> subset_weights(const Graph& g, const WeightVector& w) {
  const int n = g.n();
  std::vector<double> ws(std::size_t{1} << n, 0.0);
  for (std::uint32_t mask = 1; mask < ws.size(); ++mask) {
    const int v = std::countr_zero(mask);
    const std::uint32_t rest = mask & (mask - 1);
    double add = 0.0;
    for (const auto& inc : g.incident(v))
      if ((rest >> inc.neighbor) & 1U) add += w[inc.edge];
    ws[mask] = ws[rest] + add;
  }
  return ws;
}

DensestResult from_mask(const Graph& g, const WeightVector& w, std::uint32_t mask) {
  std::vector<Vertex> members;
  for (Vertex v = 0; v < g.n(); ++v)
    if ((mask >> v) & 1U) members.push_back(v);
  VertexSet s(std::move(members));
  const double value = density(g, w, s);
  return {std::move(s), value, false};
}

void check_brute(const Graph& g, const WeightVector& w) {
  if (g.n() < 1) throw DomainError("brute_force_densest needs at least one vertex");
  if (g.n() > 20) throw DomainError("brute_force_densest refuses n > 20 (got " + std::to_string(g.n()) + ")");
  check_weights(g, w);
}

}  // namespace

DensestResult brute_force_densest(const Graph& g, const WeightVector& w) {
  check_brute(g, w);
  auto ws = subset_weights(g, w);
  return from_mask(g, w, kernels::best_subset(ws, g.n()).mask);
}

DensestResult brute_force_densest_serial(const Graph& g, const WeightVector& w) {
  check_brute(g, w);
  auto ws = subset_weights(g, w);
  return from_mask(g, w, kernels::best_subset_serial(ws, g.n()).mask);
}

DensestResult greedy_peeling(const Graph& g, const WeightVector& w, PeelingTrace* trace) {
  if (g.n() < 1) throw DomainError("greedy_peeling needs at least one vertex");
  check_weights(g, w);
  const auto n = static_cast<std::size_t>(g.n());
  std::vector<char> alive(n, 1);
  std::vector<double> deg(n, 0.0);
  for (Vertex v = 0; v < g.n(); ++v) deg[v] = star_weight(g, w, alive, v);

  PeelingTrace local;
  std::vector<double> alive_degrees;
  auto current_score = [&] {
    alive_degrees.clear();
    for (std::size_t v = 0; v < n; ++v)
      if (alive[v]) alive_degrees.push_back(deg[v]);
    return half_degree_density(alive_degrees);
  };

  double best_score = -kInf;
  std::size_t best_size = n;
  for (std::size_t size = n; size >= 1; --size) {
    const double s = current_score();
    local.prefix_scores.push_back(s);
    if (s > best_score) {
      best_score = s;
      best_size = size;
    }
    if (size == 1) break;
    Vertex victim = -1;
    for (Vertex v = 0; v < g.n(); ++v)
      if (alive[v] && (victim < 0 || deg[v] < deg[victim])) victim = v;
    alive[victim] = 0;
    local.removal_order.push_back(victim);
    for (const auto& inc : g.incident(victim))
      if (alive[inc.neighbor]) deg[inc.neighbor] = star_weight(g, w, alive, inc.neighbor);
  }

  // Prefix of size best_size = all vertices except the first n - best_size removed.
  std::vector<char> in(n, 1);
  for (std::size_t i = 0; i < n - best_size; ++i) in[local.removal_order[i]] = 0;
  VertexSet s = to_set(in);
  const double value = density(g, w, s);
  local.best_size = best_size;
  if (trace) *trace = std::move(local);
  return {std::move(s), value, false};
}

double second_best_density(const Graph& g, const WeightVector& w, const VertexSet& sstar) {
  check_weights(g, w);
  const auto n = static_cast<std::size_t>(g.n());
  auto in_star = sstar.mask(g.n());
  double best = -kInf;
  std::vector<char> forced_in(n, 0), forced_out(n, 0);
  for (Vertex v = 0; v < g.n(); ++v) {
    if (in_star[v]) {
      if (n == 1) continue;
      forced_out[v] = 1;
      best = std::max(best, constrained_densest(g, w, {}, forced_out).value);
      forced_out[v] = 0;
    } else {
      forced_in[v] = 1;
      best = std::max(best, constrained_densest(g, w, forced_in, {}).value);
      forced_in[v] = 0;
    }
  }
  return best;
}

}  // namespace dsb
