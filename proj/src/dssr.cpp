#include "dsb/dssr.hpp"

#include <cmath>
#include <limits>

namespace dsb {

BudgetSchedule build_schedule(std::uint64_t T, std::int64_t n) {
  if (n < 2) throw std::invalid_argument("DS-SR needs at least two vertices");
  BudgetSchedule s;
  s.T = T;
  s.n = n;
  const auto nn = static_cast<std::uint64_t>(n);
  s.overhead = (nn + 1) * (nn + 2) / 2;
  if (T <= s.overhead)
    throw BudgetError("budget T = " + std::to_string(T) + " is too small for n = " + std::to_string(n) +
                      "; the minimum feasible budget is " + std::to_string(s.overhead + 1));
  long double h = 0.0L;
  for (std::int64_t i = 1; i <= n - 1; ++i) h += 1.0L / static_cast<long double>(i);
  s.harmonic = static_cast<double>(h);

  const auto spare = static_cast<long double>(T - s.overhead);
  s.phase_budget.assign(static_cast<std::size_t>(n), 0);
  s.cumulative.assign(static_cast<std::size_t>(n), 0);
  s.fresh.assign(static_cast<std::size_t>(n), 0);
  for (std::int64_t t = 1; t <= n - 1; ++t) {
    const auto pb = static_cast<std::uint64_t>(std::ceil(spare / (h * static_cast<long double>(n - t))));
    const auto survivors = static_cast<std::uint64_t>(n - t + 1);
    const std::uint64_t cum = (pb + 2 * survivors - 1) / (2 * survivors);
    s.phase_budget[t] = pb;
    s.cumulative[t] = cum;
    if (cum < s.cumulative[t - 1]) throw std::logic_error("DS-SR schedule is not monotone");
    s.fresh[t] = cum - s.cumulative[t - 1];
  }
  return s;
}

PeelingState::PeelingState(const Graph& g)
    : g_(g),
      alive_(static_cast<std::size_t>(g.n()), 1),
      touched_(static_cast<std::size_t>(g.n()), 0),
      est_(static_cast<std::size_t>(g.n())),
      survivors_(static_cast<std::size_t>(g.n())) {}

bool PeelingState::touched_by_last_removal(Vertex v) const { return touched_[static_cast<std::size_t>(v)] != 0; }

void PeelingState::remove(Vertex v) {
  if (!alive_[v]) throw std::logic_error("vertex " + std::to_string(v) + " was already removed");
  std::fill(touched_.begin(), touched_.end(), 0);
  for (const auto& inc : g_.incident(v))
    if (alive_[inc.neighbor]) touched_[inc.neighbor] = 1;
  alive_[v] = 0;
  --survivors_;
  last_removed_ = v;
}

void sample_phase_vertex(PeelingState& state, const BudgetSchedule& schedule, std::size_t t, Vertex v,
                         SamplingOracle& oracle) {
  const Graph& g = oracle.graph();
  const auto& alive = state.alive();
  if (!alive[v]) throw DomainError("vertex " + std::to_string(v) + " is not in the surviving set");
  bool has_neighbor = false;
  for (const auto& inc : g.incident(v))
    if (alive[inc.neighbor]) {
      has_neighbor = true;
      break;
    }
  DegreeEstimate& est = state.estimate(v);
  if (!has_neighbor) {
    est.mean = 0.0;
    return;
  }
  if (!state.touched_by_last_removal(v)) {
    for (std::uint64_t i = 0; i < schedule.fresh[t]; ++i) est.add(oracle.sample_vertex_star(alive, v));
  } else {
    est = {};
    for (std::uint64_t i = 0; i < schedule.cumulative[t]; ++i) est.add(oracle.sample_vertex_star(alive, v));
  }
}

DssrResult run_dssr(const Graph& g, SamplingOracle& oracle, std::uint64_t T) {
  if (&oracle.graph() != &g) throw std::invalid_argument("oracle was built for a different graph");
  DssrResult result;
  if (g.n() == 1) {
    result.set = VertexSet({0});
    return result;
  }
  const BudgetSchedule schedule = build_schedule(T, g.n());
  const std::uint64_t start_total = oracle.counters().total;
  const std::uint64_t start_single = oracle.counters().single_edge;
  const auto n = static_cast<std::size_t>(g.n());

  PeelingState state(g);
  std::vector<double> degrees;
  double best_quality = -std::numeric_limits<double>::infinity();
  std::size_t best_phase = 0;

  for (std::size_t t = 1; t <= n - 1; ++t) {
    degrees.clear();
    Vertex victim = -1;
    for (Vertex v = 0; v < g.n(); ++v) {
      if (!state.alive()[v]) continue;
      sample_phase_vertex(state, schedule, t, v, oracle);
      const double d = state.estimate(v).mean;
      degrees.push_back(d);
      if (victim < 0 || d < state.estimate(victim).mean) victim = v;
    }
    const double quality = half_degree_density(degrees);
    if (quality > best_quality) {
      best_quality = quality;
      best_phase = t;
    }
    state.remove(victim);
    result.removal_order.push_back(victim);

    const std::uint64_t used = oracle.counters().total - start_total;
    if (used > T) throw std::logic_error("DS-SR exceeded its budget: " + std::to_string(used) + " > " + std::to_string(T));
    result.phases.push_back({t, n - t + 1, quality, used, oracle.counters().single_edge - start_single});
  }

  // S at phase t is V minus the first t - 1 removed vertices.
  std::vector<char> in(n, 1);
  for (std::size_t i = 0; i + 1 < best_phase; ++i) in[result.removal_order[i]] = 0;
  std::vector<Vertex> members;
  for (Vertex v = 0; v < g.n(); ++v)
    if (in[v]) members.push_back(v);
  result.set = VertexSet(std::move(members));
  result.queries = oracle.counters().total - start_total;
  result.single_edge_queries = oracle.counters().single_edge - start_single;
  return result;
}

}  // namespace dsb
