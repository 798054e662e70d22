#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dsb/graph.hpp"
#include "dsb/oracle.hpp"

namespace dsb {

class BudgetError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Phase budgets of DS-SR for a graph on n vertices and total budget T.
/// Index t = 1..n-1 in the phase vectors; entry 0 is the T'_0 = 0 sentinel.
struct BudgetSchedule {
  std::uint64_t T = 0;
  std::int64_t n = 0;
  /// sum_{i=1}^{n-1} 1/i
  double harmonic = 0.0;
  /// sum_{i=1}^{n+1} i
  std::uint64_t overhead = 0;
  /// ceil((T - overhead) / (harmonic * (n - t)))
  std::vector<std::uint64_t> phase_budget;
  /// ceil(phase_budget_t / (2 (n - t + 1))), cumulative samples per star
  std::vector<std::uint64_t> cumulative;
  /// cumulative_t - cumulative_{t-1}
  std::vector<std::uint64_t> fresh;
};

/// Throws BudgetError when T <= (n+1)(n+2)/2; needs n >= 2.
BudgetSchedule build_schedule(std::uint64_t T, std::int64_t n);

/// Running empirical degree of one vertex.
struct DegreeEstimate {
  double mean = 0.0;
  std::uint64_t count = 0;

  /// Running-mean update; with identical observations the mean stays
  /// bit-for-bit equal to them.
  void add(double x) {
    ++count;
    mean += (x - mean) / static_cast<double>(count);
  }
};

/// Surviving set and per-vertex estimates of a DS-SR run.
class PeelingState {
 public:
  explicit PeelingState(const Graph& g);

  [[nodiscard]] const std::vector<char>& alive() const { return alive_; }
  [[nodiscard]] std::size_t survivors() const { return survivors_; }
  [[nodiscard]] Vertex last_removed() const { return last_removed_; }
  [[nodiscard]] const DegreeEstimate& estimate(Vertex v) const { return est_[static_cast<std::size_t>(v)]; }
  DegreeEstimate& estimate(Vertex v) { return est_[static_cast<std::size_t>(v)]; }
  /// Whether v was adjacent to the last removed vertex.
  [[nodiscard]] bool touched_by_last_removal(Vertex v) const;

  void remove(Vertex v);

 private:
  const Graph& g_;
  std::vector<char> alive_;
  std::vector<char> touched_;
  std::vector<DegreeEstimate> est_;
  std::size_t survivors_;
  Vertex last_removed_ = -1;
};

/// Sampling procedure for vertex v in phase t (1-based):
///  (a) no surviving neighbors: estimate 0, no query;
///  (b) star unchanged since the last phase: fresh_t new observations merged
///      into the running mean;
///  (c) star lost the last removed vertex: history discarded and
///      cumulative_t fresh observations taken.
void sample_phase_vertex(PeelingState& state, const BudgetSchedule& schedule, std::size_t t, Vertex v,
                         SamplingOracle& oracle);

struct DssrPhase {
  std::size_t phase = 0;
  std::size_t survivors = 0;
  double empirical_quality = 0.0;
  std::uint64_t cumulative_queries = 0;
  std::uint64_t cumulative_single_edge = 0;
};

struct DssrResult {
  VertexSet set;
  std::vector<Vertex> removal_order;
  std::vector<DssrPhase> phases;
  std::uint64_t queries = 0;
  std::uint64_t single_edge_queries = 0;
};

/// Fixed-budget DS-SR: n-1 phases, one vertex peeled per phase, output the
/// prefix with the highest empirical quality (largest on ties). Never issues
/// more than T queries; exceeding it throws std::logic_error.
DssrResult run_dssr(const Graph& g, SamplingOracle& oracle, std::uint64_t T);

}  // namespace dsb
