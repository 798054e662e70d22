#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dsb/design.hpp"
#include "dsb/graph.hpp"
#include "dsb/oracle.hpp"
#include "dsb/rng.hpp"

namespace dsb {

/// Queryable vertex subsets with a static allocation over them.
class ArmFamily {
 public:
  /// Throws std::invalid_argument if an arm is smaller than min_size or the
  /// allocation is not a probability vector (1e-12).
  ArmFamily(const Graph& g, std::vector<VertexSet> arms, std::vector<double> allocation, std::size_t min_size);
  /// Uniform allocation.
  ArmFamily(const Graph& g, std::vector<VertexSet> arms, std::size_t min_size);

  [[nodiscard]] std::size_t size() const { return arms_.size(); }
  [[nodiscard]] const VertexSet& arm(std::size_t i) const { return arms_[i]; }
  [[nodiscard]] const std::vector<EdgeIndex>& support(std::size_t i) const { return supports_[i]; }
  [[nodiscard]] const std::vector<double>& allocation() const { return allocation_; }
  [[nodiscard]] std::size_t min_size() const { return min_size_; }

  /// Rank of the stacked indicator rows (column-pivoted QR, threshold 1e-8).
  [[nodiscard]] Eigen::Index indicator_rank(EdgeIndex m) const;

 private:
  std::vector<VertexSet> arms_;
  std::vector<std::vector<EdgeIndex>> supports_;
  std::vector<double> allocation_;
  std::size_t min_size_;
};

/// Random family of `count` arms: each size drawn uniformly from
/// [min_size, n], members uniform without replacement, arms without induced
/// edges redrawn; the whole family is regenerated until its indicators have
/// rank m. Throws std::runtime_error after max_attempts failed families.
ArmFamily generate_arm_family(const Graph& g, std::size_t min_size, std::size_t count, Rng& rng,
                              int max_attempts = 1000);

/// argmin over the allocation support of T(S) / p(S); ties to the lowest index.
std::size_t select_arm(const DesignState& state, const ArmFamily& family);

enum class StopMode { conservative, exact_second_best };

struct DslinOptions {
  double epsilon = 0.1;
  double delta = 0.05;
  double lambda = 100.0;
  double R = 1.0;
  /// Bound on ||w||_2; defaults to sqrt(m) * 100.
  std::optional<double> L;
  /// Total rounds including the m initialization rounds; defaults to m + 10000.
  std::optional<std::uint64_t> max_iters;
  StopMode stop_mode = StopMode::conservative;
  /// Record a trace point every this many rounds (and always at the end).
  std::uint64_t trace_every = 1;
  /// Compare A^{-1} against a fresh inverse every this many updates (0 = never);
  /// drift above 1e-10 triggers a refresh.
  std::uint64_t inverse_check_every = 256;
};

struct DslinTracePoint {
  std::uint64_t iteration = 0;
  double radius = 0.0;
  /// Density of the incumbent under the true weights when supplied, else under w_hat.
  double incumbent_density = 0.0;
  /// ||w - w_hat||_1 / m when the true weights are supplied.
  std::optional<double> estimation_error;
};

struct DslinResult {
  VertexSet set;
  bool stopped = false;
  bool capped = false;
  std::uint64_t iterations = 0;
  std::uint64_t inverse_refreshes = 0;
  WeightVector final_estimate;
  std::vector<DslinTracePoint> trace;
};

/// Fixed-confidence DS-Lin. `true_weights`, when given, is used only for the
/// evaluation columns of the trace.
DslinResult run_dslin(const Graph& g, const ArmFamily& family, SamplingOracle& oracle, const DslinOptions& options,
                      const WeightVector* true_weights = nullptr);

}  // namespace dsb
