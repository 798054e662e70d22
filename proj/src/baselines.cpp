#include "dsb/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dsb/offline.hpp"

namespace dsb {

NaiveResult run_naive(const Graph& g, const ArmFamily& family, SamplingOracle& oracle, std::uint64_t T, Rng& rng) {
  if (T < 1) throw std::invalid_argument("Naive needs T >= 1");
  const auto m = static_cast<std::size_t>(g.m());
  NaiveResult result;
  result.edge_average.assign(m, 0.0);
  result.edge_visits.assign(m, 0);
  for (std::uint64_t t = 0; t < T; ++t) {
    const auto arm = static_cast<std::size_t>(rng.below(family.size()));
    const auto& support = family.support(arm);
    if (support.empty()) {
      ++result.skipped;
      continue;
    }
    const double share = oracle.sample_edges(support) / static_cast<double>(support.size());
    for (EdgeIndex e : support) {
      auto& te = result.edge_visits[e];
      ++te;
      result.edge_average[e] += (share - result.edge_average[e]) / static_cast<double>(te);
    }
  }
  // Averages can be negative under Gaussian noise; the solver needs w >= 0.
  std::vector<double> clipped(result.edge_average);
  for (double& x : clipped) x = std::max(x, 0.0);
  result.set = exact_densest(g, WeightVector(std::move(clipped))).set;
  return result;
}

std::uint64_t r_oracle_sample_count(EdgeIndex m, double width, double gamma, double epsilon, double lower_opt) {
  if (lower_opt <= 0.0) throw DomainError("R-Oracle needs a positive lower-bound optimum");
  const double md = static_cast<double>(m);
  const double x = md * width * width * std::log(2.0 * md / gamma) / (epsilon * epsilon * lower_opt * lower_opt);
  return static_cast<std::uint64_t>(std::ceil(x));
}

ROracleResult run_r_oracle(const Graph& g, const WeightVector& true_weights, SamplingOracle& oracle,
                           const ROracleOptions& options) {
  check_weights(g, true_weights);
  if (!(options.gamma > 0.0 && options.gamma < 1.0)) throw std::invalid_argument("gamma must lie in (0, 1)");
  if (!(options.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  const auto m = static_cast<std::size_t>(g.m());
  ROracleResult r;
  r.lower.resize(m);
  r.upper.resize(m);
  for (std::size_t e = 0; e < m; ++e) {
    const double w = true_weights[static_cast<EdgeIndex>(e)];
    r.lower[e] = options.literal_lower_bound ? std::min(w - 1.0, 0.0) : std::max(w - 1.0, 0.0);
    r.upper[e] = w + 1.0;
  }
  auto solver_weights = [](const std::vector<double>& l) {
    std::vector<double> c(l);
    for (double& x : c) x = std::max(x, 0.0);
    return WeightVector(std::move(c));
  };

  const WeightVector w_minus = solver_weights(r.lower);
  r.lower_opt = exact_densest(g, w_minus).value;
  r.lower_out = r.lower;
  r.upper_out = r.upper;
  r.samples.assign(m, 0);
  const std::uint64_t single_before = oracle.counters().single_edge;

  bool any_open = false;
  for (std::size_t e = 0; e < m; ++e) any_open = any_open || r.lower[e] < r.upper[e];
  if (any_open) {
    if (r.lower_opt <= 0.0) throw DomainError("R-Oracle: densest value under the lower bounds is 0");
    const double half_width = options.epsilon * r.lower_opt / std::sqrt(2.0 * static_cast<double>(m));
    for (std::size_t e = 0; e < m; ++e) {
      if (!(r.lower[e] < r.upper[e])) continue;
      const std::uint64_t te =
          r_oracle_sample_count(g.m(), r.upper[e] - r.lower[e], options.gamma, options.epsilon, r.lower_opt);
      r.samples[e] = te;
      const EdgeIndex single[1] = {static_cast<EdgeIndex>(e)};
      double mean = 0.0;
      for (std::uint64_t k = 1; k <= te; ++k) mean += (oracle.sample_edges(single) - mean) / static_cast<double>(k);
      const double p = std::clamp(mean, r.lower[e], r.upper[e]);
      r.lower_out[e] = std::max(r.lower[e], p - half_width);
      r.upper_out[e] = std::min(r.upper[e], p + half_width);
    }
  }
  r.single_edge_queries = oracle.counters().single_edge - single_before;
  r.set = exact_densest(g, solver_weights(r.lower_out)).set;
  return r;
}

}  // namespace dsb
