#include "dsb/dslin.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dsb/offline.hpp"

namespace dsb {

ArmFamily::ArmFamily(const Graph& g, std::vector<VertexSet> arms, std::vector<double> allocation,
                     std::size_t min_size)
    : arms_(std::move(arms)), allocation_(std::move(allocation)), min_size_(min_size) {
  if (arms_.empty()) throw std::invalid_argument("arm family is empty");
  if (allocation_.size() != arms_.size()) throw std::invalid_argument("allocation length must match arm count");
  double total = 0.0;
  for (double p : allocation_) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw std::invalid_argument("allocation entries must be >= 0");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("allocation must sum to 1");
  supports_.reserve(arms_.size());
  for (const auto& a : arms_) {
    if (a.size() < min_size_)
      throw std::invalid_argument("arm of size " + std::to_string(a.size()) + " is below the minimum " +
                                  std::to_string(min_size_));
    supports_.push_back(induced_edges(g, a));
  }
}

ArmFamily::ArmFamily(const Graph& g, std::vector<VertexSet> arms, std::size_t min_size)
    : ArmFamily(g, arms, std::vector<double>(arms.size(), arms.empty() ? 0.0 : 1.0 / static_cast<double>(arms.size())),
                min_size) {}

Eigen::Index ArmFamily::indicator_rank(EdgeIndex m) const {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(arms_.size()), m);
  for (std::size_t i = 0; i < arms_.size(); ++i)
    for (EdgeIndex e : supports_[i]) x(static_cast<Eigen::Index>(i), e) = 1.0;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  qr.setThreshold(1e-8);
  return qr.rank();
}

ArmFamily generate_arm_family(const Graph& g, std::size_t min_size, std::size_t count, Rng& rng, int max_attempts) {
  const auto n = static_cast<std::size_t>(g.n());
  if (min_size > n) throw std::invalid_argument("minimum arm size exceeds n");
  if (count == 0) throw std::invalid_argument("arm count must be positive");
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<VertexSet> arms;
    arms.reserve(count);
    while (arms.size() < count) {
      auto size = static_cast<std::int32_t>(rng.between(static_cast<std::int64_t>(min_size), static_cast<std::int64_t>(n)));
      VertexSet s(rng.sample_without_replacement(g.n(), size));
      if (induced_edges(g, s).empty()) continue;
      arms.push_back(std::move(s));
    }
    ArmFamily family(g, std::move(arms), min_size);
    if (family.indicator_rank(g.m()) == g.m()) return family;
  }
  throw std::runtime_error("could not draw an arm family of full rank m = " + std::to_string(g.m()) + " in " +
                           std::to_string(max_attempts) + " attempts");
}

std::size_t select_arm(const DesignState& state, const ArmFamily& family) {
  const auto& p = family.allocation();
  const auto& counts = state.counts();
  std::size_t best = family.size();
  double best_ratio = 0.0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (p[i] <= 0.0) continue;
    const double ratio = static_cast<double>(counts[i]) / p[i];
    if (best == family.size() || ratio < best_ratio) {
      best = i;
      best_ratio = ratio;
    }
  }
  if (best == family.size()) throw std::invalid_argument("allocation has empty support");
  return best;
}

DslinResult run_dslin(const Graph& g, const ArmFamily& family, SamplingOracle& oracle, const DslinOptions& options,
                      const WeightVector* true_weights) {
  const EdgeIndex m = g.m();
  if (m < 1) throw DomainError("DS-Lin needs at least one edge");
  for (std::size_t i = 0; i < family.size(); ++i)
    if (family.support(i).empty() && family.allocation()[i] > 0.0)
      throw std::invalid_argument("arm " + std::to_string(i) + " has no induced edges");
  if (family.indicator_rank(m) != m) throw std::invalid_argument("arm family does not span all m edges");
  const std::uint64_t max_iters = options.max_iters.value_or(static_cast<std::uint64_t>(m) + 10000);
  if (max_iters < static_cast<std::uint64_t>(m)) throw std::invalid_argument("max_iters must be at least m");
  if (true_weights) check_weights(g, *true_weights);

  const double L = options.L.value_or(std::sqrt(static_cast<double>(m)) * 100.0);
  const double r_prime = std::sqrt(static_cast<double>(max_degree(g))) * options.R;

  DesignState state(m, family.size(), options.lambda);
  DslinResult result;

  auto play_round = [&] {
    const std::size_t arm = select_arm(state, family);
    const double reward = oracle.sample_edges(family.support(arm));
    state.update(arm, family.support(arm), reward);
    if (options.inverse_check_every > 0 && state.t() % options.inverse_check_every == 0 &&
        state.inverse_residual() > 1e-10) {
      state.refresh_inverse();
      ++result.inverse_refreshes;
    }
  };

  for (EdgeIndex i = 0; i < m; ++i) play_round();

  while (true) {
    WeightVector w_hat = state.estimate();
    DensestResult best = exact_densest(g, w_hat);
    const double radius = confidence_radius(state, r_prime, L, options.delta);

    const bool at_cap = state.t() >= max_iters;
    bool stop = false;
    {
      auto support = induced_edges(g, best.set);
      StopInputs in;
      in.best_value = best.value;
      in.best_size = best.set.size();
      in.width = state.width(support);
      in.radius = radius;
      in.qp_bound = qp_upper_bound(state.a_inv(), false).value;
      in.epsilon = options.epsilon;
      if (options.stop_mode == StopMode::exact_second_best) in.second_best = second_best_density(g, w_hat, best.set);
      stop = check_stop(in);
    }

    if (stop || at_cap || state.t() % options.trace_every == 0) {
      DslinTracePoint pt;
      pt.iteration = state.t();
      pt.radius = radius;
      if (true_weights) {
        pt.incumbent_density = density(g, *true_weights, best.set);
        double err = 0.0;
        for (EdgeIndex e = 0; e < m; ++e) err += std::abs((*true_weights)[e] - w_hat[e]);
        pt.estimation_error = err / static_cast<double>(m);
      } else {
        pt.incumbent_density = best.value;
      }
      result.trace.push_back(pt);
    }

    if (stop || at_cap) {
      result.set = std::move(best.set);
      result.stopped = stop;
      result.capped = !stop;
      result.iterations = state.t();
      result.final_estimate = std::move(w_hat);
      return result;
    }
    play_round();
  }
}

}  // namespace dsb
