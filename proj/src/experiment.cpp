#include "dsb/experiment.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "dsb/dssr.hpp"
#include "dsb/graph_io.hpp"
#include "dsb/offline.hpp"
#include "dsb/results_csv.hpp"
#include "dsb/rng.hpp"

namespace dsb {

namespace {

// Stream ids for per-seed randomness outside the oracle.
constexpr std::uint64_t kArmStream = 0x61726d73;    // arm family
constexpr std::uint64_t kNaiveStream = 0x6e616976;  // Naive arm choice

std::size_t default_arm_count(const ExperimentConfig& config, const Graph& g) {
  return config.arm_count.value_or(4 * static_cast<std::size_t>(g.m()));
}

}  // namespace

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::dslin: return "dslin";
    case Algorithm::dssr: return "dssr";
    case Algorithm::naive: return "naive";
    case Algorithm::r_oracle: return "r-oracle";
    case Algorithm::g_oracle: return "g-oracle";
    case Algorithm::exact: return "exact";
    case Algorithm::brute: return "brute";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& name) {
  for (auto a : {Algorithm::dslin, Algorithm::dssr, Algorithm::naive, Algorithm::r_oracle, Algorithm::g_oracle,
                 Algorithm::exact, Algorithm::brute})
    if (to_string(a) == name) return a;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

WeightVector knockout_weights(const Graph& g, std::uint64_t seed) {
  if (g.m() == 0) return WeightVector(std::vector<double>{});
  const auto sstar = exact_densest(g, WeightVector::constant(g.m(), 1.0)).set;
  const auto in_s = sstar.mask(g.n());
  Rng rng(seed);
  std::vector<double> w(static_cast<std::size_t>(g.m()));
  for (EdgeIndex e = 0; e < g.m(); ++e) {
    const auto& ed = g.edge(e);
    const bool inside = in_s[ed.u] && in_s[ed.v];
    w[e] = inside ? rng.uniform(1.0, 20.0) : rng.uniform(1.0, 100.0);
  }
  return WeightVector(std::move(w));
}

std::uint64_t default_budget(std::int64_t n) {
  if (n < 2) throw DomainError("default budget needs n >= 2");
  const auto un = static_cast<std::uint64_t>(n);
  if (un > 6'000'000'000ULL) throw DomainError("n too large for a 64-bit budget");
  const std::uint64_t overhead = (un + 1) * (un + 2) / 2;
  std::uint64_t t = 1;
  while (t < overhead) {
    if (t > std::numeric_limits<std::uint64_t>::max() / 10) throw DomainError("budget overflows 64 bits");
    t *= 10;
  }
  return t;
}

std::uint64_t dssr_default_budget(std::int64_t n) {
  const std::uint64_t t = default_budget(n);
  const auto un = static_cast<std::uint64_t>(n);
  return t == (un + 1) * (un + 2) / 2 ? t * 10 : t;
}

RunRecord run_single(const ExperimentConfig& config, const Graph& g, const WeightVector& w,
                     const std::string& graph_name, std::uint64_t seed, std::optional<double> opt) {
  RunRecord rec;
  rec.algo = to_string(config.algorithm);
  rec.graph = graph_name;
  rec.seed = seed;
  rec.opt = opt;
  const auto start = std::chrono::steady_clock::now();

  SamplingOracle oracle(g, w, config.noise, seed);
  VertexSet out;
  switch (config.algorithm) {
    case Algorithm::exact:
      out = exact_densest(g, w).set;
      break;
    case Algorithm::brute:
      out = brute_force_densest(g, w).set;
      break;
    case Algorithm::g_oracle:
      out = greedy_peeling(g, w).set;
      break;
    case Algorithm::dssr: {
      rec.budget = config.budget.value_or(dssr_default_budget(g.n()));
      auto r = run_dssr(g, oracle, rec.budget);
      if (config.write_diagnostics) {
        std::ostringstream os;
        write_dssr_trace(os, r.phases);
        rec.diagnostics_csv = os.str();
      }
      out = std::move(r.set);
      break;
    }
    case Algorithm::dslin: {
      Rng arm_rng(seed, kArmStream);
      const auto family =
          generate_arm_family(g, config.k, default_arm_count(config, g), arm_rng);
      rec.budget = config.dslin.max_iters.value_or(static_cast<std::uint64_t>(g.m()) + 10000);
      auto r = run_dslin(g, family, oracle, config.dslin, config.write_diagnostics ? &w : nullptr);
      if (config.write_diagnostics) {
        std::ostringstream os;
        write_dslin_trace(os, r.trace);
        rec.diagnostics_csv = os.str();
      }
      out = std::move(r.set);
      break;
    }
    case Algorithm::naive: {
      Rng arm_rng(seed, kArmStream);
      const auto family =
          generate_arm_family(g, config.k, default_arm_count(config, g), arm_rng);
      rec.budget = config.budget.value_or(static_cast<std::uint64_t>(g.m()) + 10000);
      Rng pick(seed, kNaiveStream);
      out = run_naive(g, family, oracle, rec.budget, pick).set;
      break;
    }
    case Algorithm::r_oracle:
      out = run_r_oracle(g, w, oracle, config.r_oracle).set;
      break;
  }

  rec.quality = density(g, w, out);
  rec.out_size = out.size();
  rec.total_queries = oracle.counters().total;
  rec.single_edge_queries = oracle.counters().single_edge;
  rec.histogram = oracle.counters().by_size;
  rec.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

AggregateRow aggregate(const std::vector<RunRecord>& runs) {
  AggregateRow row;
  row.runs = runs.size();
  if (runs.empty()) return row;
  row.algo = runs.front().algo;
  row.graph = runs.front().graph;
  const double k = static_cast<double>(runs.size());
  for (const auto& r : runs) {
    row.quality_mean += r.quality / k;
    row.opt_mean += r.opt.value_or(std::numeric_limits<double>::quiet_NaN()) / k;
    row.single_edge_mean += static_cast<double>(r.single_edge_queries) / k;
    row.total_queries_mean += static_cast<double>(r.total_queries) / k;
    row.elapsed_ms_mean += r.elapsed_ms / k;
  }
  double ss = 0.0;
  for (const auto& r : runs) ss += (r.quality - row.quality_mean) * (r.quality - row.quality_mean);
  row.quality_std = runs.size() > 1 ? std::sqrt(ss / (k - 1.0)) : 0.0;
  return row;
}

double single_edge_fraction(const std::map<std::size_t, std::uint64_t>& histogram) {
  std::uint64_t total = 0;
  for (const auto& [size, count] : histogram) total += count;
  if (total == 0) return 0.0;
  const auto it = histogram.find(1);
  return it == histogram.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(total);
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  auto loaded = load_edge_list(config.graph_path);
  const Graph& g = loaded.graph;
  WeightVector w = config.weights_path ? load_weights(*config.weights_path, g)
                   : loaded.weights    ? *loaded.weights
                                       : knockout_weights(g, config.weight_seed);
  const std::string name = config.graph_path.stem().string();
  std::optional<double> opt;
  if (config.compute_opt && g.m() > 0) opt = exact_densest(g, w).value;

  // Parameter errors shared by every seed are reported once, before the batch.
  if (config.algorithm == Algorithm::dssr && g.n() > 1) build_schedule(config.budget.value_or(dssr_default_budget(g.n())), g.n());
  if (config.algorithm == Algorithm::naive && config.budget && *config.budget < 1)
    throw std::invalid_argument("Naive needs T >= 1");

  const auto count = static_cast<std::int64_t>(config.seeds.size());
  std::vector<std::optional<RunRecord>> slots(config.seeds.size());
  std::vector<std::string> errors(config.seeds.size());

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      slots[idx] = run_single(config, g, w, name, config.seeds[idx], opt);
    } catch (const std::exception& ex) {
      errors[idx] = ex.what();
    }
  }

  ExperimentResult result;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i])
      result.runs.push_back(std::move(*slots[i]));
    else
      result.failures[config.seeds[i]] = errors[i];
  }
  result.aggregate = aggregate(result.runs);
  if (result.aggregate.algo.empty()) {
    result.aggregate.algo = to_string(config.algorithm);
    result.aggregate.graph = name;
  }

  if (!config.out_dir.empty()) {
    std::filesystem::create_directories(config.out_dir);
    const std::string stem = result.aggregate.algo + "_" + name;
    write_atomically(config.out_dir / (stem + "_results.csv"),
                     [&](std::ostream& os) { write_results(os, result.runs); });
    write_atomically(config.out_dir / (stem + "_aggregate.csv"),
                     [&](std::ostream& os) { write_aggregate(os, {result.aggregate}); });
    if (config.write_histograms)
      for (const auto& r : result.runs)
        write_atomically(config.out_dir / (stem + "_hist_" + std::to_string(r.seed) + ".csv"),
                         [&](std::ostream& os) { write_histogram(os, r.histogram); });
    for (const auto& r : result.runs)
      if (!r.diagnostics_csv.empty())
        atomic_write_text(config.out_dir / (stem + "_trace_" + std::to_string(r.seed) + ".csv"), r.diagnostics_csv);
    if (!result.failures.empty())
      write_atomically(config.out_dir / (stem + "_failures.txt"), [&](std::ostream& os) {
        for (const auto& [seed, what] : result.failures) os << seed << ": " << what << '\n';
      });
  }
  return result;
}

}  // namespace dsb
