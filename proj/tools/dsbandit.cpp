#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dsb/experiment.hpp"
#include "dsb/graph_io.hpp"
#include "dsb/results_csv.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

// Thrown for bad flag values detected after CLI11 parsing.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "1,2,7-9" -> {1, 2, 7, 8, 9}
std::vector<std::uint64_t> expand_seeds(const std::vector<std::string>& tokens) {
  std::vector<std::uint64_t> out;
  for (const auto& tok : tokens) {
    const auto dash = tok.find('-');
    try {
      if (dash == std::string::npos) {
        out.push_back(std::stoull(tok));
        continue;
      }
      const auto lo = std::stoull(tok.substr(0, dash));
      const auto hi = std::stoull(tok.substr(dash + 1));
      if (hi < lo) throw ConfigError("empty seed range '" + tok + "'");
      for (auto s = lo; s <= hi; ++s) out.push_back(s);
    } catch (const std::logic_error&) {
      throw ConfigError("bad seed '" + tok + "'");
    }
  }
  return out;
}

struct CommonFlags {
  std::string graph;
  std::string weights;
  std::uint64_t weight_seed = 1;
  std::vector<std::string> seeds;
  std::string out;
  double R = 1.0;
  bool quiet = false;
};

void add_common(CLI::App* sub, CommonFlags& f) {
  sub->add_option("--graph", f.graph, "Edge-list file")->required()->check(CLI::ExistingFile);
  sub->add_option("--weights", f.weights, "Frozen weight file (default: knockout weights)")
      ->check(CLI::ExistingFile);
  sub->add_option("--weight-seed", f.weight_seed, "Seed for knockout weights")->capture_default_str();
  sub->add_option("--seed,--seeds", f.seeds, "Seeds: list and ranges, e.g. 1,2,10-20 (default 1)")->delimiter(',');
  sub->add_option("--out", f.out, "Output directory for CSV files");
  sub->add_option("--R", f.R, "Noise scale (per-edge Gaussian standard deviation)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sub->add_flag("--quiet", f.quiet, "Only print the aggregate line");
  sub->add_option("--config", "Flat key=value file with flag values; explicit flags take precedence")
      ->check(CLI::ExistingFile);
}

// CLI11 reads config files only at the top level, so a subcommand's --config
// is expanded into flags here. Keys already given on the command line win.
std::vector<std::string> expand_config(CLI::App& app, std::vector<std::string> args) {
  if (args.empty()) return args;
  CLI::App* sub = app.get_subcommand_no_throw(args.front());
  if (sub == nullptr) return args;
  std::string path;
  std::set<const CLI::Option*> given;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i].rfind("--", 0) != 0) continue;
    const auto eq = args[i].find('=');
    const std::string key = args[i].substr(0, eq);
    if (key == "--config") {
      path = eq != std::string::npos ? args[i].substr(eq + 1) : (i + 1 < args.size() ? args[i + 1] : "");
      continue;
    }
    if (const auto* opt = sub->get_option_no_throw(key)) given.insert(opt);
  }
  if (path.empty()) return args;
  std::vector<std::string> out{args.front()};
  for (const auto& item : CLI::ConfigINI().from_file(path)) {
    const auto* opt = sub->get_option_no_throw("--" + item.name);
    if (opt == nullptr) throw ConfigError("unknown key '" + item.name + "' in " + path);
    if (item.name == "config" || given.count(opt) > 0) continue;
    if (item.inputs.empty() || (item.inputs.size() == 1 && item.inputs.front().empty())) continue;
    if (opt->get_expected_max() == 0) {
      out.push_back("--" + item.name + "=" + item.inputs.front());
      continue;
    }
    out.push_back("--" + item.name);
    for (const auto& v : item.inputs) out.push_back(v);
  }
  out.insert(out.end(), args.begin() + 1, args.end());
  return out;
}

void print_run(const dsb::RunRecord& r) {
  std::printf("%s %s seed=%llu budget=%llu quality=%.6f opt=%s size=%zu queries=%llu single=%llu ms=%.1f\n",
              r.algo.c_str(), r.graph.c_str(), static_cast<unsigned long long>(r.seed),
              static_cast<unsigned long long>(r.budget), r.quality, r.opt ? std::to_string(*r.opt).c_str() : "-",
              r.out_size, static_cast<unsigned long long>(r.total_queries),
              static_cast<unsigned long long>(r.single_edge_queries), r.elapsed_ms);
}

int run_batch(dsb::ExperimentConfig cfg, const CommonFlags& f, const CLI::App* sub) {
  cfg.graph_path = f.graph;
  if (!f.weights.empty()) cfg.weights_path = f.weights;
  cfg.weight_seed = f.weight_seed;
  cfg.seeds = f.seeds.empty() ? std::vector<std::uint64_t>{1} : expand_seeds(f.seeds);
  if (cfg.seeds.empty()) throw ConfigError("no seeds given");
  cfg.noise = f.R > 0.0 ? dsb::NoiseModel::gaussian(f.R) : dsb::NoiseModel::none();
  cfg.dslin.R = f.R > 0.0 ? f.R : cfg.dslin.R;
  cfg.out_dir = f.out;

  const auto result = dsb::run_experiment(cfg);
  if (!f.out.empty())
    dsb::atomic_write_text(std::filesystem::path(f.out) / (dsb::to_string(cfg.algorithm) + "_config.ini"),
                           sub->config_to_str(true, false));
  if (!f.quiet)
    for (const auto& r : result.runs) print_run(r);
  for (const auto& [seed, what] : result.failures) std::fprintf(stderr, "seed %llu failed: %s\n",
                                                                static_cast<unsigned long long>(seed), what.c_str());
  const auto& a = result.aggregate;
  std::printf("aggregate %s %s runs=%zu quality_mean=%.6f quality_std=%.6f opt=%.6f single_mean=%.2f\n",
              a.algo.c_str(), a.graph.c_str(), a.runs, a.quality_mean, a.quality_std, a.opt_mean, a.single_edge_mean);
  return result.failures.empty() ? 0 : kExitRuntime;
}

int report(const std::vector<std::string>& files) {
  std::printf("%-9s %-10s %5s %14s %12s %14s %12s %10s\n", "algo", "graph", "runs", "quality_mean", "quality_std",
              "opt_mean", "single_mean", "single_frac");
  for (const auto& file : files) {
    const auto runs = dsb::load_results(file);
    std::map<std::pair<std::string, std::string>, std::vector<dsb::RunRecord>> groups;
    for (const auto& r : runs) groups[{r.algo, r.graph}].push_back(r);
    const auto dir = std::filesystem::path(file).parent_path();
    for (const auto& [key, group] : groups) {
      const auto a = dsb::aggregate(group);
      // Pool histograms written next to the results file, if any.
      std::map<std::size_t, std::uint64_t> pooled;
      bool have_hist = false;
      for (const auto& r : group) {
        const auto h = dir / (r.algo + "_" + r.graph + "_hist_" + std::to_string(r.seed) + ".csv");
        std::ifstream in(h);
        if (!in) continue;
        for (const auto& [size, count] : dsb::read_histogram(in, h.string())) pooled[size] += count;
        have_hist = true;
      }
      const std::string frac = have_hist ? std::to_string(dsb::single_edge_fraction(pooled)) : "-";
      std::printf("%-9s %-10s %5zu %14.6f %12.6f %14.6f %12.2f %10s\n", a.algo.c_str(), a.graph.c_str(), a.runs,
                  a.quality_mean, a.quality_std, a.opt_mean, a.single_edge_mean, frac.c_str());
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Densest subgraph discovery under blurred-graph feedback"};
  app.require_subcommand(1);

  // gen-weights
  auto* gen = app.add_subcommand("gen-weights", "Draw knockout weights and write them to a file");
  std::string gen_graph, gen_out;
  std::uint64_t gen_seed = 1;
  gen->add_option("--graph", gen_graph, "Edge-list file")->required()->check(CLI::ExistingFile);
  gen->add_option("--seed", gen_seed, "Weight seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Output weight file")->required();

  // offline and sampling algorithms share the batch flags
  std::map<std::string, CommonFlags> flags;
  std::map<std::string, dsb::ExperimentConfig> configs;
  std::map<std::string, CLI::App*> subs;
  const std::vector<std::pair<std::string, std::string>> algos = {
      {"exact", "Exact densest subgraph via parametric min cut"},
      {"brute", "Exhaustive search (n <= 20)"},
      {"g-oracle", "Greedy peeling with the true weights"},
      {"dslin", "Fixed-confidence DS-Lin"},
      {"dssr", "Fixed-budget DS-SR"},
      {"naive", "Uniform arm sampling with equal-split edge averages"},
      {"r-oracle", "Robust densest subgraph baseline"},
  };
  for (const auto& [name, help] : algos) {
    auto* sub = app.add_subcommand(name, help);
    subs[name] = sub;
    auto& cfg = configs[name];
    cfg.algorithm = dsb::parse_algorithm(name);
    add_common(sub, flags[name]);
  }

  std::string dslin_stop = "conservative";
  {
    auto* s = subs["dslin"];
    auto& c = configs["dslin"].dslin;
    s->add_option("--epsilon", c.epsilon, "Accuracy epsilon")->check(CLI::PositiveNumber)->capture_default_str();
    s->add_option("--delta", c.delta, "Confidence delta")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    s->add_option("--lambda", c.lambda, "Ridge parameter")->check(CLI::PositiveNumber)->capture_default_str();
    s->add_option("--L", c.L, "Bound on ||w||_2 (default sqrt(m)*100)")->check(CLI::PositiveNumber);
    s->add_option("--max-iters", c.max_iters, "Total rounds including initialization (default m+10000)");
    s->add_option("--stop-mode", dslin_stop, "conservative or exact-second-best")
        ->check(CLI::IsMember({"conservative", "exact-second-best"}))
        ->capture_default_str();
    s->add_option("--trace-every", c.trace_every, "Diagnostics every N rounds")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }
  for (const char* name : {"dslin", "naive"}) {
    auto& cfg = configs[name];
    subs[name]->add_option("--k", cfg.k, "Minimum arm size")->check(CLI::Range(3, 1 << 30))->capture_default_str();
    subs[name]->add_option("--arms", cfg.arm_count, "Number of arms (default 4m)")->check(CLI::PositiveNumber);
  }
  subs["dssr"]->add_option("--budget", configs["dssr"].budget, "Query budget T (default 10^ceil(log10 of overhead))");
  subs["naive"]->add_option("--budget", configs["naive"].budget, "Rounds T (default m+10000)");
  {
    auto* s = subs["r-oracle"];
    auto& c = configs["r-oracle"].r_oracle;
    s->add_option("--gamma", c.gamma, "Failure probability gamma")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    s->add_option("--epsilon", c.epsilon, "Accuracy epsilon")->check(CLI::PositiveNumber)->capture_default_str();
    s->add_flag("--literal-lower-bound", c.literal_lower_bound, "Use l_e = min(w-1, 0)");
  }

  auto* rep = app.add_subcommand("report", "Summarize results CSV files");
  std::vector<std::string> rep_files;
  rep->add_option("files", rep_files, "Results CSV files")->required()->check(CLI::ExistingFile);

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = expand_config(app, std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  }

  try {
    if (gen->parsed()) {
      const auto loaded = dsb::load_edge_list(gen_graph);
      dsb::save_weights(gen_out, loaded.graph, dsb::knockout_weights(loaded.graph, gen_seed));
      return 0;
    }
    if (rep->parsed()) return report(rep_files);
    for (auto& [name, sub] : subs) {
      if (!sub->parsed()) continue;
      auto& cfg = configs[name];
      if (name == "dslin")
        cfg.dslin.stop_mode =
            dslin_stop == "conservative" ? dsb::StopMode::conservative : dsb::StopMode::exact_second_best;
      return run_batch(cfg, flags[name], sub);
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const dsb::ParseError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return kExitConfig;
}
