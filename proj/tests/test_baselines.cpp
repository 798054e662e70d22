#include <doctest.h>

#include <cmath>

#include "dsb/baselines.hpp"
#include "dsb/offline.hpp"
#include "support.hpp"

using namespace dsb;

TEST_CASE("naive equal split on a triangle") {
  auto k3 = test::complete(3);
  ArmFamily family(k3, {VertexSet::all(3)}, 3);
  SamplingOracle oracle(k3, WeightVector::constant(3, 1.0), NoiseModel::none(), 1);
  Rng rng(1);
  auto r = run_naive(k3, family, oracle, 10, rng);
  for (double x : r.edge_average) CHECK(x == doctest::Approx(1.0));
  CHECK(density(k3, WeightVector::constant(3, 1.0), r.set) == doctest::Approx(1.0));
  CHECK(oracle.counters().total == 10);
  Rng rng2(1);
  CHECK_THROWS_AS(run_naive(k3, family, oracle, 0, rng2), std::invalid_argument);
}

TEST_CASE("naive running averages match batch recomputation") {
  Rng grng(2);
  auto g = test::random_nonempty_graph(grng, 10, 0.5);
  auto w = test::random_weights(grng, g.m(), 0.0, 10.0);
  auto family = generate_arm_family(g, 3, 2 * static_cast<std::size_t>(g.m()), grng);

  // Replay the same arm choices and oracle stream to rebuild the averages in batch.
  SamplingOracle oracle(g, w, NoiseModel::gaussian(1.0), 3);
  Rng pick(4);
  auto r = run_naive(g, family, oracle, 500, pick);

  SamplingOracle replay(g, w, NoiseModel::gaussian(1.0), 3);
  Rng pick2(4);
  std::vector<double> sum(static_cast<std::size_t>(g.m()), 0.0);
  std::vector<std::uint64_t> visits(static_cast<std::size_t>(g.m()), 0);
  for (int t = 0; t < 500; ++t) {
    const auto arm = pick2.below(family.size());
    const auto& supp = family.support(arm);
    const double share = replay.sample_edges(supp) / static_cast<double>(supp.size());
    for (EdgeIndex e : supp) sum[e] += share, ++visits[e];
  }
  for (EdgeIndex e = 0; e < g.m(); ++e) {
    CHECK(r.edge_visits[e] == visits[e]);
    if (visits[e] > 0) CHECK(r.edge_average[e] == doctest::Approx(sum[e] / visits[e]).epsilon(1e-10));
  }
}

TEST_CASE("naive skips arms without induced edges") {
  Graph g(4, {{0, 1}});
  ArmFamily family(g, {VertexSet({1, 2, 3}), VertexSet::all(4)}, 3);
  SamplingOracle oracle(g, WeightVector({2.0}), NoiseModel::none(), 1);
  Rng rng(5);
  auto r = run_naive(g, family, oracle, 200, rng);
  CHECK(r.skipped > 0);
  CHECK(r.skipped + oracle.counters().total == 200);
}

TEST_CASE("r-oracle sample count") {
  const auto te = r_oracle_sample_count(3, 2.0, 0.9, 0.9, 2.0);
  CHECK(te == static_cast<std::uint64_t>(std::ceil(12.0 * std::log(20.0 / 3.0) / 3.24)));
  CHECK(te == 8);
  CHECK_THROWS_AS(r_oracle_sample_count(3, 2.0, 0.9, 0.9, 0.0), DomainError);
}

TEST_CASE("r-oracle intervals and accounting") {
  Rng rng(6);
  for (int rep = 0; rep < 20; ++rep) {
    auto g = test::random_nonempty_graph(rng, 10, 0.5);
    auto w = test::random_weights(rng, g.m(), 0.5, 30.0);
    SamplingOracle oracle(g, w, NoiseModel::gaussian(1.0), static_cast<std::uint64_t>(rep));
    auto r = run_r_oracle(g, w, oracle, {});
    std::uint64_t total = 0;
    for (EdgeIndex e = 0; e < g.m(); ++e) {
      CHECK(r.lower[e] <= r.lower_out[e]);
      CHECK(r.lower_out[e] <= r.upper_out[e]);
      CHECK(r.upper_out[e] <= r.upper[e]);
      CHECK(r.lower[e] == std::max(w[e] - 1.0, 0.0));
      total += r.samples[e];
    }
    CHECK(total == r.single_edge_queries);
    CHECK(total == oracle.counters().single_edge);
  }
}

TEST_CASE("r-oracle with literal lower bounds on weights above one") {
  auto k3 = test::complete(3);
  auto w = WeightVector::constant(3, 5.0);
  SamplingOracle oracle(k3, w, NoiseModel::none(), 1);
  ROracleOptions opt;
  opt.literal_lower_bound = true;
  CHECK_THROWS_AS(run_r_oracle(k3, w, oracle, opt), DomainError);
}
