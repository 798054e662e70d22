#include <doctest.h>

#include <cmath>

#include "dsb/dslin.hpp"
#include "dsb/offline.hpp"
#include "support.hpp"

using namespace dsb;

namespace {

// Tiny state with prescribed per-arm counts.
DesignState with_counts(const std::vector<std::uint64_t>& counts) {
  DesignState st(1, counts.size(), 1.0);
  const EdgeIndex s[] = {0};
  for (std::size_t a = 0; a < counts.size(); ++a)
    for (std::uint64_t k = 0; k < counts[a]; ++k) st.update(a, s, 1.0);
  return st;
}

}  // namespace

TEST_CASE("arm selection") {
  auto k3 = test::complete(3);
  std::vector<VertexSet> arms(3, VertexSet::all(3));
  ArmFamily uniform(k3, arms, 3);
  CHECK(select_arm(with_counts({0, 0, 0}), uniform) == 0);
  CHECK(select_arm(with_counts({2, 0, 1}), uniform) == 1);
  ArmFamily skewed(k3, {VertexSet::all(3), VertexSet::all(3)}, {0.9, 0.1}, 3);
  CHECK(select_arm(with_counts({1, 1}), skewed) == 0);
  ArmFamily one_sided(k3, {VertexSet::all(3), VertexSet::all(3)}, {1.0, 0.0}, 3);
  CHECK(select_arm(with_counts({5, 0}), one_sided) == 0);
}

TEST_CASE("arm family validation") {
  auto k4 = test::complete(4);
  CHECK_THROWS_AS(ArmFamily(k4, {VertexSet({0, 1})}, 3), std::invalid_argument);
  CHECK_THROWS_AS(ArmFamily(k4, {VertexSet::all(4)}, {0.5}, 3), std::invalid_argument);
  CHECK_THROWS_AS(ArmFamily(k4, {}, 3), std::invalid_argument);
  ArmFamily f(k4, {VertexSet::all(4)}, 3);
  CHECK(f.support(0).size() == 6);
  CHECK(f.indicator_rank(6) == 1);
}

TEST_CASE("uniform allocation visits arms evenly") {
  Rng rng(1);
  auto g = test::random_nonempty_graph(rng, 12, 0.5);
  std::vector<VertexSet> arms;
  for (int i = 0; i < 7; ++i) arms.emplace_back(rng.sample_without_replacement(12, 6));
  ArmFamily family(g, arms, 4);
  DesignState st(g.m(), family.size(), 1.0);
  for (std::uint64_t t = 1; t <= 100; ++t) {
    const auto arm = select_arm(st, family);
    st.update(arm, family.support(arm), 0.0);
    for (auto c : st.counts()) {
      CHECK(c >= t / family.size());
      CHECK(c <= (t + family.size() - 1) / family.size());
    }
  }
}

TEST_CASE("generated families have full rank and respect the minimum size") {
  Rng rng(2);
  auto g = test::random_nonempty_graph(rng, 15, 0.4);
  Rng a(9), b(9);
  auto fa = generate_arm_family(g, 5, 3 * static_cast<std::size_t>(g.m()), a);
  auto fb = generate_arm_family(g, 5, 3 * static_cast<std::size_t>(g.m()), b);
  CHECK(fa.indicator_rank(g.m()) == g.m());
  for (std::size_t i = 0; i < fa.size(); ++i) {
    CHECK(fa.arm(i).size() >= 5);
    CHECK_FALSE(fa.support(i).empty());
    CHECK(fa.arm(i) == fb.arm(i));
  }
  Rng c(1);
  CHECK_THROWS_AS(generate_arm_family(g, 16, 5, c), std::invalid_argument);
  // fewer arms than edges can never reach rank m
  CHECK_THROWS_AS(generate_arm_family(g, 5, 2, c, 3), std::runtime_error);
}

TEST_CASE("noise-free DS-Lin recovers the optimum") {
  Rng rng(5);
  for (int rep = 0; rep < 10; ++rep) {
    auto g = test::random_nonempty_graph(rng, 9, 0.5);
    auto w = test::random_weights(rng, g.m(), 1.0, 10.0);
    Rng arm_rng(static_cast<std::uint64_t>(rep));
    auto family = generate_arm_family(g, 3, 2 * static_cast<std::size_t>(g.m()), arm_rng);
    SamplingOracle oracle(g, w, NoiseModel::none(), 1);
    DslinOptions opt;
    opt.epsilon = 0.01;
    opt.lambda = 1e-6;
    opt.R = 0.0;
    // two passes over the family: every arm observed once
    opt.max_iters = 2 * static_cast<std::uint64_t>(g.m());
    auto r = run_dslin(g, family, oracle, opt, &w);
    CHECK(density(g, w, r.set) == doctest::Approx(exact_densest(g, w).value).epsilon(1e-9));
    CHECK(oracle.counters().total == r.iterations);
    CHECK(r.iterations <= *opt.max_iters);
  }
}

TEST_CASE("iteration cap at initialization") {
  Rng rng(6);
  auto g = test::random_nonempty_graph(rng, 10, 0.5);
  auto w = test::random_weights(rng, g.m(), 1.0, 10.0);
  auto family = generate_arm_family(g, 4, 2 * static_cast<std::size_t>(g.m()), rng);
  SamplingOracle oracle(g, w, NoiseModel::gaussian(1.0), 1);
  DslinOptions opt;
  opt.max_iters = static_cast<std::uint64_t>(g.m());
  auto r = run_dslin(g, family, oracle, opt, &w);
  CHECK(r.capped);
  CHECK_FALSE(r.stopped);
  CHECK(r.iterations == static_cast<std::uint64_t>(g.m()));
  CHECK_FALSE(r.set.empty());
  REQUIRE(r.trace.size() == 1);
  CHECK(r.trace.back().estimation_error.has_value());

  opt.max_iters = static_cast<std::uint64_t>(g.m()) - 1;
  SamplingOracle o2(g, w, NoiseModel::gaussian(1.0), 1);
  CHECK_THROWS_AS(run_dslin(g, family, o2, opt), std::invalid_argument);
}

TEST_CASE("DS-Lin rejects unusable families") {
  auto lp = test::lollipop();
  auto w = WeightVector::constant(4, 1.0);
  SamplingOracle oracle(lp, w, NoiseModel::none(), 1);
  ArmFamily low_rank(lp, {VertexSet::all(4)}, 3);
  CHECK_THROWS_AS(run_dslin(lp, low_rank, oracle, {}), std::invalid_argument);
  Graph sparse(4, {{0, 1}});
  ArmFamily hollow(sparse, {VertexSet({1, 2, 3}), VertexSet::all(4)}, 3);
  SamplingOracle o2(sparse, WeightVector({1.0}), NoiseModel::none(), 1);
  CHECK_THROWS_AS(run_dslin(sparse, hollow, o2, {}), std::invalid_argument);
}

TEST_CASE("stop check modes agree on the noise-free path") {
  Rng rng(8);
  auto g = test::random_nonempty_graph(rng, 8, 0.6);
  auto w = test::random_weights(rng, g.m(), 1.0, 10.0);
  auto family = generate_arm_family(g, 3, 2 * static_cast<std::size_t>(g.m()), rng);
  DslinOptions opt;
  opt.lambda = 1e-6;
  opt.R = 0.0;
  opt.stop_mode = StopMode::exact_second_best;
  opt.max_iters = 2 * static_cast<std::uint64_t>(g.m());
  SamplingOracle oracle(g, w, NoiseModel::none(), 1);
  auto r = run_dslin(g, family, oracle, opt);
  CHECK(density(g, w, r.set) == doctest::Approx(exact_densest(g, w).value));
}
