// Serial reference vs OpenMP build of each kernel.

#include <vector>

#include <benchmark/benchmark.h>

#include "dsb/kernels.hpp"
#include "dsb/rng.hpp"

namespace {

Eigen::MatrixXd random_symmetric(int m, std::uint64_t seed) {
  dsb::Rng rng(seed);
  Eigen::MatrixXd a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) a(i, j) = a(j, i) = rng.uniform(-1.0, 1.0);
  return a;
}

std::vector<double> subset_weights(int n, std::uint64_t seed) {
  dsb::Rng rng(seed);
  std::vector<double> w(std::size_t{1} << n);
  for (auto& x : w) x = rng.uniform(0.0, 100.0);
  w[0] = 0.0;
  return w;
}

template <bool Parallel>
void BM_RankOneDowndate(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  Eigen::MatrixXd a = random_symmetric(m, 1);
  const Eigen::VectorXd u = Eigen::VectorXd::Constant(m, 1e-6);
  for (auto _ : state) {
    if constexpr (Parallel)
      dsb::kernels::rank_one_downdate(a, u, 1.0);
    else
      dsb::kernels::rank_one_downdate_serial(a, u, 1.0);
    benchmark::DoNotOptimize(a.data());
  }
}

template <bool Parallel>
void BM_MaxCornerForm(benchmark::State& state) {
  const Eigen::MatrixXd q = random_symmetric(static_cast<int>(state.range(0)), 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(Parallel ? dsb::kernels::max_corner_form(q) : dsb::kernels::max_corner_form_serial(q));
}

template <bool Parallel>
void BM_AbsEntrySum(benchmark::State& state) {
  const Eigen::MatrixXd q = random_symmetric(static_cast<int>(state.range(0)), 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(Parallel ? dsb::kernels::abs_entry_sum(q) : dsb::kernels::abs_entry_sum_serial(q));
}

template <bool Parallel>
void BM_BestSubset(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto w = subset_weights(n, 4);
  for (auto _ : state) {
    auto r = Parallel ? dsb::kernels::best_subset(w, n) : dsb::kernels::best_subset_serial(w, n);
    benchmark::DoNotOptimize(r);
  }
}

}  // namespace

BENCHMARK(BM_RankOneDowndate<false>)->Arg(78)->Arg(254)->Arg(1024);
BENCHMARK(BM_RankOneDowndate<true>)->Arg(78)->Arg(254)->Arg(1024);
BENCHMARK(BM_MaxCornerForm<false>)->Arg(12)->Arg(18)->Arg(22);
BENCHMARK(BM_MaxCornerForm<true>)->Arg(12)->Arg(18)->Arg(22);
BENCHMARK(BM_AbsEntrySum<false>)->Arg(254)->Arg(1024);
BENCHMARK(BM_AbsEntrySum<true>)->Arg(254)->Arg(1024);
BENCHMARK(BM_BestSubset<false>)->Arg(12)->Arg(16)->Arg(20);
BENCHMARK(BM_BestSubset<true>)->Arg(12)->Arg(16)->Arg(20);

BENCHMARK_MAIN();
