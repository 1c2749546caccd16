#include <benchmark/benchmark.h>

#include "thr/kernels.hpp"
#include "thr/oracle.hpp"

using namespace thr;

namespace {

std::vector<Integer> random_entries(std::size_t n, long bound, std::uint64_t seed) {
  oracle::Rng rng(seed);
  std::vector<Integer> v(n);
  for (auto& x : v) x = oracle::uniform(rng, -bound, bound);
  return v;
}

template <bool Parallel>
void bm_gemm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_entries(n * n, 1000000, 1), b = random_entries(n * n, 1000000, 2);
  std::vector<Integer> c(n * n);
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::gemm(n, n, n, a, b, c);
    else
      kernels::reference::gemm(n, n, n, a, b, c);
    benchmark::DoNotOptimize(c.data());
  }
}

template <bool Parallel>
void bm_axpy(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto y = random_entries(n, 1000000, 3);
  const auto x = random_entries(n, 1000000, 4);
  const Integer k = 7;
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::axpy(y, k, x);
    else
      kernels::reference::axpy(y, k, x);
    benchmark::DoNotOptimize(y.data());
  }
}

void bm_smith(benchmark::State& state) {
  oracle::Rng rng(5);
  const auto n = static_cast<std::size_t>(state.range(0));
  const IntMatrix m = oracle::random_matrix(rng, n, n, 100);
  for (auto _ : state) benchmark::DoNotOptimize(snf(m));
}

}  // namespace

BENCHMARK(bm_gemm<true>)->Arg(32)->Arg(96)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_gemm<false>)->Arg(32)->Arg(96)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_axpy<true>)->Arg(1 << 12)->Arg(1 << 18)->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_axpy<false>)->Arg(1 << 12)->Arg(1 << 18)->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_smith)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
