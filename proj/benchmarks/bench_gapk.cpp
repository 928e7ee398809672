// Microbenchmarks for the primality kernels, the difference runner, and the
// certificate engine. Run: gapk_bench [--benchmark_filter=...]

#include "gapk/filter.hpp"
#include "gapk/primality.hpp"
#include "gapk/search.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_IsPrimeU64(benchmark::State& state) {
  std::uint64_t n = 18446744073709551557ull;  // largest prime below 2^64
  for (auto _ : state) benchmark::DoNotOptimize(gapk::is_prime_u64(n));
}
BENCHMARK(BM_IsPrimeU64);

void BM_IsPrimeU64Composite(benchmark::State& state) {
  std::uint64_t n = 18446744073709551615ull;
  for (auto _ : state) benchmark::DoNotOptimize(gapk::is_prime_u64(n));
}
BENCHMARK(BM_IsPrimeU64Composite);

void BM_BpswMersenne(benchmark::State& state) {
  gapk::Natural m = gapk::pow_natural(2, static_cast<unsigned long>(state.range(0))) - 1;
  for (auto _ : state) benchmark::DoNotOptimize(gapk::passes_primality(m, 0));
}
BENCHMARK(BM_BpswMersenne)->Arg(127)->Arg(521)->Arg(1279);

void BM_Runner(benchmark::State& state) {
  for (auto _ : state) {
    gapk::SearchSpec spec;
    spec.p1 = 5;
    spec.r = 5;
    spec.k = 5;
    spec.d_min = 0;
    spec.d_max = static_cast<unsigned long>(state.range(0));
    spec.workers = 1;
    auto res = gapk::runner(spec);
    benchmark::DoNotOptimize(res.differences.size());
  }
}
BENCHMARK(BM_Runner)->Arg(1000)->Arg(100000);

void BM_CertificateTable(benchmark::State& state) {
  for (auto _ : state) {
    for (unsigned k = 2; k <= 103; ++k) {
      gapk::Natural p = gapk::smallest_prime_geq(k);
      benchmark::DoNotOptimize(gapk::common_factor(p, p, k).common_factor);
    }
  }
}
BENCHMARK(BM_CertificateTable);

void BM_MinimalGap8(benchmark::State& state) {
  for (auto _ : state) {
    auto res = gapk::minimal_gap(8, gapk::Natural(100000), {1});
    benchmark::DoNotOptimize(res.searched_below);
  }
}
BENCHMARK(BM_MinimalGap8);

}  // namespace

BENCHMARK_MAIN();
