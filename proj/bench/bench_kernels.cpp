// Serial reference kernels against the OpenMP ones.
#include <random>

#include <benchmark/benchmark.h>

#include "sidonkit/kernels.hpp"

using namespace sidonkit;

namespace {

GroundSet random_integers(std::size_t n, std::int64_t span, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> d(0, span);
  std::vector<Element> e;
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(d(rng));
  return GroundSet(AmbientSpec::integers(), std::move(e));
}

template <PairHistogram (*F)(const GroundSet&, const GroundSet&, CompositionMode, bool)>
void histogram_dense(benchmark::State& state) {
  const auto a = random_integers(static_cast<std::size_t>(state.range(0)), 1 << 16, 1);
  for (auto _ : state) benchmark::DoNotOptimize(F(a, a, CompositionMode::kDifference, false));
}

template <PairHistogram (*F)(const GroundSet&, const GroundSet&, CompositionMode, bool)>
void histogram_sparse(benchmark::State& state) {
  const auto a = random_integers(static_cast<std::size_t>(state.range(0)), 1LL << 50, 2);
  for (auto _ : state) benchmark::DoNotOptimize(F(a, a, CompositionMode::kSum, false));
}

template <std::vector<std::uint64_t> (*F)(const GroundSet&, const GroundSet&)>
void overlaps(benchmark::State& state) {
  const auto a = random_integers(static_cast<std::size_t>(state.range(0)), 1 << 14, 3);
  const auto p = GroundSet::interval(-64, 64);
  for (auto _ : state) benchmark::DoNotOptimize(F(a, p));
}

}  // namespace

BENCHMARK(histogram_dense<serial::pair_histogram>)->Arg(512)->Arg(2048);
BENCHMARK(histogram_dense<parallel::pair_histogram>)->Arg(512)->Arg(2048);
BENCHMARK(histogram_sparse<serial::pair_histogram>)->Arg(512)->Arg(2048);
BENCHMARK(histogram_sparse<parallel::pair_histogram>)->Arg(512)->Arg(2048);
BENCHMARK(overlaps<serial::translate_overlaps>)->Arg(1024)->Arg(4096);
BENCHMARK(overlaps<parallel::translate_overlaps>)->Arg(1024)->Arg(4096);

BENCHMARK_MAIN();
