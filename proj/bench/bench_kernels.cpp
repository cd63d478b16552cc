// Parallel kernels against their serial references.

#include <random>

#include <benchmark/benchmark.h>

#include "toricseq/cohomology.hpp"
#include "toricseq/fans.hpp"
#include "toricseq/reports.hpp"
#include "toricseq/sequences.hpp"

using namespace toricseq;

static void BM_CensusParallel(benchmark::State& st) {
  const auto rays = static_cast<size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_blowups(rays, false));
}
static void BM_CensusSerial(benchmark::State& st) {
  const auto rays = static_cast<size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_blowups_serial(rays, false));
}
BENCHMARK(BM_CensusParallel)->Arg(9)->Arg(11)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CensusSerial)->Arg(9)->Arg(11)->Unit(benchmark::kMillisecond);

static void BM_SearchParallel(benchmark::State& st) {
  const ToricSurface s = census_surface("7a");
  for (auto _ : st) benchmark::DoNotOptimize(search_cyclic_systems(s));
}
static void BM_SearchSerial(benchmark::State& st) {
  const ToricSurface s = census_surface("7a");
  for (auto _ : st) benchmark::DoNotOptimize(search_cyclic_systems_serial(s));
}
BENCHMARK(BM_SearchParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SearchSerial)->Unit(benchmark::kMillisecond);

static std::vector<IntVec> random_divisors(size_t n, size_t count) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<Int> c(-6, 6);
  std::vector<IntVec> out(count, IntVec(n));
  for (auto& d : out)
    for (auto& x : d) x = c(rng);
  return out;
}

static void BM_BatchCohomologyParallel(benchmark::State& st) {
  const ToricSurface s = census_surface("9");
  const auto ds = random_divisors(s.size(), static_cast<size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(batch_cohomology(s, ds));
}
static void BM_BatchCohomologySerial(benchmark::State& st) {
  const ToricSurface s = census_surface("9");
  const auto ds = random_divisors(s.size(), static_cast<size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(batch_cohomology_serial(s, ds));
}
BENCHMARK(BM_BatchCohomologyParallel)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchCohomologySerial)->Arg(4096)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
