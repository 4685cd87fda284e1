#include <benchmark/benchmark.h>
#include <omp.h>

#include "tropid/identities.hpp"
#include "tropid/kernels.hpp"
#include "tropid/random.hpp"

namespace {

using namespace tropid;

IntTropMatrix sample(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return random_int_matrix(rng, n, EntryDistribution{-10, 10, 0.3, false});
}

void BM_MulSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const IntTropMatrix a = sample(n, 1);
  const IntTropMatrix b = sample(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(mul_serial(a, b));
  state.SetComplexityN(state.range(0));
}

void BM_MulParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const IntTropMatrix a = sample(n, 1);
  const IntTropMatrix b = sample(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(mul_parallel(a, b));
  state.counters["threads"] = omp_get_max_threads();
}

// Exact rational path on the same data, for scale.
void BM_MulRational(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const TropMatrix a = sample(n, 1).to_trop();
  const TropMatrix b = sample(n, 2).to_trop();
  for (auto _ : state) benchmark::DoNotOptimize(mat_mul(a, b));
}

BENCHMARK(BM_MulSerial)->RangeMultiplier(2)->Range(16, 256);
BENCHMARK(BM_MulParallel)->RangeMultiplier(2)->Range(16, 256);
BENCHMARK(BM_MulRational)->RangeMultiplier(2)->Range(16, 64);

// Adjan pair over U2 is an identity, so every trial runs.
void BM_Falsify(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  const Identity id(Word::parse("abbaababba"), Word::parse("abbabaabba"));
  FalsifyOptions fo;
  fo.n = 2;
  fo.trials = 4096;
  fo.dist.upper_triangular = true;
  const int saved = omp_get_max_threads();
  omp_set_num_threads(threads);
  for (auto _ : state) benchmark::DoNotOptimize(falsify(id, fo));
  omp_set_num_threads(saved);
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * fo.trials));
}

BENCHMARK(BM_Falsify)->Arg(1)->Arg(2)->Arg(4)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
