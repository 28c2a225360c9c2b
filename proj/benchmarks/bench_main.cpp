#include <benchmark/benchmark.h>

#include "parthom/homology.hpp"
#include "parthom/spectral.hpp"

using namespace parthom;

namespace {

BuildOptions no_cache() {
  BuildOptions o;
  o.cache_dir.reset();
  return o;
}

void BM_EnumeratePartitions(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    std::size_t count = 0;
    for_each_partition(n, std::nullopt, {}, [&](const SetPartition&) { ++count; });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_EnumeratePartitions)->DenseRange(6, 10, 2);

void BM_AdmissiblePermutations(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_admissible_permutations(n));
}
BENCHMARK(BM_AdmissiblePermutations)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_BuildXi2Faces(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto x = build_xi2(n, no_cache());
    std::size_t total = 0;
    for (int d = 0; d <= x.dimension(); ++d) total += x.faces(d)->size();
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_BuildXi2Faces)->Arg(6)->Unit(benchmark::kMillisecond);

// Rank of the largest boundary of Delta(6) by each engine.
void rank_bench(benchmark::State& state, RankMethod method) {
  auto d6 = build_delta(6, no_cache());
  auto m = boundary_matrix(d6, 3);
  RankOptions o;
  o.method = method;
  for (auto _ : state) benchmark::DoNotOptimize(rank_exact(m, o));
  state.counters["nnz"] = static_cast<double>(m.nonzeros());
}
void BM_RankDelta6Certified(benchmark::State& state) { rank_bench(state, RankMethod::certified); }
void BM_RankDelta6Modular(benchmark::State& state) { rank_bench(state, RankMethod::modular); }
BENCHMARK(BM_RankDelta6Certified)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RankDelta6Modular)->Unit(benchmark::kMillisecond);

void BM_SmithXi2_6(benchmark::State& state) {
  auto x = build_xi2(6, no_cache());
  auto m = boundary_matrix(x, 3);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithXi2_6)->Unit(benchmark::kMillisecond);

void BM_BettiXi2(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto x = build_xi2(n, no_cache());
    benchmark::DoNotOptimize(betti_numbers(x, false));
  }
}
BENCHMARK(BM_BettiXi2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_E1Computed(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(e1_page_computed(6, 3));
}
BENCHMARK(BM_E1Computed)->Unit(benchmark::kMillisecond);

void BM_GmIdentity(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gm_identity_check(8, 3));
}
BENCHMARK(BM_GmIdentity)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
