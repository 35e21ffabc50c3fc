#include <benchmark/benchmark.h>

#include "twreduce/generator.hpp"
#include "twreduce/hamilton.hpp"
#include "twreduce/nice_decomposition.hpp"
#include "twreduce/partition.hpp"
#include "twreduce/reduce.hpp"
#include "twreduce/steiner.hpp"

namespace {

using namespace twr;

std::vector<TableRow> random_rows(int t, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  const auto all = enumerate_partitions(t);
  std::vector<TableRow> rows;
  rows.reserve(count);
  for (std::size_t i = 0; i < count && i < all.size(); ++i) {
    rows.push_back({all[rng.below(all.size())], static_cast<Weight>(rng.range(0, 1000))});
  }
  return rows;
}

void BM_Reduce(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  const auto rows = random_rows(t, 4 * (std::size_t{1} << (t - 1)), 7);
  for (auto _ : state) {
    auto res = reduce(rows, t);
    benchmark::DoNotOptimize(res.rows.data());
  }
}
BENCHMARK(BM_Reduce)->DenseRange(4, 10, 2);

void BM_ReduceMatchings(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  Rng rng(11);
  const auto all = enumerate_perfect_matchings(t);
  std::vector<TableRow> rows;
  for (const auto& m : all) {
    rows.push_back({m, static_cast<Weight>(rng.range(0, 1000))});
  }
  for (auto _ : state) {
    auto res = reduce_matchings(rows, t);
    benchmark::DoNotOptimize(res.rows.data());
  }
}
BENCHMARK(BM_ReduceMatchings)->DenseRange(4, 10, 2);

void BM_LatticeJoin(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  const auto rows = random_rows(t, 512, 3);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& a = rows[i % rows.size()];
    const auto& b = rows[(i * 7 + 1) % rows.size()];
    benchmark::DoNotOptimize(lattice_join(a.part, b.part));
    ++i;
  }
}
BENCHMARK(BM_LatticeJoin)->Arg(8)->Arg(12);

void BM_HamiltonCycleGraph(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto inst = cycle_instance(n);
  const auto nd = nicify(inst.td, inst.graph);
  for (auto _ : state) {
    auto res = solve_hamilton(inst.graph, nd, HamiltonMode::Decision,
                              ReducePolicy::threshold(0));
    benchmark::DoNotOptimize(res.weight);
  }
}
BENCHMARK(BM_HamiltonCycleGraph)->Arg(1000)->Arg(10000);

void BM_SteinerKtree(benchmark::State& state) {
  const int width = static_cast<int>(state.range(0));
  const auto gen = random_partial_ktree(24, width, 700, 10, 5);
  const auto nd = nicify(gen.td, gen.graph);
  const SteinerInstance inst{gen.graph, {0, 5, 11}};
  for (auto _ : state) {
    auto res = solve_steiner(inst, nd, ReducePolicy::always());
    benchmark::DoNotOptimize(res.weight);
  }
}
BENCHMARK(BM_SteinerKtree)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
