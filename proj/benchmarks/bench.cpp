#include <benchmark/benchmark.h>

#include <random>

#include "sudoku_codes/codegraph.hpp"
#include "sudoku_codes/density_evolution.hpp"
#include "sudoku_codes/soft_bp.hpp"
#include "sudoku_codes/subset_bp.hpp"

using namespace sudoku_codes;

static void BM_Permanent(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> m(n, std::vector<double>(n));
  for (auto& row : m)
    for (double& x : row) x = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(permanent(m));
}
BENCHMARK(BM_Permanent)->Arg(4)->Arg(6)->Arg(9);

static void BM_ConstraintUpdate(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::uint64_t> bits(1, (std::uint64_t{1} << q) - 1);
  std::vector<SymbolSet> in;
  for (int m = 0; m < q - 1; ++m) in.emplace_back(bits(rng), q);
  for (auto _ : state) benchmark::DoNotOptimize(constraint_update(in, q));
}
BENCHMARK(BM_ConstraintUpdate)->Arg(4)->Arg(6)->Arg(9);

static void BM_BuildConstraintTable(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_constraint_table(q, q));
}
BENCHMARK(BM_BuildConstraintTable)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_FindThreshold(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(find_threshold(CodeParams(q, 3, q)));
}
BENCHMARK(BM_FindThreshold)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_Decode(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto [g, cw] = build_planted(CodeParams(4, 3, 4), n, 3);
  ReceivedWord rx = erase(cw, 0.9, 4);
  for (auto _ : state) benchmark::DoNotOptimize(decode(g, rx, 200));
}
BENCHMARK(BM_Decode)->Arg(120)->Arg(1200)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
