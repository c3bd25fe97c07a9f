// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <random>

#include "tmlab/corpus.hpp"
#include "tmlab/enumerate.hpp"
#include "tmlab/sat.hpp"
#include "tmlab/tm_sort.hpp"
#include "tmlab/transform.hpp"

namespace {

using namespace tmlab;

std::vector<std::pair<std::size_t, std::size_t>> sort_grid(std::size_t m_hi) {
  std::vector<std::pair<std::size_t, std::size_t>> g;
  for (std::size_t m = 8; m <= m_hi; m *= 2)
    for (std::size_t w : {8, 16}) g.emplace_back(m, w);
  return g;
}

void BM_SortGridSerial(benchmark::State& state) {
  auto grid = sort_grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_step_bound_serial(grid).max_ratio);
}

void BM_SortGridParallel(benchmark::State& state) {
  auto grid = sort_grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_step_bound(grid).max_ratio);
}

SatSweepOptions sweep_options(std::int64_t n_hi) {
  SatSweepOptions o;
  o.n_hi = static_cast<std::size_t>(n_hi);
  o.instances = 1;
  return o;
}

void BM_SatSweepSerial(benchmark::State& state) {
  SatSweepOptions o = sweep_options(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sat_step_sweep_serial(o).fit.max_ratio);
}

void BM_SatSweepParallel(benchmark::State& state) {
  SatSweepOptions o = sweep_options(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sat_step_sweep(o).fit.max_ratio);
}

// An unsatisfiable formula on v variables: every branch runs to the end.
struct GuessTreeCase {
  Program program;
  std::string input;
  std::size_t v;
};

GuessTreeCase unsat_case(std::size_t v) {
  CnfFormula f;
  f.variable_count = v;
  for (std::uint32_t i = 1; i <= v; ++i) f.clauses.push_back({{i, false}});
  f.clauses.push_back({{1, true}});
  std::string bits = encode(f).bits;
  return {sat_verifier_program(), bits, v};
}

void BM_GuessTreeSerial(benchmark::State& state) {
  GuessTreeCase c = unsat_case(static_cast<std::size_t>(state.range(0)));
  const std::uint64_t fuel = default_sat_fuel(c.input.size());
  for (auto _ : state)
    benchmark::DoNotOptimize(explore_guess_tree(c.program, c.input, c.v, fuel).branches);
}

void BM_GuessTreeParallel(benchmark::State& state) {
  GuessTreeCase c = unsat_case(static_cast<std::size_t>(state.range(0)));
  const std::uint64_t fuel = default_sat_fuel(c.input.size());
  for (auto _ : state)
    benchmark::DoNotOptimize(explore_guess_tree_parallel(c.program, c.input, c.v, fuel).branches);
}

void BM_WitnessSearchSerial(benchmark::State& state) {
  CorpusMachine m = corpus_machine("index-of-one");
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const std::string x(n, '0');
  for (auto _ : state)
    benchmark::DoNotOptimize(search_witness_serial(m.decider, x, m.w(n), 1'000'000).max_steps);
}

void BM_WitnessSearchParallel(benchmark::State& state) {
  CorpusMachine m = corpus_machine("index-of-one");
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const std::string x(n, '0');
  for (auto _ : state)
    benchmark::DoNotOptimize(search_witness_parallel(m.decider, x, m.w(n), 1'000'000).max_steps);
}

}  // namespace

BENCHMARK(BM_SortGridSerial)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SortGridParallel)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SatSweepSerial)->Arg(2048)->Arg(8192)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SatSweepParallel)->Arg(2048)->Arg(8192)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GuessTreeSerial)->Arg(6)->Arg(9)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GuessTreeParallel)->Arg(6)->Arg(9)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WitnessSearchSerial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WitnessSearchParallel)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
