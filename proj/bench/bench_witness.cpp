#include <benchmark/benchmark.h>

#include "cpsep/quotients.hpp"
#include "cpsep/separability.hpp"

using namespace cpsep;

namespace {

AmalgamSpec amalg1() {
  const auto c4 = FiniteGroup::cyclic(4);
  return AmalgamSpec::make(c4, c4, {0, 2}, {0, 2}, {{0, 0}, {2, 2}});
}

AmalgamSpec d4_amalgam() {
  // D4 with itself over the rotation subgroup
  const auto d4 = FiniteGroup::dihedral(4);
  return AmalgamSpec::make(d4, d4, {0, 1, 2, 3}, {0, 1, 2, 3}, {{0, 0}, {1, 3}, {2, 2}, {3, 1}});
}

Execution mode(const benchmark::State& st) { return st.range(0) ? Execution::parallel : Execution::serial; }

void BM_direct_witness(benchmark::State& st) {
  const auto s = d4_amalgam();
  const auto catalog = p_group_catalog(2, 16);
  // a separable pair whose witness sits late in the catalog
  const Word f{{Factor::H, 4}, {Factor::K, 5}}, g{{Factor::H, 4}, {Factor::K, 4}};
  for (auto _ : st) benchmark::DoNotOptimize(direct_witness(s, f, g, catalog, mode(st)));
}

void BM_all_direct_search(benchmark::State& st) {
  // no witness exists: every job is visited
  const auto s = AmalgamSpec::make(FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), {0}, {0}, {{0, 0}});
  const auto catalog = p_group_catalog(2, 16);
  const Word f{{Factor::K, 1}}, g{};
  for (auto _ : st) benchmark::DoNotOptimize(direct_witness(s, f, g, catalog, mode(st)));
}

void BM_search_witness(benchmark::State& st) {
  const auto s = amalg1();
  SearchBudget budget;
  const Word f{{Factor::H, 1}, {Factor::K, 1}}, g{{Factor::H, 3}, {Factor::K, 1}};
  for (auto _ : st) benchmark::DoNotOptimize(search_witness(s, f, g, budget, mode(st)));
}

void BM_compatible_pairs(benchmark::State& st) {
  const auto s = d4_amalgam();
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_compatible_pairs(s, 2, 8, mode(st)));
}

}  // namespace

BENCHMARK(BM_direct_witness)->ArgName("parallel")->Arg(0)->Arg(1);
BENCHMARK(BM_all_direct_search)->ArgName("parallel")->Arg(0)->Arg(1);
BENCHMARK(BM_search_witness)->ArgName("parallel")->Arg(0)->Arg(1);
BENCHMARK(BM_compatible_pairs)->ArgName("parallel")->Arg(0)->Arg(1);

BENCHMARK_MAIN();
