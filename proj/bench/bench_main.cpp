// Serial reference vs OpenMP kernel for the exhaustive searches and batch
// classification. Systems are unsolvable so both sides scan the whole space.

#include <benchmark/benchmark.h>

#include "groupeq/abelian_solver.hpp"
#include "groupeq/nilpotent.hpp"

using namespace groupeq;

namespace {

// 3a + 3b + 3c + 3d = 1 over Z/27: no solution, 27^4 candidates
AbelianSystem abelian_case() {
  AbelianSystem sys;
  sys.group = AbelianGroup({Summand::cyclic(3, 3)});
  Row r;
  for (const char* v : {"a", "b", "c", "d"}) add_to_row(r, v, 3);
  sys.add(r, sys.group.element({1}));
  return sys;
}

// Heisenberg mod 3 as a table; every cube is trivial, so a^3 b^3 c^3 d^3 = g
// has no solution for g != 1
struct TableCase {
  TableGroup table;
  GroupSystem sys;
};

TableCase table_case() {
  const auto h = HeisenbergGroup::mod(3, 1);
  const auto elems = h->elements();
  TableCase tc{TableGroup::from_handle(*h, elems), {}};
  GroupEquation eq;
  for (const char* v : {"a", "b", "c", "d"}) eq.x(v, 3);
  eq.c(TableGroup::as_element(1));
  tc.sys.equations.push_back(eq);
  return tc;
}

std::vector<IntMatrix> matrices() {
  Rng rng(99);
  std::vector<IntMatrix> out;
  for (int t = 0; t < 5000; ++t) {
    IntMatrix m(3, 4);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 4; ++j) m(i, j) = rng.uniform(-9, 9);
    out.push_back(m);
  }
  return out;
}

void BM_AbelianSearchSerial(benchmark::State& state) {
  const auto sys = abelian_case();
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_solve_serial(sys));
}
void BM_AbelianSearchParallel(benchmark::State& state) {
  const auto sys = abelian_case();
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_solve(sys));
}

void BM_TableSearchSerial(benchmark::State& state) {
  const auto tc = table_case();
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_group_solve_serial(tc.sys, tc.table));
}
void BM_TableSearchParallel(benchmark::State& state) {
  const auto tc = table_case();
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_group_solve(tc.sys, tc.table));
}

const std::vector<Int> kPrimes{2, 3, 5, 7};

void BM_ClassifySerial(benchmark::State& state) {
  const auto ms = matrices();
  for (auto _ : state) benchmark::DoNotOptimize(classify_batch_serial(ms, kPrimes));
}
void BM_ClassifyParallel(benchmark::State& state) {
  const auto ms = matrices();
  for (auto _ : state) benchmark::DoNotOptimize(classify_batch(ms, kPrimes));
}

}  // namespace

BENCHMARK(BM_AbelianSearchSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AbelianSearchParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TableSearchSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TableSearchParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ClassifySerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ClassifyParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
