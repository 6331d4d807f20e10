#include <benchmark/benchmark.h>

#include "cw/codes.hpp"
#include "cw/cwgroup.hpp"
#include "cw/hypco.hpp"
#include "cw/presets.hpp"

using namespace cw;

static void BM_CycMatrixMul(benchmark::State& state) {
  auto fr = presets::formring("Z4-rho-a");
  auto gens = cw_generators(*fr);
  CycMatrix a = gens[0].mat, b = gens.back().mat;
  for (auto _ : state) {
    CycMatrix c = a * b;
    benchmark::DoNotOptimize(c);
    std::swap(a, c);
  }
}
BENCHMARK(BM_CycMatrixMul);

static void BM_GroupClosure_RhoA(benchmark::State& state) {
  auto fr = presets::formring("Z4-rho-a");
  for (auto _ : state) {
    auto G = build_group(*fr);
    benchmark::DoNotOptimize(G.order());
  }
}
BENCHMARK(BM_GroupClosure_RhoA)->Unit(benchmark::kMillisecond);

static void BM_Molien_RhoA_deg64(benchmark::State& state) {
  auto fr = presets::formring("Z4-rho-a");
  auto G = build_group(*fr);
  for (auto _ : state) {
    auto s = molien(G, 64);
    benchmark::DoNotOptimize(s.at(64));
  }
}
BENCHMARK(BM_Molien_RhoA_deg64)->Unit(benchmark::kMillisecond);

static void BM_Cwe_c16(benchmark::State& state) {
  Code c = presets::code("c16");
  for (auto _ : state) {
    auto p = cwe(c);
    benchmark::DoNotOptimize(p.coefficient_sum());
  }
}
BENCHMARK(BM_Cwe_c16)->Unit(benchmark::kMillisecond);

static void BM_UClosure_RhoB(benchmark::State& state) {
  auto fr = presets::formring("Z4-rho-b");
  for (auto _ : state) {
    HypCo U(fr);
    auto cl = U.closure();
    benchmark::DoNotOptimize(cl.order);
  }
}
BENCHMARK(BM_UClosure_RhoB)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
