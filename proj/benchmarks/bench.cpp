#include <benchmark/benchmark.h>

#include "coxshadow/automata.hpp"
#include "coxshadow/oracle.hpp"
#include "coxshadow/roots.hpp"
#include "coxshadow/shi.hpp"

using namespace coxshadow;

namespace {

const char* const kSystems[] = {"Atilde2", "Gtilde2", "triangle(3,3,4)", "H3"};

void BM_SmallRoots(benchmark::State& state) {
  CoxeterGroup g(parse_system(kSystems[state.range(0)]));
  for (auto _ : state) benchmark::DoNotOptimize(small_roots(g).size());
  state.SetLabel(kSystems[state.range(0)]);
}
BENCHMARK(BM_SmallRoots)->DenseRange(0, 3);

void BM_BrinkHowlett(benchmark::State& state) {
  CoxeterGroup g(parse_system(kSystems[state.range(0)]));
  SmallRoots sigma = small_roots(g);
  for (auto _ : state) benchmark::DoNotOptimize(brink_howlett(g, sigma).size());
  state.SetLabel(kSystems[state.range(0)]);
}
BENCHMARK(BM_BrinkHowlett)->DenseRange(0, 3);

void BM_Minimize(benchmark::State& state) {
  CoxeterGroup g(parse_system(kSystems[state.range(0)]));
  Dfa bh = brink_howlett(g, small_roots(g));
  for (auto _ : state) benchmark::DoNotOptimize(minimize(bh).size());
  state.SetLabel(kSystems[state.range(0)]);
}
BENCHMARK(BM_Minimize)->DenseRange(0, 3);

void BM_ElementBall(benchmark::State& state) {
  CoxeterGroup g(parse_system("Gtilde2"));
  for (auto _ : state) benchmark::DoNotOptimize(ElementBall(g, static_cast<int>(state.range(0))).size());
}
BENCHMARK(BM_ElementBall)->Arg(8)->Arg(12)->Arg(16);

void BM_OracleBall(benchmark::State& state) {
  CoxeterSystem sys = parse_system("Gtilde2");
  for (auto _ : state) benchmark::DoNotOptimize(build_ball(sys, static_cast<int>(state.range(0))).size());
}
BENCHMARK(BM_OracleBall)->Arg(8)->Arg(12)->Arg(16);

void BM_ShiParts(benchmark::State& state) {
  CoxeterGroup g(parse_system("Gtilde2"));
  SmallRoots sigma = small_roots(g);
  ElementBall ball(g, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(shi_parts(g, sigma, ball).size());
}
BENCHMARK(BM_ShiParts)->Arg(8)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
