#include <benchmark/benchmark.h>

#include <random>

#include "knotfoam/foam.hpp"
#include "knotfoam/graphs.hpp"
#include "knotfoam/homology.hpp"
#include "knotfoam/khovanov.hpp"
#include "knotfoam/lee.hpp"

using namespace knotfoam;

namespace {

PDCode torus_3_4() { return braid_to_pd({1, 2, 1, 2, 1, 2, 1, 2}, 3); }
PDCode ten_crossing() { return braid_to_pd({1, 1, 1, 2, -1, 2, 1, 1, -2, -2}, 3); }

}  // namespace

static void BM_EvaluateRandomFoams(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::vector<ClosedFoam> foams;
  for (int i = 0; i < 64; ++i) foams.push_back(random_foam(rng));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_foam(foams[i++ % foams.size()]));
}
BENCHMARK(BM_EvaluateRandomFoams);

static void BM_GradedDimension(benchmark::State& state) {
  std::mt19937_64 rng(11);
  std::vector<TrivalentGraph> graphs;
  for (int i = 0; i < 32; ++i) graphs.push_back(random_graph(rng, static_cast<int>(state.range(0))));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(graded_dimension(graphs[i++ % graphs.size()]));
}
BENCHMARK(BM_GradedDimension)->Arg(6)->Arg(12);

static void BM_BuildComplex(benchmark::State& state) {
  PDCode pd = state.range(0) == 8 ? torus_3_4() : ten_crossing();
  BuildOptions opts;
  opts.threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(build_complex(pd, Side::Kh, opts));
}
BENCHMARK(BM_BuildComplex)->Args({8, 1})->Args({10, 1})->Args({10, 4})->Unit(benchmark::kMillisecond);

static void BM_IntegralHomology(benchmark::State& state) {
  PDCode pd = state.range(0) == 8 ? torus_3_4() : ten_crossing();
  GradedChainComplex c = build_complex(pd, Side::Kh);
  for (auto _ : state) benchmark::DoNotOptimize(integral_homology(c));
}
BENCHMARK(BM_IntegralHomology)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_SInvariant(benchmark::State& state) {
  PDCode pd = state.range(0) == 8 ? torus_3_4() : ten_crossing();
  for (auto _ : state) benchmark::DoNotOptimize(s_invariant(pd));
}
BENCHMARK(BM_SInvariant)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
