#include <benchmark/benchmark.h>

#include "nuchern/atlas.hpp"

using namespace nuchern;

static void BM_BuildAtlas21(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_atlas(2, 1));
}
BENCHMARK(BM_BuildAtlas21);

static void BM_TransitionCompose(benchmark::State& state) {
  ChartAtlas a = build_atlas(2, 1);
  TransitionMap t12 = transition(a, 1, 2);
  TransitionMap t24 = transition(a, 2, 4);
  for (auto _ : state) {
    Substitution composed;
    for (const auto& [id, img] : t12.images) composed[id] = substitute(img, t24.images);
    benchmark::DoNotOptimize(composed);
  }
}
BENCHMARK(BM_TransitionCompose);

static void BM_GluingSuite21(benchmark::State& state) {
  ChartAtlas a = build_atlas(2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(verify_gluing(a));
}
BENCHMARK(BM_GluingSuite21);

BENCHMARK_MAIN();
