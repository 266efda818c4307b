#include <benchmark/benchmark.h>

#include "nuchern/char_class.hpp"

using namespace nuchern;

static void BM_MatrixCurvature(benchmark::State& state) {
  Registry reg;
  TruncationGuard guard(6);
  SyntheticCocycle cyc = synth_cocycle(reg, 2, 1, 3, 7, "bc");
  PartitionFamily part = make_partition(reg, 3, "bc_rho");
  std::vector<FormMatrix> omega = matrix_connection(cyc, part);
  for (auto _ : state) {
    for (const auto& w : omega) benchmark::DoNotOptimize(matrix_curvature(w));
  }
}
BENCHMARK(BM_MatrixCurvature);

static void BM_BerSeries(benchmark::State& state) {
  Registry reg;
  TruncationGuard guard(6);
  SyntheticCocycle cyc = synth_cocycle(reg, 2, 1, 3, 7, "bs");
  PartitionFamily part = make_partition(reg, 3, "bs_rho");
  std::vector<FormMatrix> omega = matrix_connection(cyc, part);
  FormMatrix R = matrix_curvature(omega[0]);
  int z = reg.register_symbol("bs_z", SymKind::Scalar);
  for (auto _ : state) benchmark::DoNotOptimize(ber_series(R, z, 2));
}
BENCHMARK(BM_BerSeries);

BENCHMARK_MAIN();
