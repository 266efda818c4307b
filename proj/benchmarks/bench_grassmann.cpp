#include <benchmark/benchmark.h>

#include <random>

#include "nuchern/grassmann.hpp"

using namespace nuchern;

namespace {

struct Setup {
  Registry reg;
  std::vector<GrassmannElement> xs;
  Setup() {
    int z1 = reg.register_symbol("bg_z1", SymKind::EvenCoord);
    int z2 = reg.register_symbol("bg_z2", SymKind::EvenCoord);
    std::vector<int> es;
    for (int i = 1; i <= 4; ++i)
      es.push_back(reg.register_symbol("bg_e" + std::to_string(i), SymKind::OddCoord));
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> cd(-3, 3);
    for (int t = 0; t < 64; ++t) {
      GrassmannElement x(cd(rng) + 4);
      for (int g = 0; g < 4; ++g) {
        RationalFunction c = RationalFunction(cd(rng)) +
                             RationalFunction(cd(rng)) * RationalFunction::variable(g % 2 ? z1 : z2);
        x = x + GrassmannElement::variable(es[static_cast<size_t>(g)]) * c;
      }
      xs.push_back(x);
    }
  }
};

Setup& setup() {
  static Setup s;
  return s;
}

}  // namespace

static void BM_GrassmannMultiply(benchmark::State& state) {
  auto& s = setup();
  size_t i = 0;
  for (auto _ : state) {
    const auto& a = s.xs[i % s.xs.size()];
    const auto& b = s.xs[(i + 7) % s.xs.size()];
    benchmark::DoNotOptimize(a * b);
    ++i;
  }
}
BENCHMARK(BM_GrassmannMultiply);

static void BM_GrassmannInvert(benchmark::State& state) {
  auto& s = setup();
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ge_invert(s.xs[i % s.xs.size()]));
    ++i;
  }
}
BENCHMARK(BM_GrassmannInvert);

BENCHMARK_MAIN();
