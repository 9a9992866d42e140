#include <random>

#include <benchmark/benchmark.h>

#include <gabdual/gabdual.hpp>

using namespace gabdual;

namespace {

struct Setup {
  explicit Setup(long L)
      : p(L / 18, L / 3, L), g(periodize(make_window(WindowKind::tukey, L / 4 + 15, {{"r", 0.6}}), L)), wr(g, p) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    y.resize(L);
    for (long i = 0; i < L; ++i) y[i] = u(rng);
  }
  GaborParams p;
  RealVector g;
  WRSystem wr;
  RealVector y;
};

void BM_WRSystemBuild(benchmark::State& state) {
  const Setup s(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(WRSystem(s.g, s.p));
}
BENCHMARK(BM_WRSystemBuild)->Arg(360)->Arg(900)->Unit(benchmark::kMillisecond);

void BM_ProjectDual(benchmark::State& state) {
  const Setup s(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(project_dual(s.y, s.wr));
}
BENCHMARK(BM_ProjectDual)->Arg(360)->Arg(900);

void BM_ProjectDualSupported(benchmark::State& state) {
  const Setup s(state.range(0));
  const DualSupportedProjector P(s.wr, SupportSpec::centered(2 * state.range(0) / 3));
  for (auto _ : state) benchmark::DoNotOptimize(P(s.y));
}
BENCHMARK(BM_ProjectDualSupported)->Arg(360)->Arg(900);

void BM_ProjectParseval(benchmark::State& state) {
  const Setup s(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(project_parseval(s.g, s.p));
}
BENCHMARK(BM_ProjectParseval)->Arg(360)->Arg(900);

}  // namespace

BENCHMARK_MAIN();
