#include <random>

#include <benchmark/benchmark.h>

#include <gabdual/gabdual.hpp>

using namespace gabdual;

namespace {

RealVector noise(long n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RealVector x(n);
  for (long i = 0; i < n; ++i) x[i] = u(rng);
  return x;
}

void BM_Analyze(benchmark::State& state) {
  const long L = state.range(0);
  const GaborParams p(L / 18, L / 3, L);
  const RealVector g = periodize(make_window(WindowKind::hann, L / 4), L);
  const ComplexVector f = noise(L, 1).cast<Complex>();
  for (auto _ : state) benchmark::DoNotOptimize(analyze(g, p, f));
}
BENCHMARK(BM_Analyze)->Arg(360)->Arg(900)->Arg(3600);

void BM_Synthesize(benchmark::State& state) {
  const long L = state.range(0);
  const GaborParams p(L / 18, L / 3, L);
  const RealVector g = periodize(make_window(WindowKind::hann, L / 4), L);
  const Coefficients c = analyze(g, p, noise(L, 2).cast<Complex>());
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(g, p, c));
}
BENCHMARK(BM_Synthesize)->Arg(360)->Arg(900)->Arg(3600);

void BM_FullStftHalf(benchmark::State& state) {
  const long L = state.range(0);
  const FullStft stft(gauss_gauge(L));
  const RealVector x = noise(L, 3);
  ComplexMatrix out;
  for (auto _ : state) {
    stft.forward_half(x, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_FullStftHalf)->Arg(120)->Arg(360)->Arg(900);

void BM_CanonicalDual(benchmark::State& state) {
  const long L = state.range(0);
  const GaborParams p(L / 18, L / 3, L);
  const RealVector g = periodize(make_window(WindowKind::hann, L / 4), L);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_dual(g, p));
}
BENCHMARK(BM_CanonicalDual)->Arg(360)->Arg(900);

}  // namespace

BENCHMARK_MAIN();
