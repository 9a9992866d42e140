#include <random>

#include <benchmark/benchmark.h>

#include <gabdual/gabdual.hpp>

using namespace gabdual;

namespace {

RealVector noise(long n) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RealVector x(n);
  for (long i = 0; i < n; ++i) x[i] = u(rng);
  return x;
}

void BM_PriorProx(benchmark::State& state, PriorKind kind, Domain domain) {
  const long L = state.range(0);
  Prior prior(kind, domain, 1.0);
  const RealVector y = noise(L);
  for (auto _ : state) benchmark::DoNotOptimize(prior.prox(y, 0.01));
}
BENCHMARK_CAPTURE(BM_PriorProx, l1_time, PriorKind::l1, Domain::time)->Arg(900);
BENCHMARK_CAPTURE(BM_PriorProx, l1_freq, PriorKind::l1, Domain::frequency)->Arg(900);
BENCHMARK_CAPTURE(BM_PriorProx, var_time, PriorKind::weighted_l1_var, Domain::time)->Arg(900);
BENCHMARK_CAPTURE(BM_PriorProx, envar_freq, PriorKind::weighted_l2_envar, Domain::frequency)->Arg(900);
BENCHMARK_CAPTURE(BM_PriorProx, grad_time, PriorKind::grad, Domain::time)->Arg(900);
BENCHMARK_CAPTURE(BM_PriorProx, s0, PriorKind::s0, Domain::time)->Arg(120)->Arg(360);
BENCHMARK_CAPTURE(BM_PriorProx, s0_weighted, PriorKind::s0_weighted, Domain::time)->Arg(120)->Arg(360);

}  // namespace

BENCHMARK_MAIN();
