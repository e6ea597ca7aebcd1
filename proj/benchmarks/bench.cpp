#include <benchmark/benchmark.h>

#include "ybe/reduction.hpp"

using namespace ybe;

namespace {
const ModularParams mp({0.20, 1.00}, {0.35, 0.40});
}

static void BM_Theta1(benchmark::State& state) {
  const cd z{0.13, 0.07};
  for (auto _ : state) benchmark::DoNotOptimize(theta(1, z, mp.tau(), mp.prec()));
}
BENCHMARK(BM_Theta1);

static void BM_EllipticGamma(benchmark::State& state) {
  const cd z{0.13, 0.07};
  for (auto _ : state) benchmark::DoNotOptimize(elliptic_gamma(z, mp));
}
BENCHMARK(BM_EllipticGamma);

static void BM_BaxterYbeResidual(benchmark::State& state) {
  auto fam = [&](cd w) { return baxter_r(w, false, mp); };
  for (auto _ : state)
    benchmark::DoNotOptimize(ybe_residual(fam, cd(0.31, 0.17), cd(0.12, -0.08)));
}
BENCHMARK(BM_BaxterYbeResidual);

static void BM_LatticeIntertwinerApply(benchmark::State& state) {
  const auto op = m_lattice(int(state.range(0)), int(state.range(1)), false, mp);
  const auto f = test_functions(mp)[1];
  for (auto _ : state) benchmark::DoNotOptimize(op.apply(f, cd(0.22, 0.04)));
}
BENCHMARK(BM_LatticeIntertwinerApply)->Args({1, 0})->Args({2, 1})->Args({3, 3});

static void BM_MIntegral(benchmark::State& state) {
  const auto f = test_functions(mp)[1];
  const QuadratureConfig quad{int(state.range(0)), 0, 1.0};
  for (auto _ : state)
    benchmark::DoNotOptimize(m_integral(cd(-0.1, -0.31), f, cd(0.21, 0.04), quad, mp).value);
}
BENCHMARK(BM_MIntegral)->Arg(64)->Arg(256);

static void BM_ReduceFirstSpaceApply(benchmark::State& state) {
  const ReducedFirstSpace red(cd(0.31, 0.17), FiniteRep{1, 0, false}, cd(0.27, 0.13), mp, 7,
                              ReductionSource::reduction);
  const auto f = test_functions(mp)[1];
  for (auto _ : state) benchmark::DoNotOptimize(red.apply_entries(f, cd(0.22, 0.04)));
}
BENCHMARK(BM_ReduceFirstSpaceApply);

BENCHMARK_MAIN();
