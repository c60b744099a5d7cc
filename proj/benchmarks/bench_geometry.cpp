#include <benchmark/benchmark.h>

#include "spdgeom/experiments.hpp"
#include "spdgeom/mean_kernel.hpp"
#include "spdgeom/mixed_euclidean.hpp"
#include "spdgeom/rng.hpp"
#include "spdgeom/univariate.hpp"

namespace {

using namespace spdgeom;

Matrix random_symmetric(SplitMix64& rng, Index n) {
  Matrix a(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) a(i, j) = rng.normal();
  return 0.5 * (a + a.transpose());
}

SpdMatrix random_spd(SplitMix64& rng, Index n) {
  const Matrix a = random_symmetric(rng, n);
  return SpdMatrix(a * a + Matrix::Identity(n, n));
}

void BM_SymEigendecompose(benchmark::State& state) {
  SplitMix64 rng(7);
  const Index n = state.range(0);
  const SpdMatrix s = random_spd(rng, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sym_eigendecompose(s.matrix()));
  }
}
BENCHMARK(BM_SymEigendecompose)->Arg(3)->Arg(10)->Arg(50);

void BM_MeCurvature(benchmark::State& state) {
  SplitMix64 rng(7);
  const Index n = state.range(0);
  const auto metric = MixedEuclideanMetric::mpe(1.0, 0.0);
  const SpdMatrix s = random_spd(rng, n);
  const Matrix x = random_symmetric(rng, n), y = random_symmetric(rng, n);
  const Matrix z = random_symmetric(rng, n), t = random_symmetric(rng, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(me_curvature(metric, s, x, y, z, t));
  }
}
BENCHMARK(BM_MeCurvature)->Arg(3)->Arg(10);

void BM_GridCell(benchmark::State& state) {
  // One fast-preset cell: 100 matrices x 4000 planes.
  GridConfig cfg = GridConfig::fast();
  cfg.alpha_lo = cfg.alpha_hi = 1.0;
  cfg.beta_lo = cfg.beta_hi = 0.0;
  cfg.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(curvature_grid(cfg));
  }
}
BENCHMARK(BM_GridCell)->Unit(benchmark::kMillisecond);

void BM_MeanKernelCheck(benchmark::State& state) {
  const auto spec = power_wasserstein_mean(2.6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mean_kernel_check(spec.mean));
  }
}
BENCHMARK(BM_MeanKernelCheck)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
