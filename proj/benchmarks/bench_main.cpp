#include <benchmark/benchmark.h>

#include <vector>

#include "conecert/catalog.hpp"
#include "conecert/checkers.hpp"
#include "conecert/cone.hpp"
#include "conecert/diffops.hpp"
#include "conecert/linalg.hpp"
#include "conecert/rng.hpp"

using namespace conecert;

static void BM_SymEig(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1, 0);
  const Point a = sample(ConeSpec::psd(n), rng, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(sym_eig(a));
}
BENCHMARK(BM_SymEig)->DenseRange(2, 8, 2);

static void BM_KthDiff(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const FunctionHandle f = instantiate(lookup("exp-neg-linear"), {}, 3);
  Rng rng(2, 0);
  std::vector<Point> xs;
  for (std::size_t i = 0; i < k; ++i) xs.push_back(sample(f.domain(), rng, 1.0));
  const Point base = sample(f.domain(), rng, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(kth_diff(f, xs, base));
}
BENCHMARK(BM_KthDiff)->DenseRange(1, 10, 3);

static void BM_CheckScalar(benchmark::State& state) {
  CheckConfig cfg;
  cfg.trials = 1000;
  const FunctionHandle f = instantiate(lookup("log1p"));
  for (auto _ : state) benchmark::DoNotOptimize(check(f, PropertyLabel::StrongSubadd, cfg));
}
BENCHMARK(BM_CheckScalar)->Unit(benchmark::kMillisecond);

static void BM_CheckDet(benchmark::State& state) {
  CheckConfig cfg;
  cfg.trials = 1000;
  const FunctionHandle f =
      instantiate(lookup("det"), {}, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check(f, PropertyLabel::StrongSuperadd, cfg));
}
BENCHMARK(BM_CheckDet)->DenseRange(2, 5, 1)->Unit(benchmark::kMillisecond);

static void BM_RefuteGeomean(benchmark::State& state) {
  CheckConfig cfg;
  cfg.trials = 1000;
  const FunctionHandle f = instantiate(lookup("geomean2"));
  for (auto _ : state) benchmark::DoNotOptimize(refute(f, PropertyLabel::StrongSubadd, cfg));
}
BENCHMARK(BM_RefuteGeomean)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
