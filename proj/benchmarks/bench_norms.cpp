#include <benchmark/benchmark.h>

#include "fracorder/analysis.hpp"
#include "fracorder/norms.hpp"

using namespace fracorder;

static void BM_ErrorL1Cosine(benchmark::State& state) {
  auto const f = TestFunction::cosine();
  for (auto _ : state) {
    benchmark::DoNotOptimize(error_l1(f, OperatorKind::Caputo, 0.1, Interval(0, 1)));
  }
}
BENCHMARK(BM_ErrorL1Cosine)->Unit(benchmark::kMillisecond);

static void BM_ErrorLinfAbsShift(benchmark::State& state) {
  ErrorOptions options;
  options.n_grid = static_cast<std::size_t>(state.range(0));
  auto const f = TestFunction::abs_shift(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(error_linf(f, OperatorKind::Caputo, 0.01, Interval(0, 2), options));
  }
}
BENCHMARK(BM_ErrorLinfAbsShift)->Arg(2001)->Arg(20001)->Unit(benchmark::kMillisecond);

// Threads = range(0); one sweep over the default 37-point grid.
static void BM_SweepExponentialCF(benchmark::State& state) {
  auto const betas = geometric_betas(0.1, 1e-4, 12);
  auto const f = TestFunction::exponential();
  for (auto _ : state) {
    benchmark::DoNotOptimize(error_sweep(f, OperatorKind::CaputoFabrizio, NormKind::LInf, betas,
                                         Interval(0, 1), {},
                                         static_cast<unsigned>(state.range(0))));
  }
}
BENCHMARK(BM_SweepExponentialCF)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_Table1(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(table1());
}
BENCHMARK(BM_Table1);

static void BM_TStar(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(t_star(4, 0.05));
}
BENCHMARK(BM_TStar);
