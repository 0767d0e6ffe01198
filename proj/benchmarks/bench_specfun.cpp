#include <benchmark/benchmark.h>

#include "fracorder/specfun.hpp"

namespace sf = fracorder::specfun;

static void BM_LnGamma(benchmark::State& state) {
  double x = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sf::ln_gamma(x));
    x = x < 150.0 ? x * 1.7 : 0.37;
  }
}
BENCHMARK(BM_LnGamma);

static void BM_Digamma(benchmark::State& state) {
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sf::digamma(x));
    x = x < 100.0 ? x + 1.3 : 0.5;
  }
}
BENCHMARK(BM_Digamma);

// z = -range(0); integer omega goes through the closed form below -1.
static void BM_MittagLefflerInteger(benchmark::State& state) {
  double const z = -static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sf::mittag_leffler_one(4.0, z));
}
BENCHMARK(BM_MittagLefflerInteger)->Arg(1)->Arg(10)->Arg(30)->Arg(300);

static void BM_MittagLefflerNonInteger(benchmark::State& state) {
  double const z = -static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sf::mittag_leffler_one(2.5, z));
}
BENCHMARK(BM_MittagLefflerNonInteger)->Arg(1)->Arg(10)->Arg(30)->Arg(50);

static void BM_MittagLefflerSeriesVsClosed(benchmark::State& state) {
  bool const series = state.range(0) != 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(series ? sf::mittag_leffler_one_series(5, -20.0)
                                    : sf::mittag_leffler_one_closed(5, -20.0));
  }
  state.SetLabel(series ? "series" : "closed");
}
BENCHMARK(BM_MittagLefflerSeriesVsClosed)->Arg(0)->Arg(1);
