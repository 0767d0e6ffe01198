#include <benchmark/benchmark.h>

#include <cmath>

#include "fracorder/operators.hpp"

using namespace fracorder;

static void BM_CaputoQuadrature(benchmark::State& state) {
  QuadratureScheme scheme;
  scheme.n_nodes = static_cast<std::size_t>(state.range(0));
  auto const f = TestFunction::cosine();
  for (auto _ : state) {
    benchmark::DoNotOptimize(caputo_quadrature(f, FractionalOrder(0.7), 0.0, 1.0, scheme));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CaputoQuadrature)->RangeMultiplier(4)->Range(256, 65536)->Complexity();

static void BM_CaputoFabrizioQuadrature(benchmark::State& state) {
  QuadratureScheme scheme{static_cast<std::size_t>(state.range(0)),
                          QuadratureScheme::Kind::ExactExponential};
  auto const f = TestFunction::cosine();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        caputo_fabrizio_quadrature(f, FractionalOrder(0.7), 0.0, 1.0, scheme));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CaputoFabrizioQuadrature)->RangeMultiplier(4)->Range(256, 65536)->Complexity();

static void BM_CaputoClosedForm(benchmark::State& state) {
  auto const f = TestFunction::power(2.5);
  for (auto _ : state) benchmark::DoNotOptimize(caputo(f, FractionalOrder(0.7), 0.0, 1.0));
}
BENCHMARK(BM_CaputoClosedForm);

static void BM_CustomKernel(benchmark::State& state) {
  auto const h = KernelSpec::custom(
      [](double u, double beta) { return std::exp(-u / beta) / beta; }, false);
  auto const f = TestFunction::exponential();
  for (auto _ : state) benchmark::DoNotOptimize(generic_kernel_derivative(f, h, 0.3, 0.0, 1.0));
}
BENCHMARK(BM_CustomKernel);
