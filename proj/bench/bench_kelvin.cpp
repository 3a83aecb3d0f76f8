// Serial vs OpenMP sweeps, and closed-form vs quadrature order derivatives.
#include <benchmark/benchmark.h>

#include "kelvin/orderderiv.hpp"
#include "kelvin/quad.hpp"
#include "kelvin/sweep.hpp"
#include "kelvin/verify.hpp"

namespace {

using kelvin::ExecMode;

void BM_TableGrid(benchmark::State& state, ExecMode mode) {
  const auto nus = kelvin::make_range(-2.25, 2.75, 0.5);
  const auto xs = kelvin::make_range(0.5, 10.0, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kelvin::evaluate_grid(nus, xs, {}, mode));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(nus.size() * xs.size()));
}
BENCHMARK_CAPTURE(BM_TableGrid, serial, ExecMode::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_TableGrid, parallel, ExecMode::parallel)->Unit(benchmark::kMillisecond);

void BM_VerifyAll(benchmark::State& state, ExecMode mode) {
  kelvin::VerifyOptions opts;
  opts.mode = mode;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kelvin::run_suite("all", opts));
  }
}
BENCHMARK_CAPTURE(BM_VerifyAll, serial, ExecMode::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_VerifyAll, parallel, ExecMode::parallel)->Unit(benchmark::kMillisecond);

const double kPoints[][2] = {{0.3, 0.5}, {0.75, 2.0}, {1.5, 5.0}, {2.6, 8.0}};

void BM_DerivClosedForm(benchmark::State& state) {
  const auto& p = kPoints[state.range(0)];
  for (auto _ : state) {
    benchmark::DoNotOptimize(kelvin::dkelvin(p[0], p[1]));
  }
}
BENCHMARK(BM_DerivClosedForm)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

void BM_DerivQuadrature(benchmark::State& state) {
  const auto& p = kPoints[state.range(0)];
  for (auto _ : state) {
    benchmark::DoNotOptimize(kelvin::apelblat_dber_dbei(p[0], p[1]));
  }
}
BENCHMARK(BM_DerivQuadrature)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
