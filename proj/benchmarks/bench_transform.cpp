#include <cmath>

#include <benchmark/benchmark.h>

#include "hml/hankel.hpp"
#include "hml/heat.hpp"
#include "hml/multiplier.hpp"
#include "hml/sobolev.hpp"
#include "hml/specfun.hpp"

namespace {

using namespace hml;

void BM_BesselJ(benchmark::State& state) {
  double x = 0.1, acc = 0.0;
  for (auto _ : state) {
    acc += bessel_j(0.5, x);
    x = x < 200.0 ? x * 1.01 : 0.1;
  }
  benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_BesselJ);

// Plans on [0, 16] with the dual radius Lambda given by the argument and the
// fewest nodes that resolve it.
std::shared_ptr<const TransformPlan> plan_1d(double Lambda) {
  return TransformPlan::make(MultiIndex({0.5}), 16.0, Lambda, TransformPlan::minimal_nodes(16.0, Lambda));
}

void BM_PlanBuild(benchmark::State& state) {
  const double Lambda = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(plan_1d(Lambda));
}
BENCHMARK(BM_PlanBuild)->Arg(8)->Arg(38)->Unit(benchmark::kMillisecond);

void BM_Transform1D(benchmark::State& state) {
  const auto plan = plan_1d(static_cast<double>(state.range(0)));
  state.counters["n"] = static_cast<double>(plan->spatial()->size());
  const GridFunction f =
      GridFunction::sample_real(plan->spatial(), [](std::span<const double> x) { return std::exp(-x[0] * x[0]); });
  for (auto _ : state) benchmark::DoNotOptimize(hankel_transform(*plan, f));
}
BENCHMARK(BM_Transform1D)->Arg(8)->Arg(38)->Arg(76)->Unit(benchmark::kMicrosecond);

void BM_Transform2D(benchmark::State& state) {
  const auto plan = TransformPlan::make(MultiIndex({0.5, 0.5}), 16.0, 8.7, 256);
  const GridFunction f = GridFunction::sample_real(
      plan->spatial(), [](std::span<const double> x) { return std::exp(-x[0] * x[0] - x[1] * x[1]); });
  for (auto _ : state) benchmark::DoNotOptimize(hankel_transform(*plan, f));
}
BENCHMARK(BM_Transform2D)->Unit(benchmark::kMillisecond);

void BM_Multiplier1D(benchmark::State& state) {
  const auto plan = plan_1d(38.0);
  const Symbol m = laplace_type_imag_power(1, 1.0);
  const GridFunction f =
      GridFunction::sample_real(plan->spatial(), [](std::span<const double> x) { return std::exp(-x[0] * x[0]); });
  for (auto _ : state) benchmark::DoNotOptimize(apply_multiplier(*plan, m, f));
}
BENCHMARK(BM_Multiplier1D)->Unit(benchmark::kMillisecond);

void BM_HeatKernel(benchmark::State& state) {
  const HeatKernelEval hk(MultiIndex({0.5}));
  const double x[] = {1.3}, y[] = {0.7};
  double t = 1e-3, acc = 0.0;
  for (auto _ : state) {
    acc += heat_kernel(hk, t, x, y);
    t = t < 1e3 ? t * 1.1 : 1e-3;
  }
  benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_HeatKernel);

void BM_LocalSobolevNorm(benchmark::State& state) {
  const Symbol n = laplace_type_imag_power(static_cast<std::size_t>(state.range(0)), 1.0);
  const Window eta = default_window();
  for (auto _ : state) benchmark::DoNotOptimize(local_sobolev_norm(n, 3, eta, 2.0));
}
BENCHMARK(BM_LocalSobolevNorm)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
