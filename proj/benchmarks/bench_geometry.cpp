#include <benchmark/benchmark.h>

#include "fuzzcurve/geometry.hpp"

namespace {

fuzzcurve::ParametricFN example() {
  return fuzzcurve::ParametricFN(fuzzcurve::parse_expression("pi + (cos(1+1/3))^2 - (cos(alpha+1/3))^2"),
                                 fuzzcurve::parse_expression("-pi*alpha^4 + 2*pi"));
}

void BM_SkewnessIntegrals(benchmark::State& state) {
  const auto fn = example();
  for (auto _ : state) benchmark::DoNotOptimize(fuzzcurve::skewness_integrals(fn));
}
BENCHMARK(BM_SkewnessIntegrals)->Unit(benchmark::kMicrosecond);

void BM_AnalyzeSkewness(benchmark::State& state) {
  const auto fn = example();
  fuzzcurve::GeometryOptions opt;
  opt.grid_n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fuzzcurve::analyze_skewness(fn, opt));
}
BENCHMARK(BM_AnalyzeSkewness)->Arg(256)->Arg(1024)->Arg(4096)->Unit(benchmark::kMicrosecond);

void BM_FullPipeline(benchmark::State& state) {
  for (auto _ : state) {
    const auto fn = example();
    const auto rep = fuzzcurve::analyze_skewness(fn);
    benchmark::DoNotOptimize(fuzzcurve::overall_dispersion(fn, rep.mean_triangle));
  }
}
BENCHMARK(BM_FullPipeline)->Unit(benchmark::kMillisecond);

}  // namespace
