#include <benchmark/benchmark.h>

#include "fuzzcurve/expr.hpp"

namespace {

constexpr const char* kSide = "pi + (cos(1+1/3))^2 - (cos(alpha+1/3))^2";

void BM_Parse(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fuzzcurve::parse_expression(kSide));
}
BENCHMARK(BM_Parse);

void BM_Eval(benchmark::State& state) {
  const auto e = fuzzcurve::parse_expression(kSide);
  double a = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(e.eval(a));
    a = a < 1.0 ? a + 1e-3 : 0.0;
  }
}
BENCHMARK(BM_Eval);

void BM_EvalDual(benchmark::State& state) {
  const auto e = fuzzcurve::parse_expression(kSide);
  double a = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(e.eval_dual(a));
    a = a < 1.0 ? a + 1e-3 : 0.0;
  }
}
BENCHMARK(BM_EvalDual);

}  // namespace
