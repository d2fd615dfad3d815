#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "fuzzcurve/portfolio.hpp"

namespace {

fuzzcurve::CrispProgram program(std::size_t n) {
  fuzzcurve::CrispProgram p;
  p.variant = fuzzcurve::ProgramVariant::MinVariance;
  p.cov.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    p.mean.push_back(0.04 + 0.02 * static_cast<double>(i));
    p.skew.push_back(0.0);
    for (std::size_t j = 0; j < n; ++j) p.cov[i * n + j] = i == j ? 0.01 * static_cast<double>(i + 1) : 0.002;
  }
  p.mu_base = 0.05;
  p.skew_base = -1.0;
  return p;
}

void BM_SolveCrisp(benchmark::State& state) {
  const auto p = program(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fuzzcurve::solve_crisp(p));
}
BENCHMARK(BM_SolveCrisp)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_SolveLevels(benchmark::State& state) {
  const auto crisp = program(3);
  fuzzcurve::PortfolioProblem p;
  p.params = std::make_shared<fuzzcurve::FuzzyParamSet>(fuzzcurve::FuzzyParamSet::crisp(crisp.mean, crisp.cov, crisp.skew));
  p.variant = crisp.variant;
  p.mu_base = crisp.mu_base;
  p.skew_base = crisp.skew_base;
  std::vector<double> alphas;
  for (int i = 0; i <= 10; ++i) alphas.push_back(i / 10.0);
  for (auto _ : state) benchmark::DoNotOptimize(fuzzcurve::solve_levels(p, alphas));
}
BENCHMARK(BM_SolveLevels)->Unit(benchmark::kMillisecond);

}  // namespace
