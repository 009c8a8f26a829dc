#include <benchmark/benchmark.h>

#include "qgls/fixpoint.hpp"
#include "qgls/gls.hpp"
#include "qgls/tail.hpp"

namespace {

using namespace qgls;

void BM_PowerLogNorm(benchmark::State& state) {
  const FunctionRep f = FunctionRep::power_log({2.0, 1.0});
  const double p = 0.01 * static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lp_quasinorm(f, p).value);
  }
}
BENCHMARK(BM_PowerLogNorm)->Arg(10)->Arg(30)->Arg(45);

void BM_SampledNorm(benchmark::State& state) {
  std::vector<double> grid, values;
  const int n = static_cast<int>(state.range(0));
  for (int k = 0; k < n; ++k) {
    grid.push_back(0.001 + 0.998 * k / n);
    values.push_back(1.0 + (k % 7));
  }
  const FunctionRep f = FunctionRep::sampled(grid, values);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lp_quasinorm(f, 0.4).value);
  }
}
BENCHMARK(BM_SampledNorm)->Range(8, 4096);

void BM_GlsNorm(benchmark::State& state) {
  const FunctionRep f = FunctionRep::power_log({2.0, 0.0});
  const PsiFunction psi = PsiFunction::iwaniec_sbordone(1.0, 0.05, 0.45);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gls_norm(f, psi).value);
  }
}
BENCHMARK(BM_GlsNorm);

void BM_NaturalFunction(benchmark::State& state) {
  const FunctionRep f = FunctionRep::power_log({2.0, 1.0});
  const std::size_t grid = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(natural_function(f, 0.05, 0.45, grid));
  }
}
BENCHMARK(BM_NaturalFunction)->Arg(17)->Arg(65);

void BM_TailMoment(benchmark::State& state) {
  TailFunction::Analytic params;
  params.scale = 1.0;
  params.exponent = 0.5;
  params.log_exponent = 1.0;
  const TailFunction tail = TailFunction::analytic(params);
  for (auto _ : state) {
    benchmark::DoNotOptimize(norm_from_tail(tail, 0.4).value);
  }
}
BENCHMARK(BM_TailMoment);

void BM_ContractionSolve(benchmark::State& state) {
  const QuasiMetricSpace space = lp_sampled_space(0.75, {0.25, 0.25, 0.25, 0.25});
  const Point w{1.0, -2.0, 0.5, 3.0};
  ContractionProblem problem{space,
                             [&w](const Point& x) {
                               Point y(x.size());
                               for (std::size_t i = 0; i < x.size(); ++i)
                                 y[i] = x[i] / 3.0 + w[i];
                               return y;
                             },
                             1.0 / 3.0,
                             {0.0, 0.0, 0.0, 0.0}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        solve(problem, ContractionMode::Quadrilateral, {1e-12, 100}).n_iters);
  }
}
BENCHMARK(BM_ContractionSolve);

}  // namespace

BENCHMARK_MAIN();
