// Serial reference vs OpenMP for the two parallel kernels: the alpha sweep of
// fit_alpha and the Grunwald-Letnikov derivative series.
//
//   fde_bench --benchmark_filter=Sweep
//   OMP_NUM_THREADS=8 fde_bench

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "fde/fitting.hpp"
#include "fde/grunwald.hpp"

using namespace fde;

namespace {

const TimeGrid kGrid{0.0, 100.0, 0.01};

const fitting::ObservedSeries& observations() {
  static const auto obs = [] {
    const auto sc = dengue::default_scenario();
    std::vector<double> days;
    for (int d = 1; d <= 100; ++d) days.push_back(d);
    return fitting::generate_synthetic(sc.params, sc.initial, 0.95, 7, days, 5.0, 1, kGrid);
  }();
  return obs;
}

void Sweep(benchmark::State& state, Execution exec) {
  const auto sc = dengue::default_scenario();
  const auto alphas = fitting::make_alpha_grid(0.9, 1.0, 0.1 / static_cast<double>(state.range(0)));
  fitting::FitOptions opt;
  opt.exec = exec;
  const auto& obs = observations();
  for (auto _ : state) {
    auto fit = fitting::fit_alpha(obs, sc.params, sc.initial, 7, alphas, kGrid, opt);
    benchmark::DoNotOptimize(fit.best_alpha);
  }
  state.counters["alphas"] = static_cast<double>(alphas.size());
}

void GlSeries(benchmark::State& state, Execution exec) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = SampledFunction::tabulate(0.0, 10.0, n, [](double t) { return std::sin(t) + t; });
  for (auto _ : state) {
    auto d = oracle::gl_derivative_series(x, 0.8, exec);
    benchmark::DoNotOptimize(d.data());
  }
}

}  // namespace

BENCHMARK_CAPTURE(Sweep, serial, Execution::serial)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(Sweep, parallel, Execution::parallel)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(GlSeries, serial, Execution::serial)->Arg(4000)->Arg(16000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(GlSeries, parallel, Execution::parallel)->Arg(4000)->Arg(16000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
