#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <omp.h>

#include <cmath>

#include "fde/fitting.hpp"
#include "fde/grunwald.hpp"

using namespace fde;

// The machine may expose a single core; ask for a real team anyway so the
// parallel paths are exercised with more than one thread.
TEST_CASE("parallel runs use several threads") {
  omp_set_num_threads(4);
  int team = 0;
#pragma omp parallel
  {
#pragma omp single
    team = omp_get_num_threads();
  }
  CHECK(team == 4);
}

TEST_CASE("grunwald series: serial and parallel agree bit for bit") {
  omp_set_num_threads(4);
  for (double alpha : {0.3, 0.75, 1.0}) {
    const auto x = SampledFunction::tabulate(0.0, 3.0, 3000,
                                             [](double t) { return std::sin(t) + t * t; });
    const auto serial = oracle::gl_derivative_series(x, alpha, Execution::serial);
    const auto parallel = oracle::gl_derivative_series(x, alpha, Execution::parallel);
    CHECK(serial == parallel);
  }
}

TEST_CASE("alpha sweep: serial and parallel agree bit for bit") {
  omp_set_num_threads(4);
  const auto sc = dengue::default_scenario();
  const TimeGrid grid{0.0, 100.0, 0.01};
  std::vector<double> days;
  for (int d = 1; d <= 100; ++d) days.push_back(d);
  const auto obs = fitting::generate_synthetic(sc.params, sc.initial, 0.96, 7, days, 5.0, 3, grid);
  const auto alphas = fitting::make_alpha_grid(0.9, 1.0, 0.005);

  fitting::FitOptions serial_opt, parallel_opt;
  serial_opt.exec = Execution::serial;
  parallel_opt.exec = Execution::parallel;
  const auto a = fitting::fit_alpha(obs, sc.params, sc.initial, 7, alphas, grid, serial_opt);
  const auto b = fitting::fit_alpha(obs, sc.params, sc.initial, 7, alphas, grid, parallel_opt);
  CHECK(a.best_alpha == b.best_alpha);
  CHECK(a.best_error_pct == b.best_error_pct);
  REQUIRE(a.error_curve.size() == b.error_curve.size());
  for (std::size_t i = 0; i < a.error_curve.size(); ++i) {
    CHECK(a.error_curve[i].alpha == b.error_curve[i].alpha);
    CHECK(a.error_curve[i].error_pct == b.error_curve[i].error_pct);
    CHECK(a.error_curve[i].status == b.error_curve[i].status);
  }
}

TEST_CASE("input errors inside the parallel sweep surface unchanged") {
  omp_set_num_threads(4);
  const auto sc = dengue::default_scenario();
  fitting::ObservedSeries obs{{1.0, 50.0}, {216.0, 300.0}};
  const auto alphas = fitting::make_alpha_grid(0.9, 1.0, 0.05);
  CHECK_THROWS_AS(fitting::fit_alpha(obs, sc.params, sc.initial, 7, alphas, {0.0, 10.0, 0.01}),
                  ValidationError);
}
