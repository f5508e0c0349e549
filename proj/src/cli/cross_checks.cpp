#include "fde/cli/cross_checks.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "fde/dengue.hpp"
#include "fde/expansion.hpp"
#include "fde/fitting.hpp"
#include "fde/gamma.hpp"
#include "fde/grunwald.hpp"
#include "fde/integrator.hpp"

namespace fde::cli {

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

template <class F>
CheckResult check(std::string name, F&& body) {
  CheckResult r{std::move(name), false, {}};
  try {
    std::ostringstream detail;
    r.passed = body(detail);
    r.detail = detail.str();
  } catch (const std::exception& e) {
    r.detail = std::string("exception: ") + e.what();
  }
  return r;
}

}  // namespace

std::vector<CheckResult> run_cross_checks() {
  std::vector<CheckResult> out;

  out.push_back(check("gamma_identities", [](std::ostream& d) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 5.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double x = u(rng);
      if (x <= 0.0 && std::abs(x - std::round(x)) < 1e-3) continue;
      worst = std::max(worst, rel(gamma(x + 1.0), x * gamma(x)));
    }
    const double sqrt_pi = rel(gamma(0.5), std::sqrt(std::numbers::pi));
    d << "recurrence worst rel " << worst << ", gamma(0.5) rel " << sqrt_pi;
    return worst < 1e-10 && sqrt_pi < 1e-12;
  }));

  out.push_back(check("coefficients_alpha_0.5_order_2", [](std::ostream& d) {
    const ExpansionConfig cfg{0.5, 2, 0.0};
    const double a = coeff_a(cfg), ap = coeff_a_prime(cfg), c2 = coeff_c(0.5, 2);
    d << "A=" << a << " A'=" << ap << " C_2=" << c2;
    return std::abs(a - 0.846284) < 1e-5 && std::abs(ap - 0.423142) < 1e-5 &&
           std::abs(c2 + 0.282095) < 1e-5;
  }));

  out.push_back(check("grunwald_vs_power_rule", [](std::ostream& d) {
    double worst = 0.0;
    for (double alpha : {0.3, 0.5, 0.9}) {
      for (int k = 0; k <= 2; ++k) {
        const auto x = SampledFunction::tabulate(0.0, 1.0, 10000,
                                                 [k](double t) { return std::pow(t, k); });
        const double got = oracle::gl_derivative_at(x, alpha, x.size() - 1);
        worst = std::max(worst, rel(got, oracle::power_rule_exact(alpha, k, 1.0)));
      }
    }
    d << "worst rel error at h=1e-4: " << worst;
    return worst < 1e-3;
  }));

  out.push_back(check("expansion_improves_with_order", [](std::ostream& d) {
    const auto x = SampledFunction::tabulate(0.0, 1.0, 10000, [](double t) { return t; });
    const double exact = oracle::power_rule_exact(0.5, 1, 1.0);
    const double e5 = std::abs(approx_rl_derivative(x, {0.5, 5, 0.0}, 1.0) - exact);
    const double e20 = std::abs(approx_rl_derivative(x, {0.5, 20, 0.0}, 1.0) - exact);
    d << "x=t, alpha=0.5: |err| N=5 " << e5 << ", N=20 " << e20;
    return e20 <= e5;
  }));

  const auto sc = dengue::default_scenario();
  const TimeGrid grid{0.0, 100.0, 0.01};
  const auto classical = simulate_classical(sc.params, sc.initial, grid);

  out.push_back(check("classical_bypass_bit_identical", [&](std::ostream& d) {
    const auto frac = simulate_fractional(sc.params, sc.initial, {1.0, 7, 0.0}, grid);
    const bool same = frac.states == classical.states;
    d << (same ? "identical" : "differs");
    return same;
  }));

  out.push_back(check("near_classical_limit", [&](std::ostream& d) {
    const auto frac = simulate_fractional(sc.params, sc.initial, {0.999, 7, 0.0}, grid);
    double dev = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < frac.size(); ++i) {
      dev = std::max(dev, std::abs(frac.states[i].i_h - classical.states[i].i_h));
      scale = std::max(scale, std::abs(classical.states[i].i_h));
    }
    d << "alpha=0.999 sup-relative I_h deviation " << dev / scale;
    return dev / scale < 0.05;
  }));

  out.push_back(check("alpha_trend_matches_grunwald", [&](std::ostream& d) {
    const double peak_cl = fitting::infected_peak(classical).value;
    const double peak_frac =
        fitting::infected_peak(simulate_fractional(sc.params, sc.initial, {0.95, 7, 0.0}, grid))
            .value;
    const double peak_gl_1 =
        fitting::infected_peak(oracle::gl_simulate(sc.params, sc.initial, 1.0, grid)).value;
    const double peak_gl =
        fitting::infected_peak(oracle::gl_simulate(sc.params, sc.initial, 0.95, grid)).value;
    d << "peak I_h alpha=1/0.95: expansion " << peak_cl << "/" << peak_frac << ", GL "
      << peak_gl_1 << "/" << peak_gl;
    const bool same_sign = (peak_frac - peak_cl) * (peak_gl - peak_gl_1) > 0.0;
    return same_sign && std::abs(peak_frac - peak_cl) > 0.05 * peak_cl;
  }));

  return out;
}

}  // namespace fde::cli
