// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fde/cli/commands.hpp"
#include "fde/cli/csv.hpp"
#include "fde/errors.hpp"
#include "fde/expansion.hpp"
#include "fde/fitting.hpp"
#include "fde/gamma.hpp"
#include "fde/grunwald.hpp"
#include "fde/integrator.hpp"

using namespace fde;

namespace {

// Baseline N = 20 errors of the expansion at alpha = 0.5, t = 1 with 10^4
// sampling intervals on [0, 1]. x = t carries no truncation error, so its
// value sits at roundoff and is bounded rather than matched.
constexpr double kPinnedErrT2 = 0.0044909737;
constexpr double kRoundoffErrT = 1e-12;

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void within(Outcome& o, Clock::time_point t0, double limit) {
  const double s = seconds_since(t0);
  std::ostringstream msg;
  msg << "runtime " << s << " s exceeds " << limit << " s";
  o.require(s < limit, msg.str());
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

Outcome gamma_suite() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-9.5, 40.0);
  double worst_rec = 0.0, worst_refl = 0.0;
  for (int i = 0; i < 1000; ++i) {
    double x = u(rng);
    if (std::abs(x - std::round(x)) < 1e-3) x += 0.01;
    worst_rec = std::max(worst_rec, rel(fde::gamma(x + 1.0), x * fde::gamma(x)));
  }
  std::uniform_real_distribution<double> v(-5.0, 5.0);
  for (int i = 0; i < 1000; ++i) {
    double x = v(rng);
    if (std::abs(x - std::round(x)) < 1e-3) x += 0.01;
    const double lhs = fde::gamma(x) * fde::gamma(1.0 - x);
    worst_refl = std::max(worst_refl, rel(lhs, std::numbers::pi / std::sin(std::numbers::pi * x)));
  }
  const double half = rel(fde::gamma(0.5), std::sqrt(std::numbers::pi));
  o.require(worst_rec < 1e-10, "recurrence " + fmt("%.3g", worst_rec));
  o.require(worst_refl < 1e-10, "reflection " + fmt("%.3g", worst_refl));
  o.require(half < 1e-12, "gamma(1/2) " + fmt("%.3g", half));
  within(o, t0, 1.0);
  if (o.passed)
    o.detail = "recurrence " + fmt("%.2g", worst_rec) + ", reflection " + fmt("%.2g", worst_refl) +
               ", gamma(1/2) " + fmt("%.2g", half);
  return o;
}

Outcome coefficients() {
  Outcome o;
  const ExpansionConfig cfg{0.5, 2, 0.0};
  o.require(std::abs(coeff_a(cfg) - 0.846284) < 1e-5, "A " + fmt("%.8f", coeff_a(cfg)));
  o.require(std::abs(coeff_a_prime(cfg) - 0.423142) < 1e-5,
            "A' " + fmt("%.8f", coeff_a_prime(cfg)));
  o.require(std::abs(coeff_c(0.5, 2) + 0.282095) < 1e-5, "C_2 " + fmt("%.8f", coeff_c(0.5, 2)));

  const double near_one = 1.0 - 1e-6;
  double worst_a = 0.0, worst_ap = 0.0, worst_c = 0.0;
  for (int n = 2; n <= 25; ++n) {
    for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      o.require(coeff_a({alpha, n, 0.0}) > 0.0, "A <= 0 at alpha " + fmt("%g", alpha));
      for (int p = 2; p <= n; ++p)
        o.require(coeff_c(alpha, p) < 0.0, "C_p >= 0 at alpha " + fmt("%g", alpha));
    }
    worst_a = std::max(worst_a, std::abs(coeff_a({near_one, n, 0.0})));
    worst_ap = std::max(worst_ap, std::abs(coeff_a_prime({near_one, n, 0.0}) - 1.0));
    for (int p = 2; p <= n; ++p) worst_c = std::max(worst_c, std::abs(coeff_c(near_one, p)));
  }
  // limits at alpha = 1 - 1e-6 move by O(1e-6 log N)
  o.require(worst_a < 1e-4, "A at 1-1e-6 " + fmt("%.3g", worst_a));
  o.require(worst_ap < 1e-4, "A' - 1 at 1-1e-6 " + fmt("%.3g", worst_ap));
  o.require(worst_c < 1e-4, "C_p at 1-1e-6 " + fmt("%.3g", worst_c));
  if (o.passed)
    o.detail = "A=" + fmt("%.6f", coeff_a(cfg)) + " A'=" + fmt("%.6f", coeff_a_prime(cfg)) +
               " C_2=" + fmt("%.6f", coeff_c(0.5, 2)) + ", limits within " +
               fmt("%.1g", std::max({worst_a, worst_ap, worst_c}));
  return o;
}

SampledFunction power_on_unit(int k, std::size_t intervals) {
  return SampledFunction::tabulate(0.0, 1.0, intervals, [k](double t) { return std::pow(t, k); });
}

Outcome grunwald_oracle() {
  Outcome o;
  const auto t0 = Clock::now();
  double worst = 0.0, lo_order = 10.0, hi_order = -10.0;
  for (double alpha : {0.3, 0.5, 0.9}) {
    for (int k = 0; k <= 2; ++k) {
      const double exact = oracle::power_rule_exact(alpha, k, 1.0);
      const auto fine = power_on_unit(k, 10000);
      const double e = rel(oracle::gl_derivative_at(fine, alpha, 10000), exact);
      worst = std::max(worst, e);
      const double e1 = std::abs(oracle::gl_derivative_at(power_on_unit(k, 2000), alpha, 2000) - exact);
      const double e2 = std::abs(oracle::gl_derivative_at(power_on_unit(k, 4000), alpha, 4000) - exact);
      const double order = std::log2(e1 / e2);
      lo_order = std::min(lo_order, order);
      hi_order = std::max(hi_order, order);
    }
  }
  o.require(worst < 1e-3, "relative error " + fmt("%.3g", worst));
  o.require(lo_order >= 0.8 && hi_order <= 1.2,
            "order range [" + fmt("%.3f", lo_order) + ", " + fmt("%.3f", hi_order) + "]");
  within(o, t0, 5.0);
  if (o.passed)
    o.detail = "max rel err " + fmt("%.2g", worst) + ", order in [" + fmt("%.3f", lo_order) + ", " +
               fmt("%.3f", hi_order) + "]";
  return o;
}

Outcome expansion_trend() {
  Outcome o;
  const auto lin = power_on_unit(1, 10000);
  const auto sq = power_on_unit(2, 10000);
  const double exact1 = oracle::power_rule_exact(0.5, 1, 1.0);
  const double exact2 = oracle::power_rule_exact(0.5, 2, 1.0);
  auto err = [](const SampledFunction& x, int n, double exact) {
    return std::abs(approx_rl_derivative(x, {0.5, n, 0.0}, 1.0) - exact);
  };
  const double t5 = err(lin, 5, exact1), t20 = err(lin, 20, exact1);
  const double s5 = err(sq, 5, exact2), s20 = err(sq, 20, exact2);
  o.require(t20 <= t5, "x=t: N=20 " + fmt("%.3g", t20) + " > N=5 " + fmt("%.3g", t5));
  o.require(s20 <= s5, "x=t^2: N=20 " + fmt("%.6g", s20) + " > N=5 " + fmt("%.6g", s5));
  o.require(t20 < kRoundoffErrT, "x=t N=20 error " + fmt("%.3g", t20) + " above roundoff bound");
  o.require(rel(s20, kPinnedErrT2) < 0.01,
            "x=t^2 N=20 error " + fmt("%.10g", s20) + " vs pinned " + fmt("%.10g", kPinnedErrT2));
  if (o.passed)
    o.detail = "x=t: " + fmt("%.2g", t5) + " -> " + fmt("%.2g", t20) + ", x=t^2: " +
               fmt("%.6g", s5) + " -> " + fmt("%.8g", s20);
  return o;
}

Outcome classical_simulation() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto sc = dengue::default_scenario();
  const auto run = simulate_classical(sc.params, sc.initial, {0.0, 100.0, 0.01});
  const double elapsed = seconds_since(t0);
  const auto diag = diagnose(run, sc.params);
  o.require(diag.max_host_drift < 1e-9, "host drift " + fmt("%.3g", diag.max_host_drift));
  o.require(diag.max_vector_drift < 1e-9, "vector drift " + fmt("%.3g", diag.max_vector_drift));
  const auto maxima = fitting::interior_maxima(fitting::infected_column(run));
  o.require(maxima.size() == 1, "interior maxima " + std::to_string(maxima.size()));
  const auto half = simulate_classical(sc.params, sc.initial, {0.0, 100.0, 0.005});
  const double p = fitting::infected_peak(run).value, ph = fitting::infected_peak(half).value;
  o.require(rel(p, ph) < 1e-3, "peak change " + fmt("%.3g", rel(p, ph)));
  const auto maxima_half = fitting::interior_maxima(fitting::infected_column(half));
  o.require(maxima_half.size() == 1, "interior maxima at h/2 " + std::to_string(maxima_half.size()));
  o.require(elapsed < 1.0, "runtime " + fmt("%.3f", elapsed) + " s");
  if (o.passed)
    o.detail = "drift " + fmt("%.1g", std::max(diag.max_host_drift, diag.max_vector_drift)) +
               ", peak " + fmt("%.2f", p) + " at t=" + fmt("%.2f", fitting::infected_peak(run).time) +
               ", halving change " + fmt("%.2g", rel(p, ph));
  return o;
}

double sup_relative_ih(const DengueSeries& a, const DengueSeries& ref) {
  double dev = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    dev = std::max(dev, std::abs(a.states[i].i_h - ref.states[i].i_h));
    scale = std::max(scale, std::abs(ref.states[i].i_h));
  }
  return dev / scale;
}

Outcome classical_limit() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto sc = dengue::default_scenario();
  const TimeGrid grid{0.0, 100.0, 0.01};
  const auto classical = simulate_classical(sc.params, sc.initial, grid);
  const auto bypass = simulate_fractional(sc.params, sc.initial, {1.0, 7, 0.0}, grid);
  bool identical = bypass.times == classical.times && bypass.size() == classical.size();
  for (std::size_t i = 0; identical && i < classical.size(); ++i)
    identical = bypass.states[i] == classical.states[i];
  o.require(identical, "alpha = 1 differs from the classical run");
  const auto near = simulate_fractional(sc.params, sc.initial, {0.999, 7, 0.0}, grid);
  const double dev = sup_relative_ih(near, classical);
  o.require(dev < 0.05, "alpha = 0.999 deviation " + fmt("%.4f", dev));
  within(o, t0, 2.0);
  if (o.passed) o.detail = "bit-identical at alpha = 1, alpha = 0.999 deviation " + fmt("%.4f", dev);
  return o;
}

Outcome alpha_sensitivity() {
  Outcome o;
  const auto sc = dengue::default_scenario();
  const TimeGrid grid{0.0, 100.0, 0.01};
  const double exp1 =
      fitting::infected_peak(simulate_fractional(sc.params, sc.initial, {1.0, 7, 0.0}, grid)).value;
  const double exp95 =
      fitting::infected_peak(simulate_fractional(sc.params, sc.initial, {0.95, 7, 0.0}, grid)).value;
  const double gl1 = fitting::infected_peak(oracle::gl_simulate(sc.params, sc.initial, 1.0, grid)).value;
  const double gl95 = fitting::infected_peak(oracle::gl_simulate(sc.params, sc.initial, 0.95, grid)).value;
  const double change = rel(exp95, exp1);
  o.require(change > 0.05, "peak change " + fmt("%.4f", change));
  o.require((exp95 < exp1) == (gl95 < gl1) && exp95 != exp1 && gl95 != gl1,
            "direction differs between solvers");
  o.detail = (o.passed ? "" : o.detail + "; ") + "expansion peak " + fmt("%.1f", exp1) + " -> " +
             fmt("%.1f", exp95) + " (" + fmt("%+.1f", 100.0 * (exp95 / exp1 - 1.0)) + "%), GL " +
             fmt("%.1f", gl1) + " -> " + fmt("%.1f", gl95);
  return o;
}

Outcome fit_recovery() {
  Outcome o;
  const auto sc = dengue::default_scenario();
  const TimeGrid grid{0.0, 100.0, 0.01};
  std::vector<double> days;
  for (int d = 1; d <= 100; ++d) days.push_back(d);
  const auto alphas = fitting::make_alpha_grid(0.9, 1.0, 0.001);

  const auto t0 = Clock::now();
  const auto clean = fitting::generate_synthetic(sc.params, sc.initial, 0.95, 7, days, 0.0, 1, grid);
  const auto fit = fitting::fit_alpha(clean, sc.params, sc.initial, 7, alphas, grid);
  within(o, t0, 60.0);
  o.require(fit.best_alpha == 0.95, "noiseless best alpha " + fmt("%.4f", fit.best_alpha));

  const auto classical_run = simulate_classical(sc.params, sc.initial, grid);
  fitting::ObservedSeries classical;
  for (double t : days) {
    classical.times.push_back(t);
    classical.infected.push_back(classical_run.states[fitting::nearest_node(classical_run.times, t)].i_h);
  }
  const auto fit1 = fitting::fit_alpha(classical, sc.params, sc.initial, 7, alphas, grid);
  o.require(fit1.best_alpha == 1.0, "classical best alpha " + fmt("%.4f", fit1.best_alpha));

  std::string noisy_detail;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto noisy = fitting::generate_synthetic(sc.params, sc.initial, 0.95, 7, days, 5.0, seed, grid);
    const auto fn = fitting::fit_alpha(noisy, sc.params, sc.initial, 7, alphas, grid);
    o.require(fn.best_alpha >= 0.94 && fn.best_alpha <= 0.96,
              "5% noise seed " + std::to_string(seed) + " best alpha " + fmt("%.3f", fn.best_alpha));
    noisy_detail += (noisy_detail.empty() ? "" : ",") + fmt("%.3f", fn.best_alpha);
  }
  if (o.passed)
    o.detail = "noiseless " + fmt("%.3f", fit.best_alpha) + ", classical " + fmt("%.3f", fit1.best_alpha) +
               ", 5% noise seeds 1-5 {" + noisy_detail + "}, " + std::to_string(alphas.size()) +
               "-point fit in " + fmt("%.2f", seconds_since(t0) / 7.0) + " s";
  return o;
}

struct CliRun {
  int code;
  std::string out, err;
};

CliRun fdengue(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome cli_contract() {
  Outcome o;
  namespace fs = std::filesystem;
  std::random_device rd;
  const fs::path dir = fs::temp_directory_path() / ("fdengue_acceptance_" + std::to_string(rd()));
  fs::create_directories(dir);
  std::ofstream(dir / "run.cfg") << "alpha = 0.97\n";

  const auto cfg = (dir / "run.cfg").string();
  const auto a = fdengue({"simulate", "--config", cfg, "--out", (dir / "a.csv").string()});
  const auto b = fdengue({"simulate", "--config", cfg, "--out", (dir / "b.csv").string()});
  o.require(a.code == 0 && b.code == 0, "simulate failed: " + a.err);
  const std::string text = slurp(dir / "a.csv");
  o.require(!text.empty() && text == slurp(dir / "b.csv") && a.out == b.out, "reruns differ");

  std::istringstream in(text);
  const auto back = cli::read_trajectory(in);
  std::ostringstream rewritten;
  cli::write_trajectory(rewritten, back);
  o.require(rewritten.str() == text, "CSV round trip not identical");

  std::ofstream(dir / "bad.cfg") << "alpha = 1.5\n";
  const auto bad = fdengue({"simulate", "--config", (dir / "bad.cfg").string(), "--out",
                            (dir / "x.csv").string()});
  o.require(bad.code == 1 && bad.err.rfind("error kind=validation reason=", 0) == 0,
            "validation exit " + std::to_string(bad.code));
  std::ofstream(dir / "stiff.cfg") << "eta_h = 100\nstep = 0.1\n";
  const auto blow = fdengue({"simulate", "--config", (dir / "stiff.cfg").string(), "--out",
                             (dir / "y.csv").string()});
  o.require(blow.code == 2 && blow.err.rfind("error kind=numerical reason=", 0) == 0,
            "numerical exit " + std::to_string(blow.code));
  for (std::string cmd : {"coeffs", "deriv", "simulate", "fit", "validate"})
    o.require(fdengue({cmd, "--help"}).code == 0, cmd + " --help");

  const auto c = fdengue({"coeffs", "--alpha", "0.5", "--order", "2"});
  o.require(c.code == 0, "coeffs exit " + std::to_string(c.code));
  std::istringstream rows(c.out);
  std::string line;
  std::vector<double> values;
  std::getline(rows, line);
  while (std::getline(rows, line))
    values.push_back(cli::parse_double(line.substr(line.find(',') + 1), "coefficient"));
  o.require(values.size() == 3 && std::abs(values[0] - 0.846284) < 1e-5 &&
                std::abs(values[1] - 0.423142) < 1e-5 && std::abs(values[2] + 0.282095) < 1e-5,
            "coeffs output");
  fs::remove_all(dir);
  if (o.passed) o.detail = "byte-identical reruns, round trip identical, exit codes 0/1/2, coeffs table";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"gamma suite", gamma_suite},
      {"coefficient values and limits", coefficients},
      {"GL oracle vs closed form", grunwald_oracle},
      {"expansion accuracy trend", expansion_trend},
      {"classical simulation", classical_simulation},
      {"classical limit of the fractional path", classical_limit},
      {"alpha sensitivity", alpha_sensitivity},
      {"fit recovery", fit_recovery},
      {"CLI contract", cli_contract},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += o.passed ? 0 : 1;
    std::printf("%s %zu %s: %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("criteria=%zu failed=%d\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
