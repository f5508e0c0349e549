#include "fde/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "fde/cli/config.hpp"
#include "fde/cli/cross_checks.hpp"
#include "fde/cli/csv.hpp"
#include "fde/errors.hpp"
#include "fde/expansion.hpp"
#include "fde/fitting.hpp"
#include "fde/grunwald.hpp"
#include "fde/integrator.hpp"

namespace fde::cli {

namespace {

std::string one_line(std::string s) {
  for (char& c : s)
    if (c == '\n' || c == '\r') c = ' ';
  return s;
}

int fail(std::ostream& err, ExitCode code, const std::string& reason,
         const std::string& extra = {}) {
  err << "error kind=" << (code == kValidation ? "validation" : "numerical")
      << " reason=" << one_line(reason) << extra << '\n';
  return code;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw ValidationError("cannot open output file " + path);
  return out;
}

ScenarioConfig scenario_from(const std::string& path) {
  return path.empty() ? default_config() : load_scenario_config(path);
}

// --- coeffs ---------------------------------------------------------------

struct CoeffsArgs {
  double alpha = 0.5;
  int order = 7;
};

int cmd_coeffs(const CoeffsArgs& a, std::ostream& out) {
  const ExpansionConfig cfg{a.alpha, a.order, 0.0};
  const auto k = ExpansionCoefficients::compute(cfg);
  out << "coefficient,value\n";
  out << "A," << format_double(k.a) << '\n';
  out << "A_prime," << format_double(k.a_prime) << '\n';
  for (int p = 2; p <= a.order; ++p)
    out << "C_" << p << ',' << format_double(k.c_at(p)) << '\n';
  return kOk;
}

// --- deriv ----------------------------------------------------------------

struct DerivArgs {
  double alpha = 0.5;
  int order = 7;
  std::string function = "t";
  double t_end = 1.0;
  double step = 0.01;
  std::string out;
};

int cmd_deriv(const DerivArgs& a, std::ostream& out) {
  const std::map<std::string, int> powers{{"const", 0}, {"t", 1}, {"t2", 2}};
  const int k = powers.at(a.function);
  if (!(a.t_end > 0.0) || !(a.step > 0.0) || a.t_end / a.step < 2.0)
    throw ValidationError("deriv: need t_end > 0 and at least two steps");
  const auto intervals = static_cast<std::size_t>(std::llround(a.t_end / a.step));
  const auto x = SampledFunction::tabulate(0.0, intervals * a.step, intervals,
                                           [k](double t) { return std::pow(t, k); });

  const ExpansionConfig cfg{a.alpha, a.order, 0.0};
  const auto expansion = approx_rl_derivative_series(x, cfg);
  const auto grunwald = oracle::gl_derivative_series(x, a.alpha);

  std::ofstream file;
  if (!a.out.empty()) file = open_output(a.out);
  std::ostream& sink = a.out.empty() ? out : file;
  sink << "t,expansion,grunwald_letnikov,exact\n";
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double t = x.time(i);
    sink << format_double(t) << ',' << format_double(expansion[i - 1]) << ','
         << format_double(grunwald[i - 1]) << ','
         << format_double(oracle::power_rule_exact(a.alpha, k, t)) << '\n';
  }
  return kOk;
}

// --- simulate -------------------------------------------------------------

struct SimulateArgs {
  std::string config;
  std::optional<double> alpha;
  std::optional<int> order;
  std::string out;
  bool include_aux = false;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  ScenarioConfig sc = scenario_from(a.config);
  if (a.alpha) sc.alpha = *a.alpha;
  if (a.order) sc.order_n = *a.order;
  sc.validate();

  const auto raw = simulate_fractional_augmented(sc.params, sc.initial, sc.expansion(), sc.grid(),
                                                 sc.singular_start());
  const auto series = to_dengue_series(raw);
  {
    auto file = open_output(a.out);
    if (a.include_aux)
      write_trajectory(file, raw, sc.order_n);
    else
      write_trajectory(file, series);
  }

  const auto peak = fitting::infected_peak(series);
  const auto diag = diagnose(series, sc.params);
  out << "model=" << (sc.expansion().is_classical() ? "classical" : "fractional")
      << " alpha=" << format_shortest(sc.alpha) << " order=" << sc.order_n << '\n';
  out << "rows=" << series.size() << '\n';
  out << "peak_I_h=" << format_double(peak.value) << " peak_t=" << format_double(peak.time) << '\n';
  out << "host_total_drift=" << format_double(diag.max_host_drift) << '\n';
  out << "vector_total_drift=" << format_double(diag.max_vector_drift) << '\n';
  if (diag.undershoot) {
    out << "undershoot=" << dengue::kCompartmentNames[diag.undershoot->compartment]
        << " t=" << format_double(series.times[diag.undershoot->index])
        << " value=" << format_double(diag.undershoot->value) << '\n';
  } else {
    out << "undershoot=none\n";
  }
  return kOk;
}

// --- fit ------------------------------------------------------------------

struct FitArgs {
  std::string config;
  std::string data;
  double alpha_min = 0.9;
  double alpha_max = 1.0;
  double alpha_step = 0.001;
  std::string out;
};

int cmd_fit(const FitArgs& a, std::ostream& out, std::ostream& err) {
  const ScenarioConfig sc = scenario_from(a.config);
  const auto obs = load_observed(a.data);
  const auto alphas = fitting::make_alpha_grid(a.alpha_min, a.alpha_max, a.alpha_step);

  fitting::FitOptions options;
  options.start = sc.singular_start();
  try {
    const auto fit =
        fitting::fit_alpha(obs, sc.params, sc.initial, sc.order_n, alphas, sc.grid(), options);
    {
      auto file = open_output(a.out);
      write_error_curve(file, fit.error_curve);
    }
    std::size_t failed = 0;
    for (const auto& pt : fit.error_curve) failed += pt.status == fitting::RunStatus::failed;
    const int digits = std::max(3, static_cast<int>(std::ceil(-std::log10(a.alpha_step) - 1e-9)));
    char best[64];
    std::snprintf(best, sizeof best, "%.*f", digits, fit.best_alpha);
    out << "best_alpha=" << best << '\n';
    out << "best_error_pct=" << format_double(fit.best_error_pct) << '\n';
    out << "grid_points=" << fit.error_curve.size() << " failed=" << failed << '\n';
    return kOk;
  } catch (const fitting::FitError& e) {
    auto file = open_output(a.out);
    write_error_curve(file, e.curve());
    return fail(err, kNumerical, e.what());
  }
}

// --- validate -------------------------------------------------------------

int cmd_validate(std::ostream& out) {
  const auto results = run_cross_checks();
  std::size_t failed = 0;
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    failed += !r.passed;
  }
  out << "checks=" << results.size() << " failed=" << failed << '\n';
  return failed == 0 ? kOk : kNumerical;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fractional-order dengue model: expansion method, Grunwald-Letnikov oracle, "
               "alpha fitting",
               "fdengue"};
  app.require_subcommand(1);

  CoeffsArgs coeffs;
  auto* c = app.add_subcommand("coeffs", "Print the expansion coefficients A, A', C_2..C_N");
  c->add_option("--alpha", coeffs.alpha, "Fractional order, 0 < alpha < 1")->required();
  c->add_option("--order", coeffs.order, "Expansion order N >= 2")->required();

  DerivArgs deriv;
  auto* d = app.add_subcommand(
      "deriv", "Tabulate D^alpha of const, t or t^2: expansion vs Grunwald-Letnikov vs exact");
  d->add_option("--alpha", deriv.alpha, "Fractional order, 0 < alpha < 1")->required();
  d->add_option("--order", deriv.order, "Expansion order N >= 2")->capture_default_str();
  d->add_option("--function", deriv.function, "Test function")
      ->check(CLI::IsMember({"const", "t", "t2"}))
      ->capture_default_str();
  d->add_option("--t-end", deriv.t_end, "Right end of the grid [0, T]")->capture_default_str();
  d->add_option("--step", deriv.step, "Grid step")->capture_default_str();
  d->add_option("--out", deriv.out, "Write CSV here instead of stdout");

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Integrate the model and write the trajectory CSV");
  s->add_option("--config", sim.config, "Scenario file (key = value); defaults if omitted")
      ->check(CLI::ExistingFile);
  s->add_option("--alpha", sim.alpha, "Override the fractional order, 0 < alpha <= 1");
  s->add_option("--order", sim.order, "Override the expansion order N");
  s->add_option("--out", sim.out, "Trajectory CSV path")->required();
  s->add_flag("--include-aux", sim.include_aux, "Also write the auxiliary V_p columns");

  FitArgs fit;
  auto* f = app.add_subcommand("fit", "Grid-search alpha against observed I_h data");
  f->add_option("--config", fit.config, "Scenario file (key = value); defaults if omitted")
      ->check(CLI::ExistingFile);
  f->add_option("--data", fit.data, "Observed CSV with header t,I_h_obs")
      ->required()
      ->check(CLI::ExistingFile);
  f->add_option("--alpha-min", fit.alpha_min, "Smallest alpha")->capture_default_str();
  f->add_option("--alpha-max", fit.alpha_max, "Largest alpha")->capture_default_str();
  f->add_option("--alpha-step", fit.alpha_step, "Grid spacing")->capture_default_str();
  f->add_option("--out", fit.out, "Error curve CSV path (alpha,error_pct,status)")->required();

  auto* v = app.add_subcommand("validate", "Run the oracle cross-checks and report pass/fail");

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("fdengue");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    return fail(err, kValidation, e.what());
  }

  try {
    if (c->parsed()) return cmd_coeffs(coeffs, out);
    if (d->parsed()) return cmd_deriv(deriv, out);
    if (s->parsed()) return cmd_simulate(sim, out);
    if (f->parsed()) return cmd_fit(fit, out, err);
    if (v->parsed()) return cmd_validate(out);
  } catch (const BlowUpError& e) {
    std::ostringstream extra;
    extra << " time=" << format_double(e.time());
    return fail(err, kNumerical, e.what(), extra.str());
  } catch (const ValidationError& e) {
    return fail(err, kValidation, e.what());
  } catch (const NumericalError& e) {
    return fail(err, kNumerical, e.what());
  } catch (const std::exception& e) {
    return fail(err, kValidation, e.what());
  }
  return fail(err, kValidation, "no subcommand");
}

}  // namespace fde::cli
