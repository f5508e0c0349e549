#include "fde/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <sstream>

#include "fde/errors.hpp"

namespace fde::fitting {

void ObservedSeries::validate() const {
  if (times.size() != infected.size())
    throw ValidationError("observed series: times and counts differ in length");
  if (times.empty())
    throw ValidationError("observed series: no observations");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || (i > 0 && !(times[i] > times[i - 1])))
      throw ValidationError("observed series: times must be finite and strictly increasing");
    if (!std::isfinite(infected[i]) || !(infected[i] > 0.0))
      throw ValidationError("observed series: counts must be positive (row " +
                            std::to_string(i) + ")");
  }
}

std::size_t nearest_node(std::span<const double> times, double t) {
  if (times.empty())
    throw ValidationError("nearest_node: empty time axis");
  const double tol = 1e-9 * std::max(1.0, std::abs(times.back()));
  if (!(t >= times.front() - tol && t <= times.back() + tol))
    throw ValidationError("observation time " + std::to_string(t) + " outside simulated span");
  const auto it = std::lower_bound(times.begin(), times.end(), t);
  if (it == times.begin()) return 0;
  if (it == times.end()) return times.size() - 1;
  const auto hi = static_cast<std::size_t>(it - times.begin());
  return (t - times[hi - 1] <= times[hi] - t) ? hi - 1 : hi;
}

double percentage_error(const DengueSeries& predicted, const ObservedSeries& obs) {
  obs.validate();
  double sum = 0.0;
  for (std::size_t k = 0; k < obs.times.size(); ++k) {
    const double sim = predicted.states[nearest_node(predicted.times, obs.times[k])].i_h;
    sum += std::abs(sim - obs.infected[k]) / obs.infected[k];
  }
  return 100.0 * sum / static_cast<double>(obs.times.size());
}

std::vector<double> make_alpha_grid(double alpha_min, double alpha_max, double step) {
  if (!(alpha_min > 0.0 && alpha_min <= alpha_max && alpha_max <= 1.0))
    throw ValidationError("alpha grid: need 0 < alpha_min <= alpha_max <= 1");
  if (!(step > 0.0) || !std::isfinite(step))
    throw ValidationError("alpha grid: step must be positive");

  const double denom = std::round(1.0 / step);
  const double lo = alpha_min * denom, hi = alpha_max * denom;
  std::vector<double> out;
  if (denom >= 1.0 && std::abs(1.0 / step - denom) <= 1e-9 * denom &&
      std::abs(lo - std::round(lo)) <= 1e-6 && std::abs(hi - std::round(hi)) <= 1e-6) {
    for (double k = std::round(lo); k <= std::round(hi); k += 1.0)
      out.push_back(k / denom);
    return out;
  }
  const auto count = static_cast<std::size_t>(std::floor((alpha_max - alpha_min) / step + 1e-9));
  for (std::size_t i = 0; i <= count; ++i)
    out.push_back(std::min(alpha_max, alpha_min + static_cast<double>(i) * step));
  return out;
}

namespace {

CurvePoint score_alpha(double alpha, const ObservedSeries& obs, const dengue::ModelParams& p,
                       const dengue::StateVector& y0, int n_order, const TimeGrid& grid,
                       const FitOptions& options) {
  CurvePoint pt;
  pt.alpha = alpha;
  try {
    const ExpansionConfig cfg{alpha, n_order, grid.t_start};
    const auto series = simulate_fractional(p, y0, cfg, grid, options.start);
    pt.error_pct = options.metric(series, obs);
    pt.status = std::isfinite(pt.error_pct) ? RunStatus::ok : RunStatus::failed;
    if (pt.status == RunStatus::failed) {
      pt.error_pct = std::numeric_limits<double>::infinity();
      pt.message = "non-finite error metric";
    }
  } catch (const NumericalError& e) {
    pt.error_pct = std::numeric_limits<double>::infinity();
    pt.status = RunStatus::failed;
    pt.message = e.what();
  }
  return pt;
}

}  // namespace

FitResult fit_alpha(const ObservedSeries& obs, const dengue::ModelParams& p,
                    const dengue::StateVector& y0, int n_order,
                    std::span<const double> alpha_grid, const TimeGrid& grid,
                    const FitOptions& options) {
  obs.validate();
  p.validate();
  dengue::validate_initial_state(y0, p);
  grid.validate();
  if (n_order < 2)
    throw ValidationError("fit: expansion order must be >= 2");
  if (alpha_grid.empty())
    throw ValidationError("fit: empty alpha grid");
  for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
    if (!(alpha_grid[i] > 0.0 && alpha_grid[i] <= 1.0))
      throw ValidationError("fit: alpha values must lie in (0, 1]");
    if (i > 0 && !(alpha_grid[i] > alpha_grid[i - 1]))
      throw ValidationError("fit: alpha grid must be strictly ascending");
  }

  const auto count = static_cast<std::ptrdiff_t>(alpha_grid.size());
  std::vector<CurvePoint> curve(alpha_grid.size());
  // Anything other than a numerical failure (e.g. an observation outside the
  // simulated span) is an input error; it is rethrown after the loop.
  std::vector<std::exception_ptr> errors(alpha_grid.size());
  auto run = [&](std::ptrdiff_t i) {
    try {
      curve[i] = score_alpha(alpha_grid[i], obs, p, y0, n_order, grid, options);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (options.exec == Execution::serial) {
    for (std::ptrdiff_t i = 0; i < count; ++i) run(i);
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < count; ++i) run(i);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  FitResult result;
  bool found = false;
  for (const auto& pt : curve) {
    if (pt.status == RunStatus::ok && (!found || pt.error_pct < result.best_error_pct)) {
      result.best_alpha = pt.alpha;
      result.best_error_pct = pt.error_pct;
      found = true;
    }
  }
  if (!found) {
    std::ostringstream msg;
    msg << "fit failed for every alpha:";
    for (const auto& pt : curve) msg << " [alpha=" << pt.alpha << ": " << pt.message << "]";
    throw FitError(msg.str(), std::move(curve));
  }
  result.error_curve = std::move(curve);
  return result;
}

ObservedSeries generate_synthetic(const dengue::ModelParams& p, const dengue::StateVector& y0,
                                  double alpha_star, int n_order,
                                  std::span<const double> sample_times, double noise_pct,
                                  std::uint64_t seed, const TimeGrid& grid) {
  if (!(noise_pct >= 0.0) || !std::isfinite(noise_pct))
    throw ValidationError("synthetic data: noise_pct must be >= 0");
  const ExpansionConfig cfg{alpha_star, n_order, grid.t_start};
  const auto series = simulate_fractional(p, y0, cfg, grid);

  std::mt19937_64 rng(seed);
  ObservedSeries obs;
  for (double t : sample_times) {
    const double exact = series.states[nearest_node(series.times, t)].i_h;
    // u uniform on [-1, 1), from the top 53 bits
    const double u = 2.0 * std::ldexp(static_cast<double>(rng() >> 11), -53) - 1.0;
    obs.times.push_back(t);
    obs.infected.push_back(noise_pct == 0.0 ? exact : exact * (1.0 + noise_pct / 100.0 * u));
  }
  obs.validate();
  return obs;
}

std::vector<std::size_t> interior_maxima(std::span<const double> values) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i + 1 < values.size(); ++i)
    if (values[i] > values[i - 1] && values[i] > values[i + 1]) out.push_back(i);
  return out;
}

std::vector<double> infected_column(const DengueSeries& series) {
  std::vector<double> out;
  out.reserve(series.states.size());
  for (const auto& s : series.states) out.push_back(s.i_h);
  return out;
}

Peak infected_peak(const DengueSeries& series) {
  Peak pk;
  for (std::size_t i = 0; i < series.states.size(); ++i) {
    if (i == 0 || series.states[i].i_h > pk.value)
      pk = Peak{i, series.times[i], series.states[i].i_h};
  }
  return pk;
}

}  // namespace fde::fitting
