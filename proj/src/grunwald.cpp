#include "fde/grunwald.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include "fde/errors.hpp"
#include "fde/gamma.hpp"

namespace fde::oracle {

namespace {

void require_order(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw ValidationError("Grunwald-Letnikov: alpha must satisfy 0 < alpha <= 1");
}

double weighted_history(const std::vector<double>& w, std::span<const double> x,
                        std::size_t index) {
  double sum = 0.0;
  for (std::size_t j = 0; j <= index; ++j)
    sum += w[j] * x[index - j];
  return sum;
}

}  // namespace

GlWeights gl_weights(double alpha, std::size_t n) {
  require_order(alpha);
  GlWeights out{alpha, std::vector<double>(n + 1)};
  out.w[0] = 1.0;
  if (n >= 1) out.w[1] = -alpha;
  for (std::size_t j = 2; j <= n; ++j)
    out.w[j] = out.w[j - 1] * (1.0 - (alpha + 1.0) / static_cast<double>(j));
  return out;
}

double gl_derivative_at(const SampledFunction& x, double alpha, std::size_t index) {
  if (index < 1 || index >= x.size())
    throw ValidationError("gl_derivative_at: index " + std::to_string(index) +
                          " outside 1.." + std::to_string(x.size() - 1));
  const auto weights = gl_weights(alpha, index);
  return std::pow(x.step(), -alpha) * weighted_history(weights.w, x.values(), index);
}

std::vector<double> gl_derivative_series(const SampledFunction& x, double alpha, Execution exec) {
  const std::size_t n = x.size() - 1;
  const auto weights = gl_weights(alpha, n);
  const double scale = std::pow(x.step(), -alpha);
  const auto xs = x.values();
  std::vector<double> out(n);
  const auto count = static_cast<std::ptrdiff_t>(n);

  if (exec == Execution::serial) {
    for (std::ptrdiff_t i = 0; i < count; ++i)
      out[i] = scale * weighted_history(weights.w, xs, static_cast<std::size_t>(i) + 1);
  } else {
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t i = 0; i < count; ++i)
      out[i] = scale * weighted_history(weights.w, xs, static_cast<std::size_t>(i) + 1);
  }
  return out;
}

double power_rule_exact(double alpha, int k, double t) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ValidationError("power_rule_exact: alpha must lie in (0, 1)");
  if (k < 0)
    throw ValidationError("power_rule_exact: k must be >= 0");
  if (!(t > 0.0))
    throw ValidationError("power_rule_exact: t must be positive");
  return gamma(k + 1.0) / gamma(k + 1.0 - alpha) * std::pow(t, k - alpha);
}

namespace {

void require_uniform(const TimeGrid& grid) {
  grid.validate();
  const double span = grid.t_end - grid.t_start;
  if (std::abs(static_cast<double>(grid.intervals()) * grid.step - span) > 1e-9 * grid.step)
    throw ValidationError("Grunwald-Letnikov stepping needs (t_end - t_start) to be a multiple of step");
}

[[noreturn]] void blow_up(std::size_t node, double t) {
  std::ostringstream msg;
  msg << "non-finite state at t = " << t << " (node " << node << ")";
  throw BlowUpError(node, t, msg.str());
}

DengueSeries start_series(const dengue::ModelParams& p, const dengue::StateVector& y0,
                          const TimeGrid& grid) {
  p.validate();
  dengue::validate_initial_state(y0, p);
  require_uniform(grid);
  DengueSeries out;
  out.grid = grid;
  out.times = grid.times();
  out.states.reserve(out.times.size());
  out.states.push_back(y0);
  return out;
}

bool finite(const std::array<double, dengue::kCompartments>& y) {
  for (double v : y)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace

DengueSeries gl_simulate(const dengue::ModelParams& p, const dengue::StateVector& y0,
                         double alpha, const TimeGrid& grid) {
  require_order(alpha);
  DengueSeries out = start_series(p, y0, grid);
  const std::size_t steps = grid.intervals();
  const auto weights = gl_weights(alpha, steps);
  const double h_alpha = std::pow(grid.step, alpha);

  // history[c][i] = compartment c at node i
  std::array<std::vector<double>, dengue::kCompartments> history;
  const auto init = y0.to_array();
  for (std::size_t c = 0; c < dengue::kCompartments; ++c) {
    history[c].reserve(steps + 1);
    history[c].push_back(init[c]);
  }

  std::array<double, dengue::kCompartments> prev = init, rate{}, next{};
  for (std::size_t n = 1; n <= steps; ++n) {
    dengue::classical_rhs(out.times[n - 1], prev, rate, p);
    for (std::size_t c = 0; c < dengue::kCompartments; ++c) {
      const auto& col = history[c];
      double memory = 0.0;
      for (std::size_t j = 1; j <= n; ++j)
        memory += weights.w[j] * col[n - j];
      next[c] = h_alpha * rate[c] - memory;
    }
    if (!finite(next)) blow_up(n, out.times[n]);
    for (std::size_t c = 0; c < dengue::kCompartments; ++c)
      history[c].push_back(next[c]);
    out.states.push_back(dengue::StateVector::from_span(next));
    prev = next;
  }
  return out;
}

DengueSeries euler_simulate(const dengue::ModelParams& p, const dengue::StateVector& y0,
                            const TimeGrid& grid) {
  DengueSeries out = start_series(p, y0, grid);
  const std::size_t steps = grid.intervals();
  auto y = y0.to_array();
  std::array<double, dengue::kCompartments> rate{};
  for (std::size_t n = 1; n <= steps; ++n) {
    dengue::classical_rhs(out.times[n - 1], y, rate, p);
    for (std::size_t c = 0; c < dengue::kCompartments; ++c)
      y[c] = y[c] + grid.step * rate[c];
    if (!finite(y)) blow_up(n, out.times[n]);
    out.states.push_back(dengue::StateVector::from_span(y));
  }
  return out;
}

}  // namespace fde::oracle
