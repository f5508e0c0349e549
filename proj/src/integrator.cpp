#include "fde/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "fde/errors.hpp"

namespace fde {

void TimeGrid::validate() const {
  if (!std::isfinite(t_start) || !std::isfinite(t_end) || !(t_start < t_end))
    throw ValidationError("time grid: need finite t_start < t_end");
  if (!std::isfinite(step) || !(step > 0.0))
    throw ValidationError("time grid: step must be positive");
  if ((t_end - t_start) / step < 2.0)
    throw ValidationError("time grid: need at least two steps");
}

std::size_t TimeGrid::intervals() const {
  return static_cast<std::size_t>(std::ceil((t_end - t_start) / step - 1e-9));
}

double TimeGrid::time(std::size_t i) const {
  return i >= intervals() ? t_end : t_start + static_cast<double>(i) * step;
}

std::vector<double> TimeGrid::times() const {
  const std::size_t n = node_count();
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i)
    t[i] = time(i);
  return t;
}

namespace {

class Rk4 {
 public:
  explicit Rk4(std::size_t dim) : k1_(dim), k2_(dim), k3_(dim), k4_(dim), tmp_(dim) {}

  void step(const VectorField& f, double t, double h, std::vector<double>& y) {
    const std::size_t n = y.size();
    const double half = 0.5 * h;
    f(t, y, k1_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + half * k1_[i];
    f(t + half, tmp_, k2_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + half * k2_[i];
    f(t + half, tmp_, k3_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + h * k3_[i];
    f(t + h, tmp_, k4_);
    const double sixth = h / 6.0;
    for (std::size_t i = 0; i < n; ++i)
      y[i] += sixth * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
  }

 private:
  std::vector<double> k1_, k2_, k3_, k4_, tmp_;
};

void check_finite(const std::vector<double>& y, std::size_t node, double t) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!std::isfinite(y[i])) {
      std::ostringstream msg;
      msg << "non-finite state component " << i << " at t = " << t << " (node " << node << ")";
      throw BlowUpError(node, t, msg.str());
    }
  }
}

RawSeries start_series(const TimeGrid& grid, std::span<const double> y0) {
  grid.validate();
  RawSeries out;
  out.grid = grid;
  out.times = grid.times();
  out.states.reserve(out.times.size());
  out.states.emplace_back(y0.begin(), y0.end());
  check_finite(out.states.front(), 0, grid.t_start);
  return out;
}

}  // namespace

RawSeries integrate_rk4(const VectorField& f, std::span<const double> y0, const TimeGrid& grid) {
  RawSeries out = start_series(grid, y0);
  std::vector<double> y(y0.begin(), y0.end());
  Rk4 rk(y.size());
  const std::size_t steps = grid.intervals();
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = out.times[i];
    const double h = i + 1 == steps ? grid.t_end - t : grid.step;
    rk.step(f, t, h, y);
    check_finite(y, i + 1, out.times[i + 1]);
    out.states.push_back(y);
  }
  return out;
}

RawSeries integrate_rk4_singular(const VectorField& f, std::span<const double> y0,
                                 const TimeGrid& grid, double stiffness,
                                 const SingularStart& start) {
  RawSeries out = start_series(grid, y0);
  if (!(start.epsilon > 0.0) || !(start.epsilon < grid.step))
    throw ValidationError("singular start: epsilon must lie in (0, step)");
  if (!(start.window > 0.0) || !std::isfinite(start.window) || !std::isfinite(stiffness))
    throw ValidationError("singular start: window must be positive");

  const double ratio = std::min(0.25, grid.step / start.window) / std::max(1.0, stiffness);
  const double t0 = grid.t_start;
  std::vector<double> y(y0.begin(), y0.end());
  Rk4 rk(y.size());
  const std::size_t steps = grid.intervals();

  // First interval: geometric substeps from t0 + epsilon.
  {
    const double t1 = out.times[1];
    double t = t0 + start.epsilon;
    for (bool last = false; !last;) {
      double h = ratio * (t - t0);
      if (t + h >= t1) {
        h = t1 - t;
        last = true;
      }
      rk.step(f, t, h, y);
      t = last ? t1 : t + h;
      check_finite(y, 1, t);
    }
    out.states.push_back(y);
  }

  for (std::size_t i = 1; i < steps; ++i) {
    const double t_left = out.times[i];
    const double width = i + 1 == steps ? grid.t_end - t_left : grid.step;
    const double cap = ratio * (t_left - t0);
    const std::size_t substeps = cap >= width ? 1 : static_cast<std::size_t>(std::ceil(width / cap));
    const double h = width / static_cast<double>(substeps);
    for (std::size_t j = 0; j < substeps; ++j) {
      const double t = substeps == 1 ? t_left : t_left + static_cast<double>(j) * h;
      rk.step(f, t, h, y);
      check_finite(y, i + 1, t + h);
    }
    out.states.push_back(y);
  }
  return out;
}

DengueSeries to_dengue_series(const RawSeries& raw) {
  DengueSeries out;
  out.grid = raw.grid;
  out.times = raw.times;
  out.states.reserve(raw.states.size());
  for (const auto& s : raw.states)
    out.states.push_back(dengue::StateVector::from_span(s));
  return out;
}

DengueSeries simulate_classical(const dengue::ModelParams& p, const dengue::StateVector& y0,
                                const TimeGrid& grid) {
  p.validate();
  dengue::validate_initial_state(y0, p);
  const auto init = y0.to_array();
  return to_dengue_series(integrate_rk4(dengue::classical_field(p), init, grid));
}

RawSeries simulate_fractional_augmented(const dengue::ModelParams& p,
                                        const dengue::StateVector& y0,
                                        const ExpansionConfig& cfg, const TimeGrid& grid,
                                        const SingularStart& start) {
  p.validate();
  dengue::validate_initial_state(y0, p);
  cfg.validate();
  grid.validate();
  if (cfg.lower_terminal != grid.t_start)
    throw ValidationError("fractional simulation: grid must start at the lower terminal");

  const AugmentedVectorField field =
      expand_system(dengue::classical_field(p), dengue::kCompartments, cfg);
  std::vector<double> init(field.dimension(), 0.0);
  const auto phys = y0.to_array();
  std::copy(phys.begin(), phys.end(), init.begin());

  if (cfg.is_classical())
    return integrate_rk4(field.rhs, init, grid);
  return integrate_rk4_singular(field.rhs, init, grid, field.startup_stiffness(), start);
}

DengueSeries simulate_fractional(const dengue::ModelParams& p, const dengue::StateVector& y0,
                                 const ExpansionConfig& cfg, const TimeGrid& grid,
                                 const SingularStart& start) {
  return to_dengue_series(simulate_fractional_augmented(p, y0, cfg, grid, start));
}

SeriesDiagnostics diagnose(const DengueSeries& series, const dengue::ModelParams& p) {
  SeriesDiagnostics d;
  const double floor = -1e-6 * p.n_h;
  for (std::size_t i = 0; i < series.states.size(); ++i) {
    const auto& s = series.states[i];
    d.max_host_drift = std::max(d.max_host_drift, std::abs(s.host_total() - p.n_h) / p.n_h);
    d.max_vector_drift = std::max(d.max_vector_drift, std::abs(s.vector_total() - p.n_m) / p.n_m);
    if (!d.undershoot) {
      const auto v = s.to_array();
      for (std::size_t c = 0; c < v.size(); ++c) {
        if (v[c] < floor) {
          d.undershoot = Undershoot{i, c, v[c]};
          break;
        }
      }
    }
  }
  return d;
}

}  // namespace fde
