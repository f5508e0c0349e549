#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fde/dengue.hpp"
#include "fde/expansion.hpp"

namespace fde {

/// Uniform nodes t_start + i*step; the final node is exactly t_end, so the
/// last interval may be shorter than step.
struct TimeGrid {
  double t_start = 0.0;
  double t_end = 100.0;
  double step = 0.01;

  /// t_start < t_end, step > 0 and at least two steps.
  void validate() const;
  std::size_t intervals() const;
  std::size_t node_count() const { return intervals() + 1; }
  double time(std::size_t i) const;
  std::vector<double> times() const;
};

template <class State>
struct TimeSeries {
  TimeGrid grid;
  std::vector<double> times;
  std::vector<State> states;

  std::size_t size() const noexcept { return states.size(); }
};

using RawSeries = TimeSeries<std::vector<double>>;
using DengueSeries = TimeSeries<dengue::StateVector>;

/// Classical fixed-step RK4 on every grid interval. Throws BlowUpError at
/// the first non-finite state.
RawSeries integrate_rk4(const VectorField& f, std::span<const double> y0, const TimeGrid& grid);

/// How to get off a singular start at t = t_start.
struct SingularStart {
  /// Integration begins at t_start + epsilon with the t_start state.
  double epsilon = 1e-3;
  /// Near t_start substeps are capped at r (t - t_start) with
  /// r = min(1/4, step / window) / max(1, stiffness), so the graded region
  /// spans about window * max(1, stiffness) and is refined along with the step.
  double window = 2.0;
};

/// RK4 for fields singular at t_start. Node 0 keeps y0; the first interval
/// is covered from t_start + epsilon with geometrically growing substeps,
/// later intervals are subdivided while the cap is below the step.
RawSeries integrate_rk4_singular(const VectorField& f, std::span<const double> y0,
                                 const TimeGrid& grid, double stiffness,
                                 const SingularStart& start = {});

DengueSeries simulate_classical(const dengue::ModelParams& p, const dengue::StateVector& y0,
                                const TimeGrid& grid);

/// Full augmented trajectory (d*N columns), auxiliaries starting at zero.
/// alpha == 1 integrates the classical bypass from t_start with no offset.
RawSeries simulate_fractional_augmented(const dengue::ModelParams& p,
                                        const dengue::StateVector& y0,
                                        const ExpansionConfig& cfg, const TimeGrid& grid,
                                        const SingularStart& start = {});

/// Physical compartments of simulate_fractional_augmented. Bit-identical to
/// simulate_classical when alpha == 1.
DengueSeries simulate_fractional(const dengue::ModelParams& p, const dengue::StateVector& y0,
                                 const ExpansionConfig& cfg, const TimeGrid& grid,
                                 const SingularStart& start = {});

DengueSeries to_dengue_series(const RawSeries& raw);

struct Undershoot {
  std::size_t index = 0;
  std::size_t compartment = 0;
  double value = 0.0;
};

/// Population bookkeeping of a trajectory. Nothing is clamped; fractional
/// runs do not conserve totals and the drift shows up here.
struct SeriesDiagnostics {
  double max_host_drift = 0.0;    // max_t |S_h+I_h+R_h - N_h| / N_h
  double max_vector_drift = 0.0;  // max_t |S_m+I_m - N_m| / N_m
  /// First compartment value below -1e-6 * N_h, if any.
  std::optional<Undershoot> undershoot;
};

SeriesDiagnostics diagnose(const DengueSeries& series, const dengue::ModelParams& p);

}  // namespace fde
