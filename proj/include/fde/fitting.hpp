#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "fde/dengue.hpp"
#include "fde/errors.hpp"
#include "fde/integrator.hpp"
#include "fde/parallel.hpp"

namespace fde::fitting {

/// Observed infective humans. Times strictly increasing, counts > 0.
struct ObservedSeries {
  std::vector<double> times;
  std::vector<double> infected;

  void validate() const;
};

/// Mean absolute percentage error of simulated I_h against the observations,
/// taking the grid node nearest each observation time.
double percentage_error(const DengueSeries& predicted, const ObservedSeries& obs);

/// Maps (predicted, observed) to a score; lower is better.
using ErrorMetric = std::function<double(const DengueSeries&, const ObservedSeries&)>;

enum class RunStatus { ok, failed };

struct CurvePoint {
  double alpha = 0.0;
  double error_pct = std::numeric_limits<double>::infinity();
  RunStatus status = RunStatus::failed;
  std::string message;  // set when failed
};

struct FitResult {
  double best_alpha = 0.0;
  double best_error_pct = 0.0;
  std::vector<CurvePoint> error_curve;  // ascending alpha
};

/// No alpha produced a usable trajectory. what() lists every failure.
class FitError : public NumericalError {
 public:
  FitError(const std::string& what, std::vector<CurvePoint> curve)
      : NumericalError(what), curve_(std::move(curve)) {}
  const std::vector<CurvePoint>& curve() const noexcept { return curve_; }

 private:
  std::vector<CurvePoint> curve_;
};

struct FitOptions {
  Execution exec = Execution::parallel;
  ErrorMetric metric = percentage_error;
  SingularStart start{};
};

/// alpha_min, alpha_min + step, ..., alpha_max. When step is 1/D for an
/// integer D and alpha_min is a multiple of step, the values are formed as
/// k/D so that e.g. 0.95 appears exactly.
std::vector<double> make_alpha_grid(double alpha_min, double alpha_max, double step);

/// Grid search over alpha. Blown-up runs score +inf and stay in the curve.
/// Ties go to the smallest alpha. The curve is assembled in alpha order
/// regardless of execution policy.
FitResult fit_alpha(const ObservedSeries& obs, const dengue::ModelParams& p,
                    const dengue::StateVector& y0, int n_order,
                    std::span<const double> alpha_grid, const TimeGrid& grid,
                    const FitOptions& options = {});

/// Samples simulate_fractional(alpha_star) at sample_times and multiplies each
/// value by (1 + noise_pct/100 * u), u uniform on [-1, 1] from a seeded
/// mt19937_64.
ObservedSeries generate_synthetic(const dengue::ModelParams& p, const dengue::StateVector& y0,
                                  double alpha_star, int n_order,
                                  std::span<const double> sample_times, double noise_pct,
                                  std::uint64_t seed, const TimeGrid& grid);

/// Index of the grid node nearest t. Throws ValidationError outside the span.
std::size_t nearest_node(std::span<const double> times, double t);

/// Indices of strict interior local maxima.
std::vector<std::size_t> interior_maxima(std::span<const double> values);

struct Peak {
  std::size_t index = 0;
  double time = 0.0;
  double value = 0.0;
};

/// Global maximum of I_h.
Peak infected_peak(const DengueSeries& series);

std::vector<double> infected_column(const DengueSeries& series);

}  // namespace fde::fitting
