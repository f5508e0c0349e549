#pragma once

// Grunwald-Letnikov discretisation of the Riemann-Liouville derivative.
// Shares no code with the expansion method and is used to cross-check it.

#include <cstddef>
#include <vector>

#include "fde/dengue.hpp"
#include "fde/expansion.hpp"
#include "fde/integrator.hpp"
#include "fde/parallel.hpp"

namespace fde::oracle {

/// w_j = (-1)^j binomial(alpha, j), j = 0..n.
struct GlWeights {
  double alpha = 1.0;
  std::vector<double> w;
};

/// w_0 = 1, w_1 = -alpha, then w_j = w_{j-1} (1 - (alpha+1)/j). Requires alpha in (0, 1].
GlWeights gl_weights(double alpha, std::size_t n);

/// h^-alpha sum_{j=0}^{index} w_j x(t_{index-j}). Requires 1 <= index < size.
double gl_derivative_at(const SampledFunction& x, double alpha, std::size_t index);

/// gl_derivative_at for every node 1..size()-1 (element i-1 is node i).
/// Each node's sum runs in the same left-to-right order under either
/// execution policy, so the results are bit-identical.
std::vector<double> gl_derivative_series(const SampledFunction& x, double alpha,
                                         Execution exec = Execution::parallel);

/// Closed form D^alpha t^k = Gamma(k+1)/Gamma(k+1-alpha) t^(k-alpha).
double power_rule_exact(double alpha, int k, double t);

/// Explicit GL stepping of the fractional model:
///   y_n = h^alpha f(t_{n-1}, y_{n-1}) - sum_{j=1}^{n} w_j y_{n-j}.
/// Keeps the full history. The grid must have no shortened final step.
/// Reduces to explicit Euler when alpha == 1.
DengueSeries gl_simulate(const dengue::ModelParams& p, const dengue::StateVector& y0,
                         double alpha, const TimeGrid& grid);

/// Plain explicit Euler on the classical model; the alpha == 1 reference.
DengueSeries euler_simulate(const dengue::ModelParams& p, const dengue::StateVector& y0,
                            const TimeGrid& grid);

}  // namespace fde::oracle
