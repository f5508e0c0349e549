#pragma once

// Riemann-Liouville derivative of order alpha in (0, 1), approximated by a
// truncated expansion in integer-order terms:
//
//   D^a x(t) ~ A (t-a)^-alpha x(t) + A' (t-a)^(1-alpha) x'(t)
//              - sum_{p=2}^{N} C_p (t-a)^(1-p-alpha) V_p(t),
//   V_p'(t) = (1-p) (t-a)^(p-2) x(t),  V_p(a) = 0.
//
// Solving the expansion for x' turns a fractional system D^a x = f(t, x) of
// dimension d into an ordinary system of dimension d*N.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace fde {

/// dydt = f(t, y). Both spans have the system dimension.
using VectorField =
    std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

struct ExpansionConfig {
  double alpha = 1.0;
  int order_n = 7;
  double lower_terminal = 0.0;

  /// Throws ValidationError unless 0 < alpha <= 1, order_n >= 2 and the
  /// lower terminal is finite.
  void validate() const;
  /// alpha == 1 selects the classical system, with no expansion at all.
  bool is_classical() const noexcept { return alpha == 1.0; }
};

/// A(alpha, N), A'(alpha, N) and C(alpha, p) need 0 < alpha < 1. The two
/// sums are also defined for N = 1, which these accept.
double coeff_a(const ExpansionConfig& cfg);
/// Throws DegenerateCoefficientError if |A'| <= 1e-8.
double coeff_a_prime(const ExpansionConfig& cfg);
double coeff_c(double alpha, int p);

/// |A'| at or below this is rejected.
inline constexpr double kMinAPrime = 1e-8;

struct ExpansionCoefficients {
  double a = 0.0;
  double a_prime = 0.0;
  std::vector<double> c;  // c[p - 2] = C(alpha, p), p = 2..N

  /// Requires cfg valid and alpha < 1.
  static ExpansionCoefficients compute(const ExpansionConfig& cfg);

  double c_at(int p) const { return c.at(static_cast<std::size_t>(p - 2)); }
  int order_n() const noexcept { return static_cast<int>(c.size()) + 1; }
};

/// Samples of x on a uniform grid t_i = start + i * step.
class SampledFunction {
 public:
  SampledFunction(double start, double step, std::vector<double> values);
  /// Checks the times are uniformly spaced (relative 1e-9 of the step).
  static SampledFunction from_samples(std::span<const double> times,
                                      std::span<const double> values);
  template <class F>
  static SampledFunction tabulate(double start, double end, std::size_t intervals, F&& fn) {
    const double step = (end - start) / static_cast<double>(intervals);
    std::vector<double> v(intervals + 1);
    for (std::size_t i = 0; i <= intervals; ++i)
      v[i] = fn(start + static_cast<double>(i) * step);
    return SampledFunction(start, step, std::move(v));
  }

  double start() const noexcept { return start_; }
  double step() const noexcept { return step_; }
  std::size_t size() const noexcept { return values_.size(); }
  double time(std::size_t i) const noexcept { return start_ + static_cast<double>(i) * step_; }
  double value(std::size_t i) const { return values_.at(i); }
  std::span<const double> values() const noexcept { return values_; }

  /// Index of the node at time t. Throws ValidationError if t is not a node.
  std::size_t node_index(double t) const;

 private:
  double start_;
  double step_;
  std::vector<double> values_;
};

/// Pointwise expansion estimate of D^alpha x at grid node t.
/// The derivative x' uses second-order differences (one-sided at the ends).
/// Each V_p integrates its polynomial weight exactly against the piecewise
/// linear interpolant of the samples. The grid must
/// start at cfg.lower_terminal, t must be a node with t > lower_terminal,
/// and alpha < 1.
double approx_rl_derivative(const SampledFunction& x, const ExpansionConfig& cfg, double t);

/// The same estimate at every node 1..size()-1, accumulating the V_p
/// integrals once. Element i-1 is bit-identical to the pointwise call at node i.
std::vector<double> approx_rl_derivative_series(const SampledFunction& x,
                                                const ExpansionConfig& cfg);

/// The d*N dimensional ordinary system. Layout: y[0..d) are the physical
/// states; aux(k, p) = d + k*(N-1) + (p-2) holds V_p of state k.
struct AugmentedVectorField {
  std::size_t physical_dim = 0;
  int order_n = 0;
  double alpha = 1.0;
  VectorField rhs;
  /// Empty for the classical bypass.
  std::optional<ExpansionCoefficients> coefficients;

  std::size_t dimension() const noexcept {
    return physical_dim * static_cast<std::size_t>(order_n);
  }
  std::size_t aux_index(std::size_t state, int p) const noexcept {
    return physical_dim + state * static_cast<std::size_t>(order_n - 1) +
           static_cast<std::size_t>(p - 2);
  }
  /// A / A', the rate of the x/t term that dominates near t = 0. Zero when classical.
  double startup_stiffness() const noexcept;
};

/// Builds the augmented system for D^alpha x = f(t, x) from the lower terminal.
/// For alpha == 1 the physical block is f itself and the auxiliaries are frozen.
AugmentedVectorField expand_system(VectorField f, std::size_t dim, const ExpansionConfig& cfg);

}  // namespace fde
