#include "fde/expansion.hpp"

#include <cmath>
#include <sstream>
#include <numbers>
#include <string>
#include <utility>

#include "fde/errors.hpp"
#include "fde/gamma.hpp"

namespace fde {

void ExpansionConfig::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw ValidationError("alpha must satisfy 0 < alpha <= 1, got " + std::to_string(alpha));
  if (order_n < 2)
    throw ValidationError("expansion order must be >= 2, got " + std::to_string(order_n));
  if (!std::isfinite(lower_terminal))
    throw ValidationError("lower terminal must be finite");
}

namespace {

void require_fractional(const ExpansionConfig& cfg, const char* who) {
  cfg.validate();
  if (cfg.is_classical())
    throw ValidationError(std::string(who) + ": alpha = 1 has no expansion coefficients");
}

// The coefficient sums are defined for N >= 1; systems need N >= 2.
void require_coefficient_args(const ExpansionConfig& cfg, const char* who) {
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
    throw ValidationError(std::string(who) + ": alpha must lie in (0, 1)");
  if (cfg.order_n < 1)
    throw ValidationError(std::string(who) + ": order must be >= 1");
}

double require_finite(double v, const char* who) {
  if (!std::isfinite(v))
    throw NumericalError(std::string(who) + ": non-finite coefficient");
  return v;
}

}  // namespace

double coeff_a(const ExpansionConfig& cfg) {
  require_coefficient_args(cfg, "coeff_a");
  const double alpha = cfg.alpha;
  const double g_alpha = gamma(alpha);
  double bracket = 1.0;
  for (int p = 2; p <= cfg.order_n; ++p)
    bracket += gamma(p - 1 + alpha) / (g_alpha * gamma(p));  // gamma(p) = (p-1)!
  return require_finite(bracket / gamma(1.0 - alpha), "coeff_a");
}

double coeff_a_prime(const ExpansionConfig& cfg) {
  require_coefficient_args(cfg, "coeff_a_prime");
  const double alpha = cfg.alpha;
  // Gamma(alpha - 1) via the recurrence: rounding alpha - 1 first costs
  // relative accuracy as alpha approaches 0.
  const double g_alpha_m1 = gamma(alpha) / (alpha - 1.0);
  double bracket = 1.0;
  for (int p = 1; p <= cfg.order_n; ++p)
    bracket += gamma(p - 1 + alpha) / (g_alpha_m1 * gamma(p + 1));  // gamma(p+1) = p!
  const double a_prime = require_finite(bracket / gamma(2.0 - alpha), "coeff_a_prime");
  if (std::abs(a_prime) <= kMinAPrime) {
    std::ostringstream msg;
    msg << "degenerate coefficient: |A'| = " << std::abs(a_prime) << " <= " << kMinAPrime;
    throw DegenerateCoefficientError(msg.str());
  }
  return a_prime;
}

double coeff_c(double alpha, int p) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ValidationError("coeff_c: alpha must lie in (0, 1)");
  if (p < 2)
    throw ValidationError("coeff_c: p must be >= 2");
  return require_finite(
      gamma(p - 1 + alpha) * (alpha - 1.0) / (gamma(2.0 - alpha) * gamma(alpha) * gamma(p)), "coeff_c");
}

ExpansionCoefficients ExpansionCoefficients::compute(const ExpansionConfig& cfg) {
  require_fractional(cfg, "expansion coefficients");
  ExpansionCoefficients k;
  k.a = coeff_a(cfg);
  k.a_prime = coeff_a_prime(cfg);
  k.c.reserve(static_cast<std::size_t>(cfg.order_n - 1));
  for (int p = 2; p <= cfg.order_n; ++p)
    k.c.push_back(coeff_c(cfg.alpha, p));
  return k;
}

// ---------------------------------------------------------------------------

SampledFunction::SampledFunction(double start, double step, std::vector<double> values)
    : start_(start), step_(step), values_(std::move(values)) {
  if (!std::isfinite(start_) || !std::isfinite(step_) || !(step_ > 0.0))
    throw ValidationError("sampled function: step must be positive and finite");
  if (values_.size() < 3)
    throw ValidationError("sampled function: need at least 3 samples");
  for (double v : values_)
    if (!std::isfinite(v))
      throw ValidationError("sampled function: non-finite sample");
}

SampledFunction SampledFunction::from_samples(std::span<const double> times,
                                              std::span<const double> values) {
  if (times.size() != values.size())
    throw ValidationError("sampled function: times and values differ in length");
  if (times.size() < 3)
    throw ValidationError("sampled function: need at least 3 samples");
  const double step = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double expected = times.front() + static_cast<double>(i) * step;
    if (!(times[i] > times[i - 1]) || std::abs(times[i] - expected) > 1e-9 * step)
      throw ValidationError("sampled function: times are not uniformly spaced");
  }
  return SampledFunction(times.front(), step, {values.begin(), values.end()});
}

std::size_t SampledFunction::node_index(double t) const {
  const double pos = (t - start_) / step_;
  const double idx = std::round(pos);
  if (!std::isfinite(pos) || idx < 0.0 || idx > static_cast<double>(size() - 1) ||
      std::abs(pos - idx) > 1e-9)
    throw ValidationError("t = " + std::to_string(t) + " is not a node of the sample grid");
  return static_cast<std::size_t>(idx);
}

namespace {

// n-point Gauss-Legendre rule on [0, 1].
struct Quadrature {
  std::vector<double> nodes, weights;
};

Quadrature gauss_legendre_unit(std::size_t n) {
  Quadrature q;
  for (std::size_t i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = z;
      for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * static_cast<double>(k) - 1.0) * z * p1 -
                           (static_cast<double>(k) - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      dp = static_cast<double>(n) * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    q.nodes.push_back(0.5 * (1.0 - z));
    q.weights.push_back(1.0 / ((1.0 - z * z) * dp * dp));
  }
  return q;
}

// Walks nodes 1..last, keeping the running V_p(t_i) integrals, and hands
// each node's expansion value to emit. On every cell the weight
// (1-p)(tau-a)^(p-2) is integrated exactly against the linear interpolant
// of x, so V_p carries no quadrature error growing with p.
template <class Emit>
void walk_expansion(const SampledFunction& x, const ExpansionConfig& cfg, std::size_t last,
                    Emit&& emit) {
  require_fractional(cfg, "approx_rl_derivative");
  const double a = cfg.lower_terminal;
  const double h = x.step();
  if (std::abs(x.start() - a) > 1e-9 * h)
    throw ValidationError("approx_rl_derivative: sample grid must start at the lower terminal");

  const auto k = ExpansionCoefficients::compute(cfg);
  const auto n = static_cast<std::size_t>(cfg.order_n);
  const double alpha = cfg.alpha;
  const auto xs = x.values();
  // integrand degree is p - 1 <= N - 1
  const Quadrature rule = gauss_legendre_unit(n / 2 + 1);

  std::vector<double> v(n + 1, 0.0);
  for (std::size_t i = 1; i <= last; ++i) {
    const double left = x.time(i - 1) - a;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double s = rule.nodes[q];
      const double tau = left + h * s;
      const double x_lin = xs[i - 1] + (xs[i] - xs[i - 1]) * s;
      const double wx = h * rule.weights[q] * x_lin;
      double tau_pow = 1.0;  // tau^(p-2)
      for (std::size_t p = 2; p <= n; ++p) {
        v[p] += (1.0 - static_cast<double>(p)) * tau_pow * wx;
        tau_pow *= tau;
      }
    }

    const double dx = i + 1 < xs.size()
                          ? (xs[i + 1] - xs[i - 1]) / (2.0 * h)
                          : (3.0 * xs[i] - 4.0 * xs[i - 1] + xs[i - 2]) / (2.0 * h);
    const double s = x.time(i) - a;
    const double s_neg_alpha = std::pow(s, -alpha);
    double value = k.a * s_neg_alpha * xs[i] + k.a_prime * s * s_neg_alpha * dx;
    double s_pow = s_neg_alpha / s;  // s^(1-p-alpha) at p = 2
    for (std::size_t p = 2; p <= n; ++p) {
      value -= k.c[p - 2] * s_pow * v[p];
      s_pow /= s;
    }
    emit(i, value);
  }
}

}  // namespace

double approx_rl_derivative(const SampledFunction& x, const ExpansionConfig& cfg, double t) {
  const std::size_t idx = x.node_index(t);
  if (idx == 0)
    throw ValidationError("approx_rl_derivative: t must exceed the lower terminal");
  double out = 0.0;
  walk_expansion(x, cfg, idx, [&](std::size_t i, double value) {
    if (i == idx) out = value;
  });
  return out;
}

std::vector<double> approx_rl_derivative_series(const SampledFunction& x,
                                                const ExpansionConfig& cfg) {
  std::vector<double> out;
  out.reserve(x.size() - 1);
  walk_expansion(x, cfg, x.size() - 1, [&](std::size_t, double value) { out.push_back(value); });
  return out;
}

// ---------------------------------------------------------------------------

double AugmentedVectorField::startup_stiffness() const noexcept {
  return coefficients ? std::abs(coefficients->a / coefficients->a_prime) : 0.0;
}

AugmentedVectorField expand_system(VectorField f, std::size_t dim, const ExpansionConfig& cfg) {
  cfg.validate();
  if (dim == 0)
    throw ValidationError("expand_system: physical dimension must be positive");

  AugmentedVectorField out;
  out.physical_dim = dim;
  out.order_n = cfg.order_n;
  out.alpha = cfg.alpha;
  const auto n = static_cast<std::size_t>(cfg.order_n);

  if (cfg.is_classical()) {
    out.rhs = [f = std::move(f), dim](double t, std::span<const double> y,
                                      std::span<double> dydt) {
      f(t, y.first(dim), dydt.first(dim));
      for (std::size_t i = dim; i < dydt.size(); ++i)
        dydt[i] = 0.0;
    };
    return out;
  }

  out.coefficients = ExpansionCoefficients::compute(cfg);
  out.rhs = [f = std::move(f), dim, n, alpha = cfg.alpha, a = cfg.lower_terminal,
             k = *out.coefficients](double t, std::span<const double> y,
                                    std::span<double> dydt) {
    f(t, y.first(dim), dydt.first(dim));
    const double s = t - a;
    const double s_neg_alpha = std::pow(s, -alpha);
    const double scale = 1.0 / (k.a_prime * s * s_neg_alpha);  // s^(alpha-1) / A'
    for (std::size_t state = 0; state < dim; ++state) {
      const double xk = y[state];
      const std::size_t base = dim + state * (n - 1) - 2;  // + p gives V_p
      double bracket = dydt[state] - k.a * s_neg_alpha * xk;
      double s_memory = s_neg_alpha / s;  // s^(1-p-alpha)
      double s_growth = 1.0;              // s^(p-2)
      for (std::size_t p = 2; p <= n; ++p) {
        bracket += k.c[p - 2] * s_memory * y[base + p];
        dydt[base + p] = (1.0 - static_cast<double>(p)) * s_growth * xk;
        s_memory /= s;
        s_growth *= s;
      }
      dydt[state] = bracket * scale;
    }
  };
  return out;
}

}  // namespace fde
