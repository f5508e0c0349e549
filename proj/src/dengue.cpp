#include "fde/dengue.hpp"

#include <cmath>
#include <string>

#include "fde/errors.hpp"

namespace fde::dengue {

namespace {

void require_positive(double v, const char* name) {
  if (!std::isfinite(v) || !(v > 0.0))
    throw ValidationError(std::string(name) + " must be positive and finite");
}

void require_probability(double v, const char* name) {
  require_positive(v, name);
  if (v > 1.0)
    throw ValidationError(std::string(name) + " must lie in [0, 1]");
}

}  // namespace

ModelParams ModelParams::make(double n_h, double m_ratio, double bite_rate, double beta_mh,
                              double beta_hm, double mu_h, double mu_m, double eta_h) {
  ModelParams p{n_h, m_ratio * n_h, m_ratio, bite_rate, beta_mh, beta_hm, mu_h, mu_m, eta_h};
  p.validate();
  return p;
}

void ModelParams::validate() const {
  require_positive(n_h, "n_h");
  require_positive(n_m, "n_m");
  require_positive(m_ratio, "m_ratio");
  require_positive(bite_rate, "bite_rate");
  require_probability(beta_mh, "beta_mh");
  require_probability(beta_hm, "beta_hm");
  require_positive(mu_h, "mu_h");
  require_positive(mu_m, "mu_m");
  require_positive(eta_h, "eta_h");
  if (std::abs(n_m - m_ratio * n_h) > 1e-9 * n_m)
    throw ValidationError("n_m must equal m_ratio * n_h");
}

StateVector StateVector::from_span(std::span<const double> y) {
  if (y.size() < kCompartments)
    throw ValidationError("state needs 5 compartments");
  return {y[0], y[1], y[2], y[3], y[4]};
}

void validate_initial_state(const StateVector& y0, const ModelParams& p) {
  const auto v = y0.to_array();
  for (std::size_t i = 0; i < kCompartments; ++i) {
    if (!std::isfinite(v[i]) || v[i] < 0.0)
      throw ValidationError("initial " + std::string(kCompartmentNames[i]) +
                            " must be finite and non-negative");
  }
  if (std::abs(y0.host_total() - p.n_h) > 1e-9 * p.n_h)
    throw ValidationError("initial S_h + I_h + R_h must equal n_h");
  if (std::abs(y0.vector_total() - p.n_m) > 1e-9 * p.n_m)
    throw ValidationError("initial S_m + I_m must equal n_m");
}

void classical_rhs(double /*t*/, std::span<const double> y, std::span<double> dydt,
                   const ModelParams& p) {
  const double s_h = y[0], i_h = y[1], r_h = y[2], s_m = y[3], i_m = y[4];
  const double force_h = p.bite_rate * p.beta_mh * i_m / p.n_h;  // on humans
  const double force_m = p.bite_rate * p.beta_hm * i_h / p.n_h;  // on mosquitoes
  dydt[0] = p.mu_h * p.n_h - (force_h + p.mu_h) * s_h;
  dydt[1] = force_h * s_h - (p.eta_h + p.mu_h) * i_h;
  dydt[2] = p.eta_h * i_h - p.mu_h * r_h;
  dydt[3] = p.mu_m * p.n_m - (force_m + p.mu_m) * s_m;
  dydt[4] = force_m * s_m - p.mu_m * i_m;
}

StateVector classical_rhs(double t, const StateVector& y, const ModelParams& p) {
  const auto in = y.to_array();
  std::array<double, kCompartments> out{};
  classical_rhs(t, in, out, p);
  return StateVector::from_span(out);
}

VectorField classical_field(const ModelParams& p) {
  return [p](double t, std::span<const double> y, std::span<double> dydt) {
    classical_rhs(t, y, dydt, p);
  };
}

Scenario default_scenario() {
  const auto p = ModelParams::make(/*n_h=*/56000.0, /*m_ratio=*/3.0, /*bite_rate=*/0.7,
                                   /*beta_mh=*/0.36, /*beta_hm=*/0.36,
                                   /*mu_h=*/1.0 / (71.0 * 365.0), /*mu_m=*/1.0 / 10.0,
                                   /*eta_h=*/1.0 / 3.0);
  const StateVector y0{p.n_h - 216.0, 216.0, 0.0, p.n_m, 0.0};
  return {p, y0};
}

}  // namespace fde::dengue
