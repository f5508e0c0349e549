#pragma once

// Host-vector dengue model: SIR for humans, SI for mosquitoes, constant
// population sizes.

#include <array>
#include <cstddef>
#include <span>
#include <string_view>

#include "fde/expansion.hpp"

namespace fde::dengue {

inline constexpr std::size_t kCompartments = 5;

struct ModelParams {
  double n_h = 0.0;        // humans
  double n_m = 0.0;        // mosquitoes, always m_ratio * n_h
  double m_ratio = 0.0;    // mosquitoes per human
  double bite_rate = 0.0;  // B, bites per day
  double beta_mh = 0.0;    // P(transmission) per bite, mosquito -> human
  double beta_hm = 0.0;    // P(transmission) per bite, human -> mosquito
  double mu_h = 0.0;       // human death rate, 1/day
  double mu_m = 0.0;       // mosquito death rate, 1/day
  double eta_h = 0.0;      // human recovery rate, 1/day

  static ModelParams make(double n_h, double m_ratio, double bite_rate, double beta_mh,
                          double beta_hm, double mu_h, double mu_m, double eta_h);
  void validate() const;
};

struct StateVector {
  double s_h = 0.0;
  double i_h = 0.0;
  double r_h = 0.0;
  double s_m = 0.0;
  double i_m = 0.0;

  std::array<double, kCompartments> to_array() const noexcept { return {s_h, i_h, r_h, s_m, i_m}; }
  static StateVector from_span(std::span<const double> y);

  double host_total() const noexcept { return s_h + i_h + r_h; }
  double vector_total() const noexcept { return s_m + i_m; }

  bool operator==(const StateVector&) const = default;
};

inline constexpr std::array<std::string_view, kCompartments> kCompartmentNames = {
    "S_h", "I_h", "R_h", "S_m", "I_m"};

/// Checks non-negativity and that the compartments add up to n_h and n_m
/// (relative 1e-9). Throws ValidationError.
void validate_initial_state(const StateVector& y0, const ModelParams& p);

/// Right-hand side of the classical model.
StateVector classical_rhs(double t, const StateVector& y, const ModelParams& p);

/// The same field over raw spans of length 5, in StateVector order.
void classical_rhs(double t, std::span<const double> y, std::span<double> dydt,
                   const ModelParams& p);

/// classical_rhs bound to p, as a generic field of dimension 5.
VectorField classical_field(const ModelParams& p);

struct Scenario {
  ModelParams params;
  StateVector initial;
};

/// Cape Verde 2009 outbreak: N_h = 56000, m = 3, B = 0.7, beta = 0.36 both
/// ways, mu_h = 1/(71*365), eta_h = 1/3, mu_m = 1/10, 216 initial infections.
Scenario default_scenario();

}  // namespace fde::dengue
