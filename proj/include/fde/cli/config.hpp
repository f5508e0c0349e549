#pragma once

#include <filesystem>
#include <string_view>

#include "fde/dengue.hpp"
#include "fde/expansion.hpp"
#include "fde/integrator.hpp"

namespace fde::cli {

/// Everything a simulate or fit run needs. Defaults are the Cape Verde
/// scenario with alpha = 1, N = 7, 100 days at h = 0.01.
struct ScenarioConfig {
  dengue::ModelParams params;
  dengue::StateVector initial;
  double alpha = 1.0;
  int order_n = 7;
  double t_end = 100.0;
  double step = 0.01;
  double epsilon = 1e-3;

  ExpansionConfig expansion() const { return {alpha, order_n, 0.0}; }
  TimeGrid grid() const { return {0.0, t_end, step}; }
  SingularStart singular_start() const { return {epsilon, SingularStart{}.window}; }

  /// Throws ValidationError on any invariant violation.
  void validate() const;
};

ScenarioConfig default_config();

/// Flat `key = value` text, one pair per line, `#` starts a comment.
/// Missing keys keep their defaults; s_h0 and s_m0 default to whatever
/// completes the population (n_h - i_h0 - r_h0, n_m - i_m0).
/// Errors name the source and line.
ScenarioConfig parse_scenario_config(std::string_view text, std::string_view source = "<config>");
ScenarioConfig load_scenario_config(const std::filesystem::path& path);

}  // namespace fde::cli
