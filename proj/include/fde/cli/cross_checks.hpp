#pragma once

#include <string>
#include <vector>

namespace fde::cli {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Oracle cross-checks: gamma identities, coefficient values, GL against
/// closed forms, expansion against GL, and the alpha -> 1 limit of the
/// fractional simulation. Takes a second or two.
std::vector<CheckResult> run_cross_checks();

}  // namespace fde::cli
