#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fde::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kNumerical = 2 };

/// Runs `fdengue <args...>` (args excludes the program name) and returns
/// the exit status. Failures print one line `error kind=<k> reason=<r>` on err.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fde::cli
