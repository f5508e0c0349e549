#pragma once

namespace fde {

/// Selects between the serial reference loop and the OpenMP kernel.
/// Both produce bit-identical results; only the schedule differs.
enum class Execution { serial, parallel };

}  // namespace fde
