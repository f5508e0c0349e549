#pragma once

namespace fde {

/// Gamma function. Lanczos approximation for x >= 0.5, reflection below.
/// Relative accuracy is ~1e-14 on (-10, 50).
/// Throws PoleError within 1e-12 of a non-positive integer and
/// ValidationError for non-finite x.
double gamma(double x);

}  // namespace fde
