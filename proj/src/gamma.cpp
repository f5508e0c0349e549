#include "fde/gamma.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "fde/errors.hpp"

namespace fde {

namespace {

// Lanczos g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr double kPoleTolerance = 1e-12;

double lanczos(double x) {
  // Gamma(x) for x >= 0.5, via Gamma(z + 1) with z = x - 1.
  const double z = x - 1.0;
  double sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i)
    sum += kLanczos[i] / (z + static_cast<double>(i));
  const double t = z + kLanczosG + 0.5;
  // t^(z+0.5) e^-t split in two so the power does not overflow before x ~ 171.
  const double half = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) * sum;
}

// sin(pi x) with x reduced exactly to [-1/2, 1/2] first, so that values
// next to the poles keep their relative accuracy.
double sin_pi(double x) {
  const double n = std::round(x);
  const double s = std::sin(std::numbers::pi * (x - n));
  return std::fmod(n, 2.0) == 0.0 ? s : -s;
}

}  // namespace

double gamma(double x) {
  if (!std::isfinite(x))
    throw ValidationError("gamma: non-finite argument");
  if (x <= 0.0 && std::abs(x - std::round(x)) < kPoleTolerance)
    throw PoleError("gamma: pole at " + std::to_string(x));
  if (x < 0.5) {
    // Gamma(x) Gamma(1-x) = pi / sin(pi x)
    return std::numbers::pi / (sin_pi(x) * lanczos(1.0 - x));
  }
  return lanczos(x);
}

}  // namespace fde
