#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace pertlab {

// e(t) = exp(2 pi i t), with t reduced mod 1 before scaling.
inline std::complex<double> unit_phase(double t) {
  const double r = t - std::nearbyint(t);
  const double a = 2.0 * std::numbers::pi * r;
  return {std::cos(a), std::sin(a)};
}

}  // namespace pertlab
