#include "pertlab/vaaler.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pertlab/errors.hpp"

namespace pertlab {

namespace {

constexpr double kPi = std::numbers::pi;

// sin(2 pi r) after reducing r to [-1/2, 1/2]
double sin_turns(double r) {
  r -= std::nearbyint(r);
  return std::sin(2.0 * kPi * r);
}

}  // namespace

double vaaler_phi(double t) {
  const double a = std::fabs(t);
  if (!(a < 1.0)) throw DomainError("vaaler_phi: |t| must be < 1, got " + std::to_string(t));
  double pt_cot;
  if (a < 1e-4) {
    // pi t cot(pi t) = 1 - z/3 - z^2/45 - 2 z^3/945, z = (pi t)^2
    const double z = (kPi * t) * (kPi * t);
    pt_cot = 1.0 - z / 3.0 - z * z / 45.0 - 2.0 * z * z * z / 945.0;
  } else {
    pt_cot = kPi * t * std::cos(kPi * t) / std::sin(kPi * t);
  }
  return (1.0 - a) * pt_cot + a;
}

VaalerPolynomial::VaalerPolynomial(int H) : H_(H) {
  if (H < 1) throw DomainError("VaalerPolynomial: H must be >= 1");
  coeffs_.resize(static_cast<std::size_t>(H));
  for (int h = 1; h <= H; ++h)
    coeffs_[h - 1] = vaaler_phi(static_cast<double>(h) / (H + 1)) / (kPi * h);
}

double VaalerPolynomial::operator()(double x) const {
  const double r = x - std::floor(x);
  double s = 0.0;
  for (int h = H_; h >= 1; --h) s += coeffs_[h - 1] * sin_turns(h * r);
  return -s;
}

double psi_approx(double x, int H) { return VaalerPolynomial(H)(x); }

double error_majorant(double x, int H) {
  if (H < 1) throw DomainError("error_majorant: H must be >= 1");
  const double r = x - std::nearbyint(x);  // in [-1/2, 1/2]
  const double s = std::sin(kPi * r);
  const double k = H + 1.0;
  if (std::fabs(s) < 1e-6) {
    // near an integer: Fejer sum term by term
    double sum = 1.0;
    for (int h = 1; h <= H; ++h) sum += 2.0 * (1.0 - h / k) * std::cos(2.0 * kPi * h * r);
    return sum / (2.0 * k);
  }
  const double ratio = std::sin(kPi * k * r) / s;
  return ratio * ratio / (2.0 * k * k);
}

}  // namespace pertlab
