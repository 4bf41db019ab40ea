#pragma once

// Trigonometric approximation of the sawtooth psi(x) = {x} - 1/2 of degree H
// with the Fejer-kernel pointwise error majorant.

#include <vector>

namespace pertlab {

// Phi(t) = pi t (1 - |t|) cot(pi t) + |t| on (-1, 1); Phi(0) = 1.
double vaaler_phi(double t);

class VaalerPolynomial {
 public:
  explicit VaalerPolynomial(int H);

  int degree() const { return H_; }
  // c_h = Phi(h/(H+1)) / (pi h), h = 1..H; entry 0 is c_1.
  const std::vector<double>& coefficients() const { return coeffs_; }

  // -sum_{h=1}^{H} c_h sin(2 pi h x)
  double operator()(double x) const;

 private:
  int H_;
  std::vector<double> coeffs_;
};

double psi_approx(double x, int H);

// (1/(2H+2)) sum_{|h|<=H} (1 - |h|/(H+1)) e(hx), which is >= 0.
double error_majorant(double x, int H);

}  // namespace pertlab
