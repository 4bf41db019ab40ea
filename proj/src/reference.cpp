#include "pertlab/reference.hpp"

#include <cmath>
#include <numbers>
#include <unordered_map>

namespace pertlab::reference {

double mangoldt_trial(std::int64_t d) {
  if (d < 2) return 0.0;
  for (std::int64_t p = 2; p * p <= d; ++p) {
    if (d % p != 0) continue;
    while (d % p == 0) d /= p;
    return d == 1 ? std::log(static_cast<double>(p)) : 0.0;
  }
  return std::log(static_cast<double>(d));
}

std::vector<double> mangoldt_table(std::int64_t limit) {
  std::vector<double> out(static_cast<std::size_t>(limit + 1), 0.0);
  for (std::int64_t d = 2; d <= limit; ++d) out[static_cast<std::size_t>(d)] = mangoldt_trial(d);
  return out;
}

std::complex<double> bilinear_form(const FunctionFamily& family, const PointSet& points) {
  std::complex<double> s = 0.0;
  for (std::size_t k = 0; k < family.size(); ++k)
    for (std::size_t j = 0; j < points.size(); ++j)
      s += family.coeffs()[k] * points.coeffs()[j] *
           std::polar(1.0, 2.0 * std::numbers::pi * family.value(k, j) * points.points()[j]);
  return s;
}

std::complex<double> exp_sum(const ExpSumInstance& inst) {
  std::complex<double> s = 0.0;
  for (std::int64_t h = inst.H + 1; h <= 2 * inst.H; ++h)
    for (std::int64_t m = inst.M + 1; m <= 2 * inst.M; ++m) {
      const std::complex<double> a = inst.coeff_a ? inst.coeff_a(h, m) : 1.0;
      for (std::int64_t n = inst.N + 1; n <= 2 * inst.N; ++n) {
        if (inst.mode == IndexMode::hyperbola && (m * n <= inst.clip_lo || m * n > inst.clip_hi))
          continue;
        const std::complex<double> b = inst.coeff_b ? inst.coeff_b(n) : 1.0;
        s += a * b * std::polar(1.0, 2.0 * std::numbers::pi * inst.phase(h, m, n));
      }
    }
  return s;
}

double s_lambda(std::int64_t x) {
  std::unordered_map<std::int64_t, double> memo;
  double s = 0.0;
  for (std::int64_t n = 1; n <= x; ++n) {
    const std::int64_t d = x / n;
    auto it = memo.find(d);
    if (it == memo.end()) it = memo.emplace(d, mangoldt_trial(d)).first;
    s += it->second;
  }
  return s;
}

std::int64_t count_B0(std::int64_t N, double beta, double X) {
  const double scale = std::pow(static_cast<double>(N), beta);
  std::int64_t c = 0;
  for (std::int64_t a = N + 1; a <= 2 * N; ++a)
    for (std::int64_t b = N + 1; b <= 2 * N; ++b)
      for (std::int64_t e = N + 1; e <= 2 * N; ++e)
        for (std::int64_t f = N + 1; f <= 2 * N; ++f) {
          const double v = std::pow(a, beta) + std::pow(b, beta) - std::pow(e, beta) - std::pow(f, beta);
          if (std::abs(v) / scale <= 1.0 / X) ++c;
        }
  return c;
}

}  // namespace pertlab::reference
