#pragma once

// Vaughan's identity with both cut parameters floor(D^{1/3}): for
// D < d <= 2D,
//   sum Lambda(d) g(d) = S1 + S2 + S3 + S4,
//   S1 = sum_{m <= cut} a1(m) sum_{D < mn <= 2D} g(mn)
//   S2 = sum_{m <= cut} a2(m) sum_{D < mn <= 2D} g(mn) log n
//   S3 = sum_{cut < m, n; D < mn <= 2D} a3(m) a4(n) g(mn)
//   S4 = sum_{cut < m, n; D < mn <= 2D} a5(m) a6(n) g(mn)
// with a1 = -A on [1, cut], a2 = mu, a3 = -A on (cut, cut^2], a4 = 1,
// a5 = Lambda, a6(n) = -sum_{b | n, b <= cut} mu(b), where
// A(m) = sum_{bc = m, b, c <= cut} mu(b) Lambda(c).
//
// Type II variables run over (cut, floor(2D/(cut+1))], which exceeds D^{2/3}.

#include <cstdint>
#include <functional>
#include <vector>

#include "pertlab/parallel.hpp"

namespace pertlab {

class VaughanCoefficients {
 public:
  explicit VaughanCoefficients(std::int64_t D);

  std::int64_t D() const { return D_; }
  std::int64_t cut() const { return cut_; }
  std::int64_t type2_hi() const { return type2_hi_; }

  // alpha_k(n) for k = 1..6; zero outside the tabulated range of alpha_k
  // (k = 1, 2: [1, cut]; k = 3..6: (cut, type2_hi]).
  double alpha(int k, std::int64_t n) const;

  // Lambda(d) for 1 <= d <= 2D.
  double lambda(std::int64_t d) const { return lambda_[static_cast<std::size_t>(d)]; }

 private:
  std::int64_t D_;
  std::int64_t cut_;
  std::int64_t type2_hi_;
  std::vector<double> lambda_;               // [0, 2D]
  std::vector<double> a1_, a2_;              // [0, cut]
  std::vector<double> a3_, a5_, a6_;         // index n - cut - 1
};

struct VaughanSplit {
  std::int64_t D = 0;
  std::int64_t cut = 0;
  std::int64_t type2_hi = 0;
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;
  double s4 = 0.0;
  double direct = 0.0;  // sum_{D < d <= 2D} Lambda(d) g(d)
  double total() const { return s1 + s2 + s3 + s4; }
};

// Throws DomainError for D <= 100.
VaughanSplit vaughan_split(std::int64_t D, const std::function<double(std::int64_t)>& g,
                           Exec exec = Exec::parallel);
VaughanSplit vaughan_split(const VaughanCoefficients& coeffs,
                           const std::function<double(std::int64_t)>& g,
                           Exec exec = Exec::parallel);

// The four pieces of frak_S_delta(x, D) = sum_{D < d <= 2D} Lambda(d) psi(x/(d+delta)).
VaughanSplit frak_s_decomposed(double x, std::int64_t D, double delta,
                               Exec exec = Exec::parallel);

}  // namespace pertlab
