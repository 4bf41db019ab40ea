#include "pertlab/vaughan.hpp"

#include <cmath>
#include <string>

#include "pertlab/arith.hpp"
#include "pertlab/errors.hpp"

namespace pertlab {

VaughanCoefficients::VaughanCoefficients(std::int64_t D) : D_(D) {
  if (D <= 100) throw DomainError("Vaughan decomposition needs D > 100, got " + std::to_string(D));
  cut_ = static_cast<std::int64_t>(integer_root(static_cast<std::uint64_t>(D), 3));
  type2_hi_ = 2 * D / (cut_ + 1);

  const auto table = sieve_mangoldt(2 * D);
  lambda_.assign(static_cast<std::size_t>(2 * D + 1), 0.0);
  for (std::int64_t d = 1; d <= 2 * D; ++d) lambda_[static_cast<std::size_t>(d)] = table(d);
  const auto mu = mobius_table(cut_);

  // A(m) on [1, cut^2]
  const std::int64_t sq = cut_ * cut_;
  std::vector<double> A(static_cast<std::size_t>(sq + 1), 0.0);
  for (std::int64_t b = 1; b <= cut_; ++b) {
    if (mu[static_cast<std::size_t>(b)] == 0) continue;
    for (std::int64_t c = 2; c <= cut_; ++c)
      A[static_cast<std::size_t>(b * c)] += mu[static_cast<std::size_t>(b)] * lambda(c);
  }

  a1_.assign(static_cast<std::size_t>(cut_ + 1), 0.0);
  a2_.assign(static_cast<std::size_t>(cut_ + 1), 0.0);
  for (std::int64_t m = 1; m <= cut_; ++m) {
    a1_[static_cast<std::size_t>(m)] = -A[static_cast<std::size_t>(m)];
    a2_[static_cast<std::size_t>(m)] = mu[static_cast<std::size_t>(m)];
  }

  const auto width = static_cast<std::size_t>(type2_hi_ - cut_);
  a3_.assign(width, 0.0);
  a5_.assign(width, 0.0);
  a6_.assign(width, 0.0);
  for (std::int64_t n = cut_ + 1; n <= type2_hi_; ++n) {
    const auto i = static_cast<std::size_t>(n - cut_ - 1);
    if (n <= sq) a3_[i] = -A[static_cast<std::size_t>(n)];
    a5_[i] = lambda(n);
  }
  // a6(n) = -sum_{b | n, b <= cut} mu(b)
  for (std::int64_t b = 1; b <= cut_; ++b) {
    const int mb = mu[static_cast<std::size_t>(b)];
    if (mb == 0) continue;
    for (std::int64_t n = ((cut_ / b) + 1) * b; n <= type2_hi_; n += b)
      a6_[static_cast<std::size_t>(n - cut_ - 1)] -= mb;
  }
}

double VaughanCoefficients::alpha(int k, std::int64_t n) const {
  if (k == 1 || k == 2) {
    if (n < 1 || n > cut_) return 0.0;
    return (k == 1 ? a1_ : a2_)[static_cast<std::size_t>(n)];
  }
  if (n <= cut_ || n > type2_hi_) return 0.0;
  const auto i = static_cast<std::size_t>(n - cut_ - 1);
  switch (k) {
    case 3: return a3_[i];
    case 4: return 1.0;
    case 5: return a5_[i];
    case 6: return a6_[i];
    default: throw DomainError("alpha index must be 1..6, got " + std::to_string(k));
  }
}

VaughanSplit vaughan_split(const VaughanCoefficients& c,
                           const std::function<double(std::int64_t)>& g, Exec exec) {
  const std::int64_t D = c.D();
  const std::int64_t cut = c.cut();
  std::vector<double> gv(static_cast<std::size_t>(D));  // g(D + 1 + i)
  par::for_each_index(gv.size(), [&](std::size_t i) { gv[i] = g(D + 1 + static_cast<std::int64_t>(i)); },
                      exec);
  auto gat = [&](std::int64_t d) { return gv[static_cast<std::size_t>(d - D - 1)]; };

  VaughanSplit out;
  out.D = D;
  out.cut = cut;
  out.type2_hi = c.type2_hi();
  out.direct = par::compensated_sum<double>(
      gv.size(), [&](std::size_t i) { return c.lambda(D + 1 + static_cast<std::int64_t>(i)) * gv[i]; },
      exec);

  // inner sum over n with D < mn <= 2D and n > n_floor, weighted by w(n)
  auto inner = [&](std::int64_t m, std::int64_t n_floor, auto&& w) {
    par::Neumaier<double> acc;
    const std::int64_t lo = std::max(D / m, n_floor);
    for (std::int64_t n = lo + 1; n * m <= 2 * D; ++n) {
      const double wn = w(n);
      if (wn != 0.0) acc.add(wn * gat(n * m));
    }
    return acc.value();
  };
  auto one = [](std::int64_t) { return 1.0; };
  auto lg = [](std::int64_t n) { return std::log(static_cast<double>(n)); };

  const auto type1 = static_cast<std::size_t>(cut);
  out.s1 = par::compensated_sum<double>(
      type1,
      [&](std::size_t i) {
        const auto m = static_cast<std::int64_t>(i) + 1;
        const double a = c.alpha(1, m);
        return a == 0.0 ? 0.0 : a * inner(m, 0, one);
      },
      exec, 1);
  out.s2 = par::compensated_sum<double>(
      type1,
      [&](std::size_t i) {
        const auto m = static_cast<std::int64_t>(i) + 1;
        const double a = c.alpha(2, m);
        return a == 0.0 ? 0.0 : a * inner(m, 0, lg);
      },
      exec, 1);

  const auto type2 = static_cast<std::size_t>(c.type2_hi() - cut);
  auto a4 = [&](std::int64_t n) { return c.alpha(4, n); };
  auto a6 = [&](std::int64_t n) { return c.alpha(6, n); };
  out.s3 = par::compensated_sum<double>(
      type2,
      [&](std::size_t i) {
        const auto m = cut + 1 + static_cast<std::int64_t>(i);
        const double a = c.alpha(3, m);
        return a == 0.0 ? 0.0 : a * inner(m, cut, a4);
      },
      exec, 64);
  out.s4 = par::compensated_sum<double>(
      type2,
      [&](std::size_t i) {
        const auto m = cut + 1 + static_cast<std::int64_t>(i);
        const double a = c.alpha(5, m);
        return a == 0.0 ? 0.0 : a * inner(m, cut, a6);
      },
      exec, 64);
  return out;
}

VaughanSplit vaughan_split(std::int64_t D, const std::function<double(std::int64_t)>& g, Exec exec) {
  return vaughan_split(VaughanCoefficients(D), g, exec);
}

VaughanSplit frak_s_decomposed(double x, std::int64_t D, double delta, Exec exec) {
  if (delta < 0.0) throw DomainError("delta must be >= 0");
  return vaughan_split(
      D, [=](std::int64_t d) { return psi_frac(x / (static_cast<double>(d) + delta)); }, exec);
}

}  // namespace pertlab
