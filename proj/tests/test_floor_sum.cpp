#include <cmath>

#include "doctest.h"
#include "pertlab/arith.hpp"
#include "pertlab/errors.hpp"
#include "pertlab/floor_sum.hpp"
#include "pertlab/random.hpp"

using namespace pertlab;

namespace {

double lambda_oracle(std::int64_t n) {
  if (n < 2) return 0.0;
  for (std::int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
    }
  return std::log(static_cast<double>(n));
}

double s_oracle(std::int64_t x) {
  double s = 0.0;
  for (std::int64_t n = 1; n <= x; ++n) s += lambda_oracle(x / n);
  return s;
}

double psi_o(double t) { return t - std::floor(t) - 0.5; }

bool rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("direct sum examples") {
  CHECK(s_lambda_direct(1) == 0.0);
  CHECK(s_lambda_direct(4) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-15));
  CHECK(s_lambda_direct(10) == doctest::Approx(std::log(60.0)).epsilon(1e-15));
  for (std::int64_t x : {2, 17, 100, 999}) CHECK(rel(s_lambda_direct(x), s_oracle(x), 1e-13));
  CHECK_THROWS_AS(s_lambda_direct(kDirectBudget + 1), ResourceError);
}

TEST_CASE("blocked sum examples") {
  CHECK(s_lambda_blocked(1).value == 0.0);
  CHECK(s_lambda_blocked(10).value == doctest::Approx(std::log(60.0)).epsilon(1e-15));
  for (std::int64_t x : {2, 3, 4, 5, 17, 99, 100, 101, 12345}) CHECK(rel(s_lambda_blocked(x).value, s_oracle(x), 1e-12));
}

TEST_CASE("blocked equals direct") {
  for (std::int64_t x : {1000, 10000, 100000, 1000000}) CHECK(rel(s_lambda_blocked(x).value, s_lambda_direct(x), 1e-6));
  Rng rng(606);
  for (int i = 0; i < 20; ++i) {
    const auto x = rng.integer(1, 1000000);
    CHECK(rel(s_lambda_blocked(x).value, s_lambda_direct(x), 1e-6));
  }
}

TEST_CASE("block count bound") {
  Rng rng(3);
  for (int i = 0; i < 40; ++i) {
    const auto x = i < 20 ? rng.integer(1, 1000000) : rng.integer(1, 1000000000000);
    const auto b = s_lambda_blocked(x);
    const auto r = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(x))));
    CHECK(b.blocks <= 2 * r + 2);
  }
}

TEST_CASE("main constant small cutoffs") {
  CHECK(main_constant(2).value == doctest::Approx(std::log(2.0) / 6.0).epsilon(1e-15));
  CHECK(main_constant(4).value ==
        doctest::Approx(std::log(2.0) / 6.0 + std::log(3.0) / 12.0 + std::log(2.0) / 20.0).epsilon(1e-15));
  CHECK(main_constant_tail(10) == doctest::Approx((std::log(10.0) + 1.0) / 10.0));
  CHECK_THROWS(main_constant(1));
}

TEST_CASE("main constant is monotone and Cauchy") {
  double prev = 0.0;
  for (std::int64_t T : {2, 3, 10, 100, 1000, 10000, 100000, 1000000}) {
    const auto c = main_constant(T);
    CHECK(c.value >= prev);
    prev = c.value;
    const auto c2 = main_constant(2 * T);
    const auto c4 = main_constant(4 * T);
    CHECK(c2.value - c.value <= c.tail_bound);
    CHECK(c4.value - c.value <= c.tail_bound);
    // segmented streaming agrees with an in-memory sum for small T
    if (T <= 1000) {
      double s = 0.0;
      for (std::int64_t d = 2; d <= T; ++d) s += lambda_oracle(d) / (static_cast<double>(d) * (d + 1.0));
      CHECK(rel(c.value, s, 1e-14));
    }
  }
}

TEST_CASE("main constant from two cutoffs") {
  const auto a = main_constant(1000000);
  const auto b = main_constant(10000000);
  CHECK(std::abs(a.value - b.value) <= a.tail_bound);
}

TEST_CASE("frak_s hand value and trivial bound") {
  const double hand = std::log(7.0) * (2.0 / 7.0 - 0.5) + std::log(3.0) * (1.0 / 9.0 - 0.5);
  CHECK(frak_s(100.0, 5, 0.0) == doctest::Approx(hand).epsilon(1e-13));
  Rng rng(44);
  for (int i = 0; i < 200; ++i) {
    const double x = rng.uniform(3.0, 1e7);
    const auto D = rng.integer(1, 5000);
    const double delta = rng.uniform(0.0, 2.0);
    double half = 0.0, oracle = 0.0;
    for (std::int64_t d = D + 1; d <= 2 * D; ++d) {
      half += 0.5 * lambda_oracle(d);
      oracle += lambda_oracle(d) * psi_o(x / (d + delta));
    }
    const double v = frak_s(x, D, delta);
    CHECK(std::abs(v) <= half + 1e-12);
    CHECK(std::abs(v - oracle) <= 1e-9 * (1.0 + std::abs(oracle)));
  }
}

TEST_CASE("r_delta range and dyadic recombination") {
  CHECK(r_delta(1000.0, 600.0, 0.0) == 0.0);
  CHECK(r_delta(1000.0, 500.0, 1.0) == 0.0);
  const double x = 1e5;
  const double E = std::pow(x, 8.0 / 17.0);
  for (double delta : {0.0, 1.0}) {
    const double lit = r_delta(x, E, delta);
    double oracle = 0.0;
    for (auto d = static_cast<std::int64_t>(std::floor(E)) + 1; d <= static_cast<std::int64_t>(std::floor(x / E)); ++d)
      oracle += lambda_oracle(d) * psi_o(x / (d + delta));
    CHECK(std::abs(lit - oracle) <= 1e-9 * (1.0 + std::abs(oracle)));
    const auto dy = r_delta_dyadic(x, E, delta);
    CHECK(std::abs(dy.value - lit) <= 1e-9 * (1.0 + std::abs(lit)));
    // x/E = x^{9/17} < 2E: only the partial block
    CHECK(dy.pieces == 0);
    const auto wide = r_delta_dyadic(x, std::cbrt(x), delta);
    CHECK(wide.pieces >= 1);
    CHECK(std::abs(wide.value - r_delta(x, std::cbrt(x), delta)) <= 1e-9);
  }
  Rng rng(8);
  for (int i = 0; i < 30; ++i) {
    const double xx = rng.uniform(100.0, 1e7);
    const double ee = rng.uniform(1.0, std::sqrt(xx));
    const double d = rng.uniform(0.0, 1.5);
    const double lit = r_delta(xx, ee, d);
    CHECK(std::abs(r_delta_dyadic(xx, ee, d).value - lit) <= 1e-9 * (1.0 + std::abs(lit)));
  }
}

TEST_CASE("geometric grid") {
  const auto g = geometric_grid(1e4, 1e9, 11);
  REQUIRE(g.size() == 11);
  CHECK(g.front() == 10000);
  CHECK(g.back() == 1000000000);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
}

TEST_CASE("synthetic slope fits") {
  std::vector<double> xs, half, flat, band(8, 0.0);
  for (int i = 0; i < 8; ++i) {
    const double x = std::pow(10.0, 3 + 0.5 * i);
    xs.push_back(x);
    half.push_back(std::sqrt(x));
    flat.push_back(-7.25);
  }
  const auto a = fit_slope(xs, half, band);
  CHECK(std::abs(a.slope - 0.5) <= 1e-9);
  CHECK(a.used.size() == 8);
  CHECK(std::abs(fit_slope(xs, flat, band).slope) <= 1e-9);

  std::vector<double> wide(8, 100.0);
  const auto b = fit_slope(xs, half, wide);
  CHECK(b.excluded.size() == 3);  // sqrt x <= 100 up to x = 1e4
  CHECK(std::abs(b.slope - 0.5) <= 1e-9);
  std::vector<double> huge(8, 1e9);
  CHECK_THROWS_AS(fit_slope(xs, half, huge), FitError);
}

TEST_CASE("error curve on a small grid") {
  const auto C = main_constant(100000);
  const std::vector<std::int64_t> grid = {1000, 5000, 20000, 100000};
  const auto ec = error_curve(grid, C);
  REQUIRE(ec.x.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(rel(ec.S[i], s_lambda_direct(grid[i]), 1e-9));
    CHECK(ec.E[i] == doctest::Approx(ec.S[i] - ec.x[i] * C.value));
    CHECK(ec.band[i] == doctest::Approx(ec.x[i] * C.tail_bound));
  }
}
