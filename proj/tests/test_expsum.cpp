#include <cmath>
#include <cstring>
#include <numbers>

#include "doctest.h"
#include "pertlab/errors.hpp"
#include "pertlab/expsum.hpp"
#include "pertlab/random.hpp"
#include "pertlab/vaaler.hpp"
#include "pertlab/vaughan.hpp"

using namespace pertlab;
using cplx = std::complex<double>;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// naive triple loop with its own phase formula
cplx triple_oracle(const ExpSumInstance& s) {
  cplx acc = 0.0;
  const double scale = s.X * std::pow(s.M, s.beta) * std::pow(s.N, s.gamma) / std::pow(s.H, s.alpha);
  for (std::int64_t h = s.H + 1; h <= 2 * s.H; ++h)
    for (std::int64_t m = s.M + 1; m <= 2 * s.M; ++m)
      for (std::int64_t n = s.N + 1; n <= 2 * s.N; ++n) {
        if (s.mode == IndexMode::hyperbola && (m * n <= s.clip_lo || m * n > s.clip_hi)) continue;
        const double ph = scale * std::pow(h, s.alpha) / (std::pow(m, s.beta) * std::pow(n, s.gamma) + s.delta);
        const cplx a = s.coeff_a ? s.coeff_a(h, m) : 1.0;
        const cplx b = s.coeff_b ? s.coeff_b(n) : 1.0;
        acc += a * b * std::polar(1.0, kTwoPi * (ph - std::floor(ph)));
      }
  return acc;
}

ExpSumInstance random_instance(Rng& rng) {
  ExpSumInstance s;
  s.H = rng.integer(1, 8);
  s.M = rng.integer(1, 16);
  s.N = rng.integer(1, 16);
  s.X = std::exp(rng.uniform(std::log(2.0), std::log(1e4)));
  s.alpha = rng.uniform(0.5, 2.0);
  s.beta = rng.uniform(0.5, 2.0);
  s.gamma = rng.uniform(0.5, 2.0);
  s.delta = rng.uniform(0.0, 2.0);
  return s;
}

}  // namespace

TEST_CASE("single term and aligned phases") {
  ExpSumInstance one;
  one.X = 3.7;
  CHECK(std::abs(std::abs(eval_exp_sum(one)) - 1.0) < 1e-15);

  ExpSumInstance al;
  al.N = 50;
  al.X = 12.3;
  al.delta = 0.4;
  al.coeff_b = [&al](std::int64_t n) { return std::polar(1.0, -kTwoPi * al.phase(2, 2, n)); };
  const cplx v = eval_exp_sum(al);
  CHECK(std::abs(v - cplx(50.0, 0.0)) < 1e-12);
}

TEST_CASE("random coefficients agree with the oracle, seed 7") {
  ExpSumInstance s;
  s.H = s.M = s.N = 4;
  s.delta = 0.5;
  s.X = 10.0;
  randomize_coefficients(s, 7);
  CHECK(std::abs(eval_exp_sum(s) - triple_oracle(s)) < 1e-12);
  for (std::int64_t h = 5; h <= 8; ++h)
    for (std::int64_t m = 5; m <= 8; ++m) CHECK(std::abs(std::abs(s.coeff_a(h, m)) - 1.0) < 1e-14);
}

TEST_CASE("random instances agree with the oracle and the trivial bound") {
  Rng rng(31);
  for (int i = 0; i < 60; ++i) {
    auto s = random_instance(rng);
    if (i % 2) randomize_coefficients(s, 1000 + i);
    if (i % 3 == 0) {
      s.mode = IndexMode::hyperbola;
      s.clip_lo = s.M * s.N + s.M;
      s.clip_hi = 3 * s.M * s.N;
    }
    const cplx v = eval_exp_sum(s);
    CHECK(std::abs(v - triple_oracle(s)) < 1e-10);
    CHECK(std::abs(v) <= s.terms() * (1 + 1e-12));
  }
}

TEST_CASE("conjugating X conjugates the sum") {
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    auto s = random_instance(rng);
    const cplx v = eval_exp_sum(s);
    s.X = -s.X;
    CHECK(std::abs(eval_exp_sum(s) - std::conj(v)) < 1e-12);
  }
}

TEST_CASE("worker count does not change a single bit") {
  ExpSumInstance s;
  s.H = 8;
  s.M = 40;
  s.N = 60;
  s.X = 777.7;
  s.delta = 0.3;
  randomize_coefficients(s, 99);
  const cplx ref = eval_exp_sum(s, kExpSumBudget, Exec::serial);
  for (int w : {1, 2, 8}) {
    par::WorkerScope scope(w);
    const cplx v = eval_exp_sum(s);
    CHECK(std::memcmp(&v, &ref, sizeof v) == 0);
  }
}

TEST_CASE("budget and phase guards") {
  ExpSumInstance s;
  s.H = s.M = s.N = 100;
  CHECK_THROWS_AS(eval_exp_sum(s, 1e5), ResourceError);
  ExpSumInstance big;
  big.X = 1e14;
  CHECK_THROWS_AS(eval_exp_sum(big), RejectedInstance);
}

TEST_CASE("rs06 hand value") {
  ExpSumInstance s;
  s.H = s.M = s.N = 16;
  s.X = 256.0;
  s.epsilon = 0.0;
  const double hand = 4096.0 * (std::pow(256.0 / (16.0 * 16.0 * 256.0), 0.25) + std::pow(256.0, -0.25) +
                                std::pow(16.0, -0.5) + std::pow(256.0, -0.5));
  CHECK(hand == 3328.0);
  CHECK(bound_value(s, BoundKind::rs06) == doctest::Approx(3328.0).epsilon(1e-14));
}

TEST_CASE("thm1 at K = 1, delta = 0 equals rs06") {
  Rng rng(12);
  for (int i = 0; i < 50; ++i) {
    auto s = random_instance(rng);
    s.delta = 0.0;
    s.K = 1.0;
    CHECK(bound_value(s, BoundKind::thm1) == doctest::Approx(bound_value(s, BoundKind::rs06)).epsilon(1e-13));
  }
}

TEST_CASE("lwy uses the exponent pair") {
  ExpSumInstance s;
  s.H = 2;
  s.M = 8;
  s.N = 16;
  s.X = 100.0;
  s.beta = 2.0;
  s.epsilon = 0.0;
  const ExponentPair half(Rational(1, 2), Rational(1, 2));
  const double first = std::cbrt(std::sqrt(100.0) * std::pow(2.0 * 8.0, 2.5) * 16.0 * 16.0);
  const double rest = 2.0 * 8.0 * 4.0 + 4.0 * 16.0 + 2.0 * 8.0 * 16.0 / 10.0;
  CHECK(bound_value(s, BoundKind::lwy, half) == doctest::Approx(first + rest).epsilon(1e-13));
  // the trivial pair gives HMN as first term
  const ExponentPair triv(Rational(0), Rational(1));
  CHECK(bound_value(s, BoundKind::lwy, triv) == doctest::Approx(2.0 * 8 * 16 + rest).epsilon(1e-13));
  s.H = 1000;
  CHECK_THROWS_AS(bound_value(s, BoundKind::lwy, half), RejectedInstance);
}

TEST_CASE("thm1 regime rejection names the inequality") {
  ExpSumInstance s;
  s.M = s.N = 4;
  s.X = 1000.0;
  s.delta = 1.0;
  s.K = 1.0;
  CHECK(!s.thm1_regime());
  try {
    bound_value(s, BoundKind::thm1);
    FAIL("expected rejection");
  } catch (const RejectedInstance& e) {
    CHECK(std::string(e.what()).find("X <= K") != std::string::npos);
  }
  s.K = regime_min_K(s);
  CHECK(s.thm1_regime());
  CHECK(bound_value(s, BoundKind::thm1) > 0.0);
  CHECK_THROWS_AS(ratio_scan({s, [] {
                                ExpSumInstance t;
                                t.M = t.N = 4;
                                t.X = 1000.0;
                                t.delta = 1.0;
                                return t;
                              }()},
                             BoundKind::thm1),
                  RejectedInstance);
}

TEST_CASE("ratio_scan is reproducible and respects the trivial bound") {
  Rng rng(50);
  std::vector<ExpSumInstance> grid;
  for (int i = 0; i < 50; ++i) {
    auto s = random_instance(rng);
    randomize_coefficients(s, 500 + i);
    s.K = regime_min_K(s);
    grid.push_back(s);
  }
  const auto a = ratio_scan(grid, BoundKind::thm1);
  const auto b = ratio_scan(grid, BoundKind::thm1);
  CHECK(std::memcmp(&a.max_ratio, &b.max_ratio, sizeof(double)) == 0);
  CHECK(a.argmax == b.argmax);
  REQUIRE(a.reports.size() == 50);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(std::isfinite(a.reports[i].ratio));
    CHECK(a.reports[i].lhs <= grid[i].terms() * (1 + 1e-12));
    CHECK(a.reports[i].ratio <= grid[i].terms() / a.reports[i].rhs * (1 + 1e-12));
  }
}

TEST_CASE("floor scenario construction") {
  const VaughanCoefficients c(1000);
  const auto s = build_floor_scenario(c, 1e6, 1.0, 4, 16, 32, 32);
  CHECK(s.X == doctest::Approx(1e6 * 4 / 1024.0));
  CHECK(s.alpha == 1.0);
  CHECK(s.thm1_regime());
  for (std::int64_t h = 5; h <= 8; ++h)
    for (std::int64_t m = 33; m <= 64; ++m) CHECK(std::abs(s.coeff_a(h, m)) <= 1.0);
  for (std::int64_t n = 33; n <= 64; ++n) CHECK(std::abs(s.coeff_b(n)) <= 1.0);
  // phase is h x / (m n + delta)
  CHECK(s.phase(6, 40, 50) == doctest::Approx(6.0 * 1e6 / (2000.0 + 1.0)).epsilon(1e-14));

  const auto h1 = build_floor_scenario(c, 1e6, 0.0, 1, 4, 32, 32);
  double sup3 = 0.0;
  for (std::int64_t m = 33; m <= 64; ++m) sup3 = std::max(sup3, std::abs(c.alpha(3, m)));
  for (std::int64_t m = 33; m <= 64; ++m) {
    const double w = std::abs(h1.coeff_a(2, m));
    const double expect = 0.5 * vaaler_phi(2.0 / 5.0) * std::abs(c.alpha(3, m)) / sup3;
    CHECK(w == doctest::Approx(expect).epsilon(1e-14));
  }
  CHECK(0.5 * vaaler_phi(0.4) > 0.0);
  CHECK(0.5 * vaaler_phi(0.4) <= 1.0);

  CHECK_THROWS_AS(build_floor_scenario(c, 1e6, 0.0, 1, 4, 4, 4), StructuralError);
  CHECK_THROWS_AS(build_floor_scenario(c, 1e6, 0.0, 3, 4, 32, 32), StructuralError);
}

TEST_CASE("floor scenario is continuous at delta = 0") {
  const VaughanCoefficients c(1000);
  for (auto mode : {IndexMode::rectangle, IndexMode::hyperbola}) {
    const auto a = build_floor_scenario(c, 1e5, 0.0, 2, 8, 32, 32, mode);
    const auto b = build_floor_scenario(c, 1e5, 1e-13, 2, 8, 32, 32, mode);
    CHECK(std::abs(eval_exp_sum(a) - eval_exp_sum(b)) < 1e-9);
    CHECK(std::abs(eval_exp_sum(a) - triple_oracle(a)) < 1e-10);
  }
}
