#include <cmath>

#include "doctest.h"
#include "pertlab/diophantine.hpp"
#include "pertlab/errors.hpp"

using namespace pertlab;
using Kind = PerturbationSpec::Kind;

namespace {

double f_mu(double delta, double beta, std::int64_t m) { return delta * std::pow(static_cast<double>(m), -beta); }

double phi_o(std::int64_t s, std::int64_t t, std::int64_t m, double delta, double beta, std::int64_t N, double g) {
  const double mu = f_mu(delta, beta, m);
  const double ng = std::pow(static_cast<double>(N), g);
  return ng / (std::pow(static_cast<double>(s), g) + mu) - ng / (std::pow(static_cast<double>(t), g) + mu);
}

std::int64_t b1_oracle(std::int64_t H, std::int64_t M, double a, double b, double X, bool swap = false) {
  std::int64_t c = 0;
  const double norm = std::pow(H, a) * std::pow(M, b);
  for (std::int64_t h1 = H + 1; h1 <= 2 * H; ++h1)
    for (std::int64_t h2 = H + 1; h2 <= 2 * H; ++h2)
      for (std::int64_t m1 = M + 1; m1 <= 2 * M; ++m1)
        for (std::int64_t m2 = M + 1; m2 <= 2 * M; ++m2) {
          const double u = std::pow(h1, a) * std::pow(m1, b), v = std::pow(h2, a) * std::pow(m2, b);
          const double d = swap ? v - u : u - v;
          if (std::abs(d) / norm <= 1.0 / X) ++c;
        }
  return c;
}

std::int64_t b0_oracle(std::int64_t N, double b, double X, bool swap = false) {
  std::int64_t c = 0;
  for (std::int64_t n1 = N + 1; n1 <= 2 * N; ++n1)
    for (std::int64_t n2 = N + 1; n2 <= 2 * N; ++n2)
      for (std::int64_t n3 = N + 1; n3 <= 2 * N; ++n3)
        for (std::int64_t n4 = N + 1; n4 <= 2 * N; ++n4) {
          const double l = std::pow(n1, b) + std::pow(n2, b), r = std::pow(n3, b) + std::pow(n4, b);
          if (std::abs(swap ? r - l : l - r) / std::pow(N, b) <= 1.0 / X) ++c;
        }
  return c;
}

// full double scan over m1, m2
std::int64_t b2_oracle(std::int64_t N, double g, double X, double beta, double delta, std::int64_t M) {
  std::int64_t c = 0;
  for (std::int64_t n1 = N + 1; n1 <= 2 * N; ++n1)
    for (std::int64_t n2 = N + 1; n2 <= 2 * N; ++n2)
      for (std::int64_t n3 = N + 1; n3 <= 2 * N; ++n3)
        for (std::int64_t n4 = N + 1; n4 <= 2 * N; ++n4) {
          double sup = 0.0;
          for (std::int64_t m1 = M + 1; m1 <= 2 * M; ++m1)
            for (std::int64_t m2 = M + 1; m2 <= 2 * M; ++m2)
              sup = std::max(sup, std::abs(phi_o(n1, n2, m1, delta, beta, N, g) - phi_o(n3, n4, m2, delta, beta, N, g)));
          if (sup <= 1.0 / X) ++c;
        }
  return c;
}

std::int64_t b3_oracle(std::int64_t N, double g, double X, double beta, double delta, std::int64_t M) {
  std::int64_t c = 0;
  const double ng = std::pow(N, g);
  for (std::int64_t n1 = N + 1; n1 <= 2 * N; ++n1)
    for (std::int64_t n2 = N + 1; n2 <= 2 * N; ++n2) {
      double sup = 0.0;
      for (std::int64_t m1 = M + 1; m1 <= 2 * M; ++m1)
        for (std::int64_t m2 = M + 1; m2 <= 2 * M; ++m2)
          sup = std::max(sup, std::abs(ng / (std::pow(n1, g) + f_mu(delta, beta, m1)) -
                                       ng / (std::pow(n2, g) + f_mu(delta, beta, m2))));
      if (sup <= 1.0 / X) ++c;
    }
  return c;
}

}  // namespace

TEST_CASE("phi_pair examples") {
  const PerturbationSpec spec(1.0, 1.0, 2);
  CHECK(phi_pair(3, 4, 3, spec, 2, 1.0) == doctest::Approx(9.0 / 65.0).epsilon(1e-15));
  CHECK(phi_pair(3, 3, 3, spec, 2, 1.0) == 0.0);
  const PerturbationSpec zero(1.0, 0.0, 2);
  CHECK(phi_pair(3, 4, 3, zero, 2, 1.0) == phi_pair(3, 4, 4, zero, 2, 1.0));
  CHECK(psi_member(3, 3, spec, 2, 1.0) == doctest::Approx(0.6).epsilon(1e-15));
}

TEST_CASE("perturbation spec") {
  const PerturbationSpec s(1.0, 0.5, 4, Kind::nu);
  CHECK(s.U() == doctest::Approx(0.125));
  for (std::int64_t m = 5; m <= 8; ++m) {
    CHECK(s(m) > 0.0);
    CHECK(s(m) < s.U());
  }
  CHECK_THROWS_AS(PerturbationSpec(1.0, 10.0, 2), DomainError);
}

TEST_CASE("count examples") {
  CHECK(count_B1(1, 1, 1.0, 1.0, 5.0).count == 1);
  CHECK(count_B1(2, 2, 1.0, 1.0, 100.0).count == 6);
  CHECK(count_B1(2, 2, 1.0, 1.0, 1.0).count == b1_oracle(2, 2, 1.0, 1.0, 1.0));
  CHECK(count_B0(1, 2.0, 5.0).count == 1);
  CHECK(count_B0(2, 2.0, 100.0).count == 6);
  CHECK(count_B0(8, 1.5, 64.0).count == b0_oracle(8, 1.5, 64.0));
  const PerturbationSpec s(1.0, 0.3, 4);
  CHECK(count_B2(1, 1.0, 2.0, s).count == 1);
  CHECK(count_B3(1, 1.0, 2.0, s).count == 1);
  const PerturbationSpec z(1.0, 0.0, 4);
  CHECK(count_B3(16, 1.0, 1e6, z).count == 16);
}

TEST_CASE("counts against naive oracles") {
  for (double X : {0.5, 2.0, 10.0, 60.0}) {
    CHECK(count_B1(3, 4, 1.5, 0.5, X).count == b1_oracle(3, 4, 1.5, 0.5, X));
    CHECK(count_B1(3, 4, -1.0, 2.0, X).count == b1_oracle(3, 4, -1.0, 2.0, X));
    CHECK(count_B0(5, 0.5, X).count == b0_oracle(5, 0.5, X));
    CHECK(count_B0(5, 3.0, X * 10).count == b0_oracle(5, 3.0, X * 10));
  }
  for (double X : {1.0, 4.0, 20.0}) {
    const PerturbationSpec s(1.0, 0.3, 4);
    CHECK(count_B2(4, 1.0, X, s).count == b2_oracle(4, 1.0, X, 1.0, 0.3, 4));
    const PerturbationSpec t(1.0, 0.5, 8, Kind::nu);
    CHECK(count_B3(16, 1.0, X * 2, t).count == b3_oracle(16, 1.0, X * 2, 1.0, 0.5, 8));
  }
}

TEST_CASE("delta = 0 collapses B2 to the m-free count") {
  const PerturbationSpec z(1.0, 0.0, 4);
  const std::int64_t N = 5;
  const double X = 30.0;
  std::int64_t c = 0;
  for (std::int64_t n1 = N + 1; n1 <= 2 * N; ++n1)
    for (std::int64_t n2 = N + 1; n2 <= 2 * N; ++n2)
      for (std::int64_t n3 = N + 1; n3 <= 2 * N; ++n3)
        for (std::int64_t n4 = N + 1; n4 <= 2 * N; ++n4) {
          const double v = 5.0 / n1 - 5.0 / n2 - 5.0 / n3 + 5.0 / n4;
          if (std::abs(v) <= 1.0 / X) ++c;
        }
  CHECK(count_B2(N, 1.0, X, z).count == c);
}

TEST_CASE("endpoint sup equals full scan") {
  for (double delta : {0.1, 0.3, 0.9})
    for (double X : {1.0, 4.0, 16.0, 100.0}) {
      const PerturbationSpec s(1.0, delta, 4);
      CHECK(count_B2(4, 1.0, X, s, SupMode::endpoints).count == count_B2(4, 1.0, X, s, SupMode::full_scan).count);
      const PerturbationSpec t(1.5, delta, 8, Kind::nu);
      CHECK(count_B3(16, 1.0, X, t, SupMode::endpoints).count == count_B3(16, 1.0, X, t, SupMode::full_scan).count);
    }
}

TEST_CASE("permutation invariance") {
  for (double X : {3.0, 50.0}) {
    CHECK(b1_oracle(3, 3, 1.0, 1.0, X, true) == count_B1(3, 3, 1.0, 1.0, X).count);
    CHECK(b0_oracle(4, 2.0, X, true) == count_B0(4, 2.0, X).count);
  }
  // B2: swapping the pairs keeps the sup-distance
  const PerturbationSpec s(1.0, 0.4, 3);
  for (std::int64_t a = 4; a <= 6; ++a)
    for (std::int64_t b = 4; b <= 6; ++b)
      for (std::int64_t m1 = 4; m1 <= 6; ++m1)
        for (std::int64_t m2 = 4; m2 <= 6; ++m2)
          CHECK(std::abs(phi_pair(a, b, m1, s, 3, 1.0) - phi_pair(b, a, m2, s, 3, 1.0)) ==
                std::abs(phi_pair(b, a, m2, s, 3, 1.0) - phi_pair(a, b, m1, s, 3, 1.0)));
}

TEST_CASE("counts are nonincreasing in X") {
  const PerturbationSpec s(1.0, 0.5, 8);
  std::int64_t p1 = 1 << 30, p0 = p1, p2 = p1, p3 = p1;
  for (double X = 0.25; X < 1e5; X *= 2.0) {
    const auto c1 = count_B1(4, 4, 1.0, 0.5, X).count;
    const auto c0 = count_B0(6, 1.5, X).count;
    const auto c2 = count_B2(6, 1.0, X, s).count;
    const auto c3 = count_B3(32, 1.0, X, s).count;
    CHECK(c1 <= p1);
    CHECK(c0 <= p0);
    CHECK(c2 <= p2);
    CHECK(c3 <= p3);
    p1 = c1;
    p0 = c0;
    p2 = c2;
    p3 = c3;
  }
}

TEST_CASE("regime flag and budget") {
  const PerturbationSpec s(1.0, 0.5, 4);
  const auto in = count_B2(4, 1.0, 1.0, s);
  CHECK(in.in_regime);
  const auto out = count_B2(4, 1.0, 1e6, s);
  CHECK(!out.in_regime);
  CHECK(!out.warning.empty());
  CHECK_THROWS_AS(count_B0(300, 2.0, 1.0, Exec::parallel, 1e6), ResourceError);
}

TEST_CASE("dio_bound examples") {
  DioParams p;
  p.N = 16;
  p.X = 8.0;
  CHECK(dio_bound(DioKind::B3, p) == doctest::Approx(48.0));
  DioParams q;
  q.H = q.M = 2;
  q.X = 100.0;
  q.epsilon = 0.0;
  CHECK(dio_bound(DioKind::B1, q) == doctest::Approx(4.16));
  const auto r = dio_result(DioKind::B1, count_B1(2, 2, 1.0, 1.0, 100.0), q);
  CHECK(r.fitted_constant == doctest::Approx(6.0 / 4.16));
  DioParams b;
  b.N = 2;
  b.X = 100.0;
  b.epsilon = 0.0;
  CHECK(dio_bound(DioKind::B0, b) == doctest::Approx(4.16));
  CHECK(dio_bound(DioKind::B2, b) == doctest::Approx(4.16));
}

TEST_CASE("scenario families satisfy the double large sieve") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto one = regime_one_scenario(2, 4, 4, 50.0, 1.0, 1.0, 1.0, 0.3, seed);
    CHECK(one.K >= 1.0);
    const auto r1 = dls_check(one.family, one.points, one.K);
    CHECK(r1.ratio <= dls_constant(one.K));
    const auto two = regime_two_scenario(2, 4, 8, 50.0, 1.0, 1.0, 1.0, 0.3, seed);
    const auto r2 = dls_check(two.family, two.points, two.K);
    CHECK(r2.ratio <= dls_constant(two.K));
  }
}
