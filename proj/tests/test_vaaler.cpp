#include <cmath>
#include <numbers>

#include "doctest.h"
#include "pertlab/arith.hpp"
#include "pertlab/errors.hpp"
#include "pertlab/random.hpp"
#include "pertlab/vaaler.hpp"

using namespace pertlab;

namespace {

constexpr double kPi = std::numbers::pi;

// Fejer sum by direct summation over |h| <= H
double fejer_direct(double x, int H) {
  double s = 0.0;
  for (int h = -H; h <= H; ++h) s += (1.0 - std::abs(h) / (H + 1.0)) * std::cos(2.0 * kPi * h * x);
  return s / (2.0 * H + 2.0);
}

}  // namespace

TEST_CASE("vaaler_phi examples") {
  CHECK(vaaler_phi(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(vaaler_phi(-0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(vaaler_phi(0.0) == 1.0);
  CHECK_THROWS_AS(vaaler_phi(1.0), DomainError);
  CHECK_THROWS_AS(vaaler_phi(-1.5), DomainError);
}

TEST_CASE("Taylor branch joins the closed form") {
  const double t = 1e-4;
  const double closed = kPi * t * (1 - t) * std::cos(kPi * t) / std::sin(kPi * t) + t;
  CHECK(std::abs(vaaler_phi(t * (1 - 1e-12)) - closed) < 1e-13);
  CHECK(std::abs(vaaler_phi(5e-5) - vaaler_phi(-5e-5)) == 0.0);
}

TEST_CASE("coefficients are positive and decreasing") {
  for (int H : {1, 2, 10, 200}) {
    const VaalerPolynomial p(H);
    const auto& c = p.coefficients();
    for (std::size_t i = 0; i < c.size(); ++i) {
      CHECK(c[i] > 0.0);
      if (i > 0) CHECK(c[i] < c[i - 1]);
      const double phi = vaaler_phi((i + 1.0) / (H + 1.0));
      CHECK(phi > 0.0);
      CHECK(phi <= 1.0);
    }
  }
}

TEST_CASE("psi_approx examples") {
  CHECK(psi_approx(0.0, 7) == 0.0);
  CHECK(psi_approx(0.25, 1) == doctest::Approx(-1.0 / (2.0 * kPi)).epsilon(1e-14));
  CHECK(std::abs(psi_approx(0.5, 13)) < 1e-15);
}

TEST_CASE("error_majorant examples") {
  CHECK(error_majorant(0.0, 1) == doctest::Approx(0.5));
  CHECK(std::abs(error_majorant(0.5, 1)) < 1e-16);
  CHECK(std::abs(error_majorant(0.3, 10) - fejer_direct(0.3, 10)) < 1e-12);
  for (double x : {1e-9, 1e-7, 0.999999999, 2.0, -3.0000001})
    CHECK(std::abs(error_majorant(x, 50) - fejer_direct(x, 50)) < 1e-12);
}

TEST_CASE("approximation error stays under the majorant") {
  Rng rng(17);
  for (int i = 0; i < 20000; ++i) {
    const int H = static_cast<int>(rng.integer(1, 200));
    double x = rng.uniform();
    if (i % 7 == 0) x = i % 2 ? 1e-9 * rng.uniform() : 1.0 - 1e-9 * rng.uniform();
    const double pa = psi_approx(x, H);
    REQUIRE(std::abs(psi_frac(x) - pa) <= error_majorant(x, H) + 1e-12);
    REQUIRE(std::abs(pa) <= 1.0);
  }
}

TEST_CASE("majorant is periodic and even about 1/2") {
  Rng rng(23);
  for (int i = 0; i < 2000; ++i) {
    const int H = static_cast<int>(rng.integer(1, 200));
    const double x = rng.uniform();
    CHECK(std::abs(error_majorant(x + 1.0, H) - error_majorant(x, H)) < 1e-12);
    CHECK(std::abs(error_majorant(1.0 - x, H) - error_majorant(x, H)) < 1e-12);
    CHECK(error_majorant(x, H) >= 0.0);
  }
}
