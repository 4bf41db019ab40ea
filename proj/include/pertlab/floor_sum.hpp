#pragma once

// S(x) = sum_{n <= x} Lambda([x/n]), its main-term constant
// C = sum_{d >= 1} Lambda(d) / (d (d+1)), the dyadic sums
// frak_S_delta(x, D) = sum_{D < d <= 2D} Lambda(d) psi(x/(d+delta)),
// and the error term E(x) = S(x) - C x with a log-log slope fit.

#include <cstdint>
#include <string>
#include <vector>

#include "pertlab/arith.hpp"
#include "pertlab/parallel.hpp"

namespace pertlab {

inline constexpr std::int64_t kDirectBudget = 10'000'000;
inline constexpr std::int64_t kBlockedBudget = 1'000'000'000'000;

// Literal sum over n <= x with a sieve up to x.
double s_lambda_direct(std::int64_t x, std::int64_t budget = kDirectBudget,
                       Exec exec = Exec::parallel);
// Same, reading Lambda from `table`, which must cover (0, x].
double s_lambda_direct(std::int64_t x, const MangoldtTable& table, Exec exec = Exec::parallel);

struct BlockedSum {
  double value = 0.0;
  std::int64_t blocks = 0;  // distinct values of [x/n] visited
};

// Split at n0 = floor(sqrt x): n <= n0 reads Lambda([x/n]) pointwise, and each
// d <= x/(n0+1) is weighted by #{n > n0 : [x/n] = d}.
BlockedSum s_lambda_blocked(std::int64_t x, std::int64_t budget = kBlockedBudget,
                            Exec exec = Exec::parallel);

struct MainConstant {
  std::int64_t T = 0;
  double value = 0.0;       // sum_{d <= T} Lambda(d) / (d (d+1))
  double tail_bound = 0.0;  // >= sum_{d > T} Lambda(d) / (d (d+1))
};

// The tail: Lambda(d) <= log d and d(d+1) > d^2, and log t / t^2 decreases
// for t >= sqrt(e), so for T >= 2
//   sum_{d > T} Lambda(d)/(d(d+1)) <= int_T^oo log t / t^2 dt = (log T + 1) / T.
double main_constant_tail(std::int64_t T);

// Streams the sieve in segments; memory is O(sqrt T + segment).
MainConstant main_constant(std::int64_t T, std::int64_t capacity = kDefaultTableCapacity * 10,
                           Exec exec = Exec::parallel);

double frak_s(double x, std::int64_t D, double delta, Exec exec = Exec::parallel);

// sum_{lo < d <= hi} Lambda(d) psi(x/(d+delta))
double frak_s_range(double x, std::int64_t lo, std::int64_t hi, double delta,
                    Exec exec = Exec::parallel);

// R_delta(x) = sum_{E < d <= x/E} Lambda(d) psi(x/(d+delta))
double r_delta(double x, double E, double delta, Exec exec = Exec::parallel);

struct DyadicRecombination {
  double value = 0.0;
  std::int64_t pieces = 0;     // frak_s blocks (D, 2D]
  double boundary = 0.0;       // single terms at odd block tops and the last partial block
};

// R_delta rebuilt from dyadic blocks: with b_j = floor(hi / 2^j), each
// (b_{j+1}, b_j] is frak_s(x, b_{j+1}) plus the term d = b_j when b_j is odd,
// down to the partial block above floor(E).
DyadicRecombination r_delta_dyadic(double x, double E, double delta, Exec exec = Exec::parallel);

struct ErrorCurve {
  std::vector<double> x;
  std::vector<double> S;
  std::vector<double> E;
  std::vector<double> band;  // x * tail_bound of the constant used
  std::vector<std::string> method;
  double C = 0.0;
  double C_tail = 0.0;
};

ErrorCurve error_curve(const std::vector<std::int64_t>& grid, const MainConstant& C,
                       Exec exec = Exec::parallel);

// n geometric points from lo to hi, rounded to integers.
std::vector<std::int64_t> geometric_grid(double lo, double hi, int n);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<std::size_t> used;
  std::vector<std::size_t> excluded;  // |E| <= band
};

// Least squares of log|E| against log x over the points with |E| > band.
// Throws FitError when fewer than 3 points remain.
SlopeFit fit_slope(const std::vector<double>& xs, const std::vector<double>& Es,
                   const std::vector<double>& bands);

}  // namespace pertlab
