#pragma once

// The perturbed triple sum
//   S = sum_{h~H} sum_{m~M} sum_{n~N} a(h,m) b(n) e(X M^b N^g H^{-a} h^a / (m^b n^g + delta))
// over dyadic blocks A < a <= 2A, the literature bounds it is compared
// against, and the scenario instances coming from the floor-sum argument.

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pertlab/exponent.hpp"
#include "pertlab/parallel.hpp"
#include "pertlab/report.hpp"

namespace pertlab {

class VaughanCoefficients;

inline constexpr double kExpSumBudget = 1e8;
inline constexpr double kPhaseGuard = 70368744177664.0;  // 2^46

enum class IndexMode { rectangle, hyperbola };

enum class BoundKind { thm1, fi89, rs06, sw, lwy };
std::string to_string(BoundKind k);
BoundKind parse_bound_kind(const std::string& s);

struct ExpSumInstance {
  std::int64_t H = 1;
  std::int64_t M = 1;
  std::int64_t N = 1;
  double X = 2.0;
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
  double delta = 0.0;
  double K = 1.0;
  double epsilon = 0.05;
  // Empty generators mean coefficient 1. Generators are called concurrently.
  std::function<std::complex<double>(std::int64_t, std::int64_t)> coeff_a;
  std::function<std::complex<double>(std::int64_t)> coeff_b;
  // hyperbola mode keeps only clip_lo < m n <= clip_hi
  IndexMode mode = IndexMode::rectangle;
  std::int64_t clip_lo = 0;
  std::int64_t clip_hi = 0;
  std::string label;
  std::uint64_t seed = 0;

  double terms() const { return static_cast<double>(H) * static_cast<double>(M) * static_cast<double>(N); }
  // X <= K M^b N^g / (8 delta); always true for delta = 0
  bool thm1_regime() const;
  double phase(std::int64_t h, std::int64_t m, std::int64_t n) const;
};

// Smallest K >= 1 putting the instance in the thm1 regime.
double regime_min_K(const ExpSumInstance& inst);

std::complex<double> eval_exp_sum(const ExpSumInstance& inst, double budget = kExpSumBudget,
                                  Exec exec = Exec::parallel);

// Right-hand side of the selected bound with implied constant 1 and the
// instance's epsilon. Throws RejectedInstance outside the bound's regime.
double bound_value(const ExpSumInstance& inst, BoundKind which,
                   const std::optional<ExponentPair>& pair = std::nullopt);

// Instance parameters as report params.
void echo_params(const ExpSumInstance& inst, VerificationReport& r);

struct ScanResult {
  std::vector<VerificationReport> reports;
  double max_ratio = 0.0;
  std::size_t argmax = 0;
};

ScanResult ratio_scan(const std::vector<ExpSumInstance>& grid, BoundKind which,
                      const std::optional<ExponentPair>& pair = std::nullopt,
                      Exec exec = Exec::parallel);

// Seeded unimodular coefficients, safe for concurrent calls.
void randomize_coefficients(ExpSumInstance& inst, std::uint64_t seed);

// Instance for the h-part of the type II sum of frak_S_delta(x, D): alpha =
// beta = gamma = 1, X = x Hp/(MN), so the phase is h x/(mn + delta),
// a(h,m) = (Hp/h) Phi(h/(Hmax+1)) a3(m)/sup|a3|, b(n) = a4(n)/sup|a4|.
// Requires D/4 <= MN <= 4D and 1 <= Hp, 2 Hp <= Hmax so that h/(Hmax+1) < 1.
ExpSumInstance build_floor_scenario(const VaughanCoefficients& coeffs, double x, double delta,
                                    std::int64_t Hp, std::int64_t Hmax, std::int64_t M,
                                    std::int64_t N, IndexMode mode = IndexMode::rectangle);
ExpSumInstance build_floor_scenario(double x, std::int64_t D, double delta, std::int64_t Hp,
                                    std::int64_t Hmax, std::int64_t M, std::int64_t N,
                                    IndexMode mode = IndexMode::rectangle);

}  // namespace pertlab
