#pragma once

// Brute-force counts of near-coincidences among monomials and perturbed
// rational functions, the bounds they are compared against, and the
// function families that feed the double large sieve.
//
//   B1: (h1,h2,m1,m2) with |h1^a m1^b - h2^a m2^b| / (H^a M^b) <= 1/X
//   B0: (n1..n4) with |n1^b + n2^b - n3^b - n4^b| / N^b <= 1/X
//   B2: (n1..n4) with sup_{m1,m2} |phi_{n1,n2}(m1) - phi_{n3,n4}(m2)| <= 1/X
//   B3: (n1,n2) with sup_{m1,m2} |psi_{n1}(m1) - psi_{n2}(m2)| <= 1/X
// where phi_{s,t}(m) = N^g/(s^g + mu(m)) - N^g/(t^g + mu(m)),
// psi_n(m) = N^g/(n^g + nu(m)) and mu(m) = nu(m) = delta m^{-beta}.
// The sup runs over integers m in (M, 2M].

#include <cstdint>
#include <string>

#include "pertlab/bilinear.hpp"
#include "pertlab/parallel.hpp"

namespace pertlab {

inline constexpr double kDioBudget = 5e9;
inline constexpr double kDioGuard = 1e-12;

enum class DioKind { B0, B1, B2, B3 };
std::string to_string(DioKind k);
DioKind parse_dio_kind(const std::string& s);

// mu(m) = delta m^{-beta} on (M, 2M]. For delta > 0 construction checks
// U = delta M^{-beta} <= 1, which gives 0 < mu(m) < U there.
struct PerturbationSpec {
  enum class Kind { mu, nu };

  PerturbationSpec(double beta, double delta, std::int64_t M, Kind kind = Kind::mu);

  double beta;
  double delta;
  std::int64_t M;
  Kind kind;

  double operator()(std::int64_t m) const;
  double U() const;  // delta M^{-beta}
};

enum class SupMode { endpoints, full_scan };

double phi_pair(std::int64_t ns, std::int64_t nt, std::int64_t m, const PerturbationSpec& spec,
                std::int64_t N, double gamma);
double psi_member(std::int64_t n, std::int64_t m, const PerturbationSpec& spec, std::int64_t N,
                  double gamma);

struct CountResult {
  std::int64_t count = 0;
  std::int64_t boundary = 0;  // tuples within kDioGuard of the threshold, on either side
  bool in_regime = true;
  std::string warning;
};

CountResult count_B1(std::int64_t H, std::int64_t M, double alpha, double beta, double X,
                     Exec exec = Exec::parallel, double budget = kDioBudget);
CountResult count_B0(std::int64_t N, double beta, double X, Exec exec = Exec::parallel,
                     double budget = kDioBudget);
// Outside X <= U^{-1} N^gamma the result carries a warning, never an error.
CountResult count_B2(std::int64_t N, double gamma, double X, const PerturbationSpec& spec,
                     SupMode mode = SupMode::endpoints, Exec exec = Exec::parallel,
                     double budget = kDioBudget);
CountResult count_B3(std::int64_t N, double gamma, double X, const PerturbationSpec& spec,
                     SupMode mode = SupMode::endpoints, Exec exec = Exec::parallel,
                     double budget = kDioBudget);

struct DioParams {
  std::int64_t H = 1;
  std::int64_t M = 1;
  std::int64_t N = 1;
  double X = 1.0;
  double epsilon = 0.1;
};

// B1: (HM)^{2+e} (1/(HM) + 1/X); B0, B2: N^{4+e} (1/N^2 + 1/X); B3: N^2 (1/N + 1/X).
double dio_bound(DioKind kind, const DioParams& p);

struct DioResult {
  DioKind kind = DioKind::B0;
  CountResult count;
  double bound = 0.0;
  double fitted_constant = 0.0;  // count / bound
  DioParams params;
};

DioResult dio_result(DioKind kind, const CountResult& c, const DioParams& p);

// Family {phi_{n1,n2} : n1, n2 ~ N} against the points
// y = X H^{-alpha} M^beta h^alpha m^{-beta}, h ~ H, m ~ M, with
// a(phi_{n1,n2}) = b(n1) conj(b(n2)) for seeded unimodular b and b(y) = 1.
// K is the smallest value (>= 1) giving osc(phi) < K/(4Y) on the tabulation.
DlsInstance regime_one_scenario(std::int64_t H, std::int64_t M, std::int64_t N, double X,
                                double alpha, double beta, double gamma, double delta,
                                std::uint64_t seed);

// Family {psi_n : n ~ N} with seeded unimodular a(psi_n) against the same
// points with seeded unimodular b(y).
DlsInstance regime_two_scenario(std::int64_t H, std::int64_t M, std::int64_t N, double X,
                                double alpha, double beta, double gamma, double delta,
                                std::uint64_t seed);

}  // namespace pertlab
