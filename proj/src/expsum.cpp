#include "pertlab/expsum.hpp"

#include <cmath>
#include <memory>

#include "pertlab/errors.hpp"
#include "pertlab/phase.hpp"
#include "pertlab/random.hpp"
#include "pertlab/vaaler.hpp"
#include "pertlab/vaughan.hpp"

namespace pertlab {

std::string to_string(BoundKind k) {
  switch (k) {
    case BoundKind::thm1: return "thm1";
    case BoundKind::fi89: return "fi89";
    case BoundKind::rs06: return "rs06";
    case BoundKind::sw: return "sw";
    case BoundKind::lwy: return "lwy";
  }
  return "?";
}

BoundKind parse_bound_kind(const std::string& s) {
  for (auto k : {BoundKind::thm1, BoundKind::fi89, BoundKind::rs06, BoundKind::sw, BoundKind::lwy})
    if (to_string(k) == s) return k;
  throw ParseError("unknown bound '" + s + "' (thm1, fi89, rs06, sw, lwy)");
}

bool ExpSumInstance::thm1_regime() const {
  if (delta <= 0.0) return true;
  return X <= K * std::pow(static_cast<double>(M), beta) * std::pow(static_cast<double>(N), gamma) /
                  (8.0 * delta);
}

double ExpSumInstance::phase(std::int64_t h, std::int64_t m, std::int64_t n) const {
  const double scale = X * std::pow(static_cast<double>(M), beta) *
                       std::pow(static_cast<double>(N), gamma) /
                       std::pow(static_cast<double>(H), alpha);
  return scale * std::pow(static_cast<double>(h), alpha) /
         (std::pow(static_cast<double>(m), beta) * std::pow(static_cast<double>(n), gamma) + delta);
}

double regime_min_K(const ExpSumInstance& inst) {
  if (inst.delta <= 0.0) return 1.0;
  const double need = 8.0 * inst.delta * inst.X /
                      (std::pow(static_cast<double>(inst.M), inst.beta) *
                       std::pow(static_cast<double>(inst.N), inst.gamma));
  // a relative margin keeps the rounded check X <= K M^b N^g/(8 delta) true
  return std::max(1.0, need * (1.0 + 1e-12));
}

std::complex<double> eval_exp_sum(const ExpSumInstance& inst, double budget, Exec exec) {
  if (inst.H < 1 || inst.M < 1 || inst.N < 1)
    throw DomainError("H, M, N must be positive integers");
  if (inst.delta < 0.0) throw DomainError("delta must be >= 0");
  if (inst.terms() > budget)
    throw ResourceError("HMN = " + format_double(inst.terms()) + " exceeds the term budget " +
                        format_double(budget));
  if (std::pow(2.0, inst.alpha) * inst.X > kPhaseGuard)
    throw RejectedInstance("phase 2^alpha X exceeds 2^46; double-precision reduction unreliable");

  const double scale = inst.X * std::pow(static_cast<double>(inst.M), inst.beta) *
                       std::pow(static_cast<double>(inst.N), inst.gamma) /
                       std::pow(static_cast<double>(inst.H), inst.alpha);
  const auto N = static_cast<std::size_t>(inst.N);
  std::vector<double> ng(N);
  std::vector<std::complex<double>> b(N);
  for (std::size_t j = 0; j < N; ++j) {
    const std::int64_t n = inst.N + 1 + static_cast<std::int64_t>(j);
    ng[j] = std::pow(static_cast<double>(n), inst.gamma);
    b[j] = inst.coeff_b ? inst.coeff_b(n) : 1.0;
  }
  const bool clip = inst.mode == IndexMode::hyperbola;
  const auto rows = static_cast<std::size_t>(inst.H * inst.M);
  const std::size_t chunk = std::max<std::size_t>(1, par::kDefaultChunk / N);

  return par::compensated_sum<std::complex<double>>(
      rows,
      [&](std::size_t r) -> std::complex<double> {
        const std::int64_t h = inst.H + 1 + static_cast<std::int64_t>(r) / inst.M;
        const std::int64_t m = inst.M + 1 + static_cast<std::int64_t>(r) % inst.M;
        const std::complex<double> a = inst.coeff_a ? inst.coeff_a(h, m) : 1.0;
        if (a == 0.0) return 0.0;
        const double top = scale * std::pow(static_cast<double>(h), inst.alpha);
        const double mb = std::pow(static_cast<double>(m), inst.beta);
        par::Neumaier<std::complex<double>> acc;
        for (std::size_t j = 0; j < N; ++j) {
          if (clip) {
            const std::int64_t mn = m * (inst.N + 1 + static_cast<std::int64_t>(j));
            if (mn <= inst.clip_lo || mn > inst.clip_hi) continue;
          }
          if (b[j] == 0.0) continue;
          acc.add(b[j] * unit_phase(top / (mb * ng[j] + inst.delta)));
        }
        return a * acc.value();
      },
      exec, chunk);
}

double bound_value(const ExpSumInstance& inst, BoundKind which,
                   const std::optional<ExponentPair>& pair) {
  const double H = static_cast<double>(inst.H);
  const double M = static_cast<double>(inst.M);
  const double N = static_cast<double>(inst.N);
  const double X = inst.X;
  const double K = inst.K;
  const double eps = inst.epsilon;
  const double hmn = std::pow(H * M * N, 1.0 + eps);
  switch (which) {
    case BoundKind::thm1:
      if (K < 1.0) throw RejectedInstance("thm1 needs K >= 1");
      if (!inst.thm1_regime())
        throw RejectedInstance("thm1 regime violated: X <= K M^beta N^gamma / (8 delta) fails (X = " +
                               format_double(X) + ", K = " + format_double(K) +
                               ", delta = " + format_double(inst.delta) + ")");
      return hmn * (std::pow(K * X / (H * M * N * N), 0.25) + std::pow(K * K / (H * M), 0.25) +
                    std::sqrt(K / N) + K / std::sqrt(X));
    case BoundKind::fi89:
      return hmn * (std::pow(X / (H * M * N * N), 0.25) + std::pow(N, -0.3) +
                    std::pow(H * M, -0.25) + std::pow(N, 0.1) / std::pow(X, 0.25));
    case BoundKind::rs06:
      return hmn * (std::pow(X / (H * M * N * N), 0.25) + std::pow(H * M, -0.25) +
                    std::pow(N, -0.5) + std::pow(X, -0.5));
    case BoundKind::sw:
      return hmn * (std::pow(std::pow(X, 4) / (std::pow(H * M, 4) * std::pow(N, 11)), 1.0 / 26.0) +
                    std::pow(X / (H * M * N * N), 0.25) + std::pow(N, -7.0 / 18.0) +
                    std::pow(H * M, -0.25) + std::pow(X, -0.5));
    case BoundKind::lwy: {
      if (!pair) throw DomainError("lwy bound needs an exponent pair");
      if (H > std::pow(M, inst.beta - 1.0) * std::pow(N, inst.gamma))
        throw RejectedInstance("lwy regime violated: H <= M^(beta-1) N^gamma fails");
      if (inst.delta < 0.0 || (eps > 0.0 && inst.delta > 1.0 / eps))
        throw RejectedInstance("lwy regime violated: 0 <= delta <= 1/epsilon fails");
      const double k = pair->kappa.to_double();
      const double l = pair->lambda.to_double();
      const double first = std::pow(std::pow(X, k) * std::pow(H, 2 + k) * std::pow(M, 2 + k) *
                                        std::pow(N, 1 + k + l),
                                    1.0 / (2 + 2 * k));
      return (first + H * M * std::sqrt(N) + std::sqrt(H * M) * N + H * M * N / std::sqrt(X)) *
             std::pow(X, eps);
    }
  }
  throw DomainError("unknown bound");
}

void echo_params(const ExpSumInstance& inst, VerificationReport& r) {
  r.param("H", inst.H);
  r.param("M", inst.M);
  r.param("N", inst.N);
  r.param("X", inst.X);
  r.param("alpha", inst.alpha);
  r.param("beta", inst.beta);
  r.param("gamma", inst.gamma);
  r.param("delta", inst.delta);
  r.param("K", inst.K);
  r.param("eps", inst.epsilon);
  if (inst.mode == IndexMode::hyperbola) {
    r.param("clip_lo", inst.clip_lo);
    r.param("clip_hi", inst.clip_hi);
  }
  if (!inst.label.empty()) r.param("label", inst.label);
}

ScanResult ratio_scan(const std::vector<ExpSumInstance>& grid, BoundKind which,
                      const std::optional<ExponentPair>& pair, Exec exec) {
  ScanResult out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& inst = grid[i];
    VerificationReport r;
    r.suite = "expsum";
    r.which = to_string(which);
    r.seed = inst.seed;
    echo_params(inst, r);
    const double rhs = bound_value(inst, which, pair);
    const double lhs = std::abs(eval_exp_sum(inst, kExpSumBudget, exec));
    r.set_sides(lhs, rhs);
    r.pass = lhs <= inst.terms();
    if (i == 0 || r.ratio > out.max_ratio) {
      out.max_ratio = r.ratio;
      out.argmax = i;
    }
    out.reports.push_back(std::move(r));
  }
  return out;
}

void randomize_coefficients(ExpSumInstance& inst, std::uint64_t seed) {
  inst.seed = seed;
  inst.coeff_a = [seed](std::int64_t h, std::int64_t m) {
    return hashed_unimodular(seed, static_cast<std::uint64_t>(h), static_cast<std::uint64_t>(m));
  };
  inst.coeff_b = [seed](std::int64_t n) {
    return hashed_unimodular(seed ^ 0x5bd1e995ULL, static_cast<std::uint64_t>(n), 1);
  };
}

ExpSumInstance build_floor_scenario(const VaughanCoefficients& coeffs, double x, double delta,
                                    std::int64_t Hp, std::int64_t Hmax, std::int64_t M,
                                    std::int64_t N, IndexMode mode) {
  const std::int64_t D = coeffs.D();
  if (M < 1 || N < 1) throw StructuralError("M and N must be positive");
  if (4 * M * N < D || M * N > 4 * D)
    throw StructuralError("M N = " + std::to_string(M * N) + " is not within a factor 4 of D = " +
                          std::to_string(D));
  if (Hp < 1 || 2 * Hp > Hmax)
    throw StructuralError("need 1 <= Hp and 2 Hp <= Hmax so that h / (Hmax+1) < 1");
  if (delta < 0.0) throw DomainError("delta must be >= 0");

  auto a3 = std::make_shared<std::vector<double>>(static_cast<std::size_t>(M));
  auto a4 = std::make_shared<std::vector<double>>(static_cast<std::size_t>(N));
  double sup3 = 0.0, sup4 = 0.0;
  for (std::int64_t m = M + 1; m <= 2 * M; ++m) {
    (*a3)[static_cast<std::size_t>(m - M - 1)] = coeffs.alpha(3, m);
    sup3 = std::max(sup3, std::abs(coeffs.alpha(3, m)));
  }
  for (std::int64_t n = N + 1; n <= 2 * N; ++n) {
    (*a4)[static_cast<std::size_t>(n - N - 1)] = coeffs.alpha(4, n);
    sup4 = std::max(sup4, std::abs(coeffs.alpha(4, n)));
  }
  if (sup3 > 0.0)
    for (auto& v : *a3) v /= sup3;
  if (sup4 > 0.0)
    for (auto& v : *a4) v /= sup4;

  auto weight = std::make_shared<std::vector<double>>(static_cast<std::size_t>(Hp));
  for (std::int64_t h = Hp + 1; h <= 2 * Hp; ++h)
    (*weight)[static_cast<std::size_t>(h - Hp - 1)] =
        static_cast<double>(Hp) / static_cast<double>(h) *
        vaaler_phi(static_cast<double>(h) / static_cast<double>(Hmax + 1));

  ExpSumInstance inst;
  inst.H = Hp;
  inst.M = M;
  inst.N = N;
  inst.alpha = inst.beta = inst.gamma = 1.0;
  inst.delta = delta;
  inst.X = x * static_cast<double>(Hp) / (static_cast<double>(M) * static_cast<double>(N));
  inst.K = 1.0;
  inst.K = regime_min_K(inst);
  inst.mode = mode;
  inst.clip_lo = D;
  inst.clip_hi = 2 * D;
  inst.label = "floor";
  inst.coeff_a = [weight, a3, Hp, M](std::int64_t h, std::int64_t m) -> std::complex<double> {
    return (*weight)[static_cast<std::size_t>(h - Hp - 1)] * (*a3)[static_cast<std::size_t>(m - M - 1)];
  };
  inst.coeff_b = [a4, N](std::int64_t n) -> std::complex<double> {
    return (*a4)[static_cast<std::size_t>(n - N - 1)];
  };
  return inst;
}

ExpSumInstance build_floor_scenario(double x, std::int64_t D, double delta, std::int64_t Hp,
                                    std::int64_t Hmax, std::int64_t M, std::int64_t N,
                                    IndexMode mode) {
  return build_floor_scenario(VaughanCoefficients(D), x, delta, Hp, Hmax, M, N, mode);
}

}  // namespace pertlab
