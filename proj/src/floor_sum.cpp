#include "pertlab/floor_sum.hpp"

#include <cmath>
#include <string>

#include "pertlab/errors.hpp"

namespace pertlab {

namespace {

void require_x(std::int64_t x, std::int64_t budget, const char* advice) {
  if (x < 1) throw DomainError("x must be >= 1, got " + std::to_string(x));
  if (x > budget)
    throw ResourceError("x = " + std::to_string(x) + " exceeds the budget " +
                        std::to_string(budget) + advice);
}

}  // namespace

double s_lambda_direct(std::int64_t x, const MangoldtTable& table, Exec exec) {
  if (x < 1) throw DomainError("x must be >= 1");
  if (table.lo() != 0 || table.hi() < x)
    throw StructuralError("s_lambda_direct: table must cover (0, x]");
  return par::compensated_sum<double>(
      static_cast<std::size_t>(x),
      [&](std::size_t i) {
        const std::int64_t d = x / (static_cast<std::int64_t>(i) + 1);
        return d >= 1 ? table(d) : 0.0;
      },
      exec);
}

double s_lambda_direct(std::int64_t x, std::int64_t budget, Exec exec) {
  require_x(x, budget, "; use blocked mode");
  return s_lambda_direct(x, sieve_mangoldt(x, budget, exec), exec);
}

BlockedSum s_lambda_blocked(std::int64_t x, std::int64_t budget, Exec exec) {
  require_x(x, budget, "");
  const auto n0 = static_cast<std::int64_t>(integer_root(static_cast<std::uint64_t>(x), 2));
  const std::int64_t dmax = x / (n0 + 1);

  const double small_n = par::compensated_sum<double>(
      static_cast<std::size_t>(n0),
      [&](std::size_t i) {
        return mangoldt_point(static_cast<std::uint64_t>(x / (static_cast<std::int64_t>(i) + 1)));
      },
      exec, 1024);

  double small_d = 0.0;
  std::int64_t blocks = n0;
  if (dmax >= 1) {
    const auto table = sieve_mangoldt(dmax, kDefaultTableCapacity, exec);
    small_d = par::compensated_sum<double>(
        static_cast<std::size_t>(dmax),
        [&](std::size_t i) {
          const std::int64_t d = static_cast<std::int64_t>(i) + 1;
          const std::int64_t count = x / d - std::max(x / (d + 1), n0);
          return count > 0 ? table(d) * static_cast<double>(count) : 0.0;
        },
        exec);
    blocks += dmax;
  }
  return {small_n + small_d, blocks};
}

double main_constant_tail(std::int64_t T) {
  if (T < 2) throw DomainError("main_constant needs T >= 2");
  const double t = static_cast<double>(T);
  return (std::log(t) + 1.0) / t;
}

MainConstant main_constant(std::int64_t T, std::int64_t capacity, Exec exec) {
  const double tail = main_constant_tail(T);
  if (T > capacity)
    throw ResourceError("main_constant: T = " + std::to_string(T) + " exceeds the sieve budget " +
                        std::to_string(capacity));
  std::vector<double> partial;
  for_each_segment(0, T, kDefaultSegmentLength, [&](const MangoldtTable& seg) {
    const std::int64_t lo = seg.lo();
    partial.push_back(par::compensated_sum<double>(
        seg.size(),
        [&](std::size_t i) {
          const double v = seg.values()[i];
          if (v == 0.0) return 0.0;
          const double d = static_cast<double>(lo + 1 + static_cast<std::int64_t>(i));
          return v / (d * (d + 1.0));
        },
        exec));
  });
  return {T, par::pairwise_reduce(std::move(partial)), tail};
}

double frak_s_range(double x, std::int64_t lo, std::int64_t hi, double delta, Exec exec) {
  if (delta < 0.0) throw DomainError("delta must be >= 0");
  if (lo < 0) lo = 0;
  if (hi <= lo) return 0.0;
  const auto table = lo == 0 ? sieve_mangoldt(hi, kDefaultTableCapacity, exec)
                             : segment_sieve(lo, hi, kDefaultTableCapacity, exec);
  return par::compensated_sum<double>(
      table.size(),
      [&](std::size_t i) {
        const double v = table.values()[i];
        if (v == 0.0) return 0.0;
        const double d = static_cast<double>(lo + 1 + static_cast<std::int64_t>(i));
        return v * psi_frac(x / (d + delta));
      },
      exec);
}

double frak_s(double x, std::int64_t D, double delta, Exec exec) {
  if (D < 1) throw DomainError("frak_s needs D >= 1");
  return frak_s_range(x, D, 2 * D, delta, exec);
}

double r_delta(double x, double E, double delta, Exec exec) {
  if (E < 1.0) throw DomainError("r_delta needs E >= 1");
  const auto lo = static_cast<std::int64_t>(std::floor(E));
  const auto hi = static_cast<std::int64_t>(std::floor(x / E));
  return frak_s_range(x, lo, hi, delta, exec);
}

DyadicRecombination r_delta_dyadic(double x, double E, double delta, Exec exec) {
  if (E < 1.0) throw DomainError("r_delta needs E >= 1");
  const auto lo = static_cast<std::int64_t>(std::floor(E));
  std::int64_t top = static_cast<std::int64_t>(std::floor(x / E));
  DyadicRecombination out;
  std::vector<double> parts;
  while (top > lo) {
    const std::int64_t half = top / 2;
    if (half <= lo || half < 1) {
      const double rest = frak_s_range(x, lo, top, delta, exec);
      parts.push_back(rest);
      out.boundary += rest;
      break;
    }
    parts.push_back(frak_s(x, half, delta, exec));
    ++out.pieces;
    if (top % 2 == 1) {
      const double t = mangoldt_point(static_cast<std::uint64_t>(top)) *
                       psi_frac(x / (static_cast<double>(top) + delta));
      parts.push_back(t);
      out.boundary += t;
    }
    top = half;
  }
  out.value = par::pairwise_reduce(std::move(parts));
  return out;
}

ErrorCurve error_curve(const std::vector<std::int64_t>& grid, const MainConstant& C, Exec exec) {
  ErrorCurve out;
  out.C = C.value;
  out.C_tail = C.tail_bound;
  for (std::int64_t x : grid) {
    const double xd = static_cast<double>(x);
    const double S = s_lambda_blocked(x, kBlockedBudget, exec).value;
    out.x.push_back(xd);
    out.S.push_back(S);
    out.E.push_back(S - xd * C.value);
    out.band.push_back(xd * C.tail_bound);
    out.method.push_back("blocked");
  }
  return out;
}

std::vector<std::int64_t> geometric_grid(double lo, double hi, int n) {
  if (n < 2 || lo <= 0.0 || hi <= lo) throw DomainError("geometric_grid needs n >= 2 and 0 < lo < hi");
  std::vector<std::int64_t> out;
  const double step = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i)
    out.push_back(static_cast<std::int64_t>(std::llround(lo * std::exp(step * i))));
  return out;
}

SlopeFit fit_slope(const std::vector<double>& xs, const std::vector<double>& Es,
                   const std::vector<double>& bands) {
  if (xs.size() != Es.size() || xs.size() != bands.size())
    throw StructuralError("fit_slope: length mismatch");
  SlopeFit fit;
  for (std::size_t i = 0; i < xs.size(); ++i)
    (std::abs(Es[i]) > bands[i] && xs[i] > 0.0 ? fit.used : fit.excluded).push_back(i);
  if (fit.used.size() < 3)
    throw FitError("fit_slope: only " + std::to_string(fit.used.size()) +
                   " usable points (need 3)");
  double mu = 0.0, mv = 0.0;
  for (auto i : fit.used) {
    mu += std::log(xs[i]);
    mv += std::log(std::abs(Es[i]));
  }
  const double k = static_cast<double>(fit.used.size());
  mu /= k;
  mv /= k;
  double suu = 0.0, suv = 0.0;
  for (auto i : fit.used) {
    const double u = std::log(xs[i]) - mu;
    suu += u * u;
    suv += u * (std::log(std::abs(Es[i])) - mv);
  }
  if (suu == 0.0) throw FitError("fit_slope: all usable x coincide");
  fit.slope = suv / suu;
  fit.intercept = mv - fit.slope * mu;
  return fit;
}

}  // namespace pertlab
