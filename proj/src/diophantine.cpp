#include "pertlab/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "pertlab/errors.hpp"
#include "pertlab/random.hpp"

namespace pertlab {

namespace {

void require_budget(double work, double budget, const std::string& what) {
  if (work > budget)
    throw ResourceError(what + ": " + format_double(work) + " comparisons exceed the budget " +
                        format_double(budget));
}

// Counts pairs (i, j) over `values` with |v_i - v_j| / scale <= 1/X, and the
// pairs whose distance lies within the guard band of the threshold. The raw
// difference is taken first so integer-valued ties stay exact.
CountResult count_close_pairs(const std::vector<double>& values, double scale, double X,
                              Exec exec) {
  const double thr = 1.0 / X;
  const std::size_t n = values.size();
  CountResult out;
  std::vector<std::int64_t> hit(n), edge(n);
  par::for_each_index(
      n,
      [&](std::size_t i) {
        std::int64_t c = 0, e = 0;
        for (std::size_t j = 0; j < n; ++j) {
          const double d = std::abs(values[i] - values[j]) / scale;
          if (d <= thr) ++c;
          if (std::abs(d - thr) <= kDioGuard) ++e;
        }
        hit[i] = c;
        edge[i] = e;
      },
      exec);
  for (std::size_t i = 0; i < n; ++i) {
    out.count += hit[i];
    out.boundary += edge[i];
  }
  return out;
}

// Same, for intervals [lo, hi] with sup-distance max(hi_i - lo_j, hi_j - lo_i).
CountResult count_close_ranges(const std::vector<double>& lo, const std::vector<double>& hi,
                               double X, Exec exec) {
  const double thr = 1.0 / X;
  const std::size_t n = lo.size();
  CountResult out;
  std::vector<std::int64_t> hit(n), edge(n);
  par::for_each_index(
      n,
      [&](std::size_t i) {
        std::int64_t c = 0, e = 0;
        for (std::size_t j = 0; j < n; ++j) {
          const double d = std::max(hi[i] - lo[j], hi[j] - lo[i]);
          if (d <= thr) ++c;
          if (std::abs(d - thr) <= kDioGuard) ++e;
        }
        hit[i] = c;
        edge[i] = e;
      },
      exec);
  for (std::size_t i = 0; i < n; ++i) {
    out.count += hit[i];
    out.boundary += edge[i];
  }
  return out;
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) throw DomainError(std::string(name) + " must be positive");
}

// min and max of f over the m-range, at the endpoints or over every m
template <class F>
std::pair<double, double> m_extent(const PerturbationSpec& spec, SupMode mode, F&& f) {
  if (mode == SupMode::endpoints) {
    const double a = f(spec.M + 1);
    const double b = f(2 * spec.M);
    return {std::min(a, b), std::max(a, b)};
  }
  double lo = f(spec.M + 1), hi = lo;
  for (std::int64_t m = spec.M + 2; m <= 2 * spec.M; ++m) {
    const double v = f(m);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

void note_regime(CountResult& r, double X, const PerturbationSpec& spec, std::int64_t N,
                 double gamma) {
  if (spec.delta <= 0.0) return;
  const double limit = std::pow(static_cast<double>(N), gamma) / spec.U();
  if (X > limit) {
    r.in_regime = false;
    r.warning = "outside X <= U^{-1} N^gamma (X = " + format_double(X) +
                ", limit = " + format_double(limit) + "); count reported only";
  }
}

}  // namespace

std::string to_string(DioKind k) {
  switch (k) {
    case DioKind::B0: return "B0";
    case DioKind::B1: return "B1";
    case DioKind::B2: return "B2";
    case DioKind::B3: return "B3";
  }
  return "?";
}

DioKind parse_dio_kind(const std::string& s) {
  for (auto k : {DioKind::B0, DioKind::B1, DioKind::B2, DioKind::B3})
    if (to_string(k) == s) return k;
  throw ParseError("unknown count '" + s + "' (B0, B1, B2, B3)");
}

PerturbationSpec::PerturbationSpec(double b, double d, std::int64_t m, Kind k)
    : beta(b), delta(d), M(m), kind(k) {
  require_positive(beta, "beta");
  if (delta < 0.0) throw DomainError("delta must be >= 0");
  if (M < 1) throw DomainError("M must be >= 1");
  if (delta > 0.0 && U() > 1.0)
    throw DomainError("perturbation bound U = delta M^{-beta} = " + format_double(U()) +
                      " exceeds 1");
}

double PerturbationSpec::operator()(std::int64_t m) const {
  return delta == 0.0 ? 0.0 : delta * std::pow(static_cast<double>(m), -beta);
}

double PerturbationSpec::U() const { return delta * std::pow(static_cast<double>(M), -beta); }

double phi_pair(std::int64_t ns, std::int64_t nt, std::int64_t m, const PerturbationSpec& spec,
                std::int64_t N, double gamma) {
  const double ng = std::pow(static_cast<double>(N), gamma);
  const double mu = spec(m);
  return ng / (std::pow(static_cast<double>(ns), gamma) + mu) -
         ng / (std::pow(static_cast<double>(nt), gamma) + mu);
}

double psi_member(std::int64_t n, std::int64_t m, const PerturbationSpec& spec, std::int64_t N,
                  double gamma) {
  return std::pow(static_cast<double>(N), gamma) /
         (std::pow(static_cast<double>(n), gamma) + spec(m));
}

CountResult count_B1(std::int64_t H, std::int64_t M, double alpha, double beta, double X,
                     Exec exec, double budget) {
  if (H < 1 || M < 1) throw DomainError("H and M must be >= 1");
  if (alpha == 0.0 || beta == 0.0) throw DomainError("alpha and beta must be nonzero");
  require_positive(X, "X");
  const double hm = static_cast<double>(H) * static_cast<double>(M);
  require_budget(hm * hm, budget, "count_B1");
  const double scale = std::pow(static_cast<double>(H), alpha) * std::pow(static_cast<double>(M), beta);
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(H * M));
  for (std::int64_t h = H + 1; h <= 2 * H; ++h)
    for (std::int64_t m = M + 1; m <= 2 * M; ++m)
      v.push_back(std::pow(static_cast<double>(h), alpha) * std::pow(static_cast<double>(m), beta));
  return count_close_pairs(v, scale, X, exec);
}

CountResult count_B0(std::int64_t N, double beta, double X, Exec exec, double budget) {
  if (N < 1) throw DomainError("N must be >= 1");
  if (beta == 0.0 || beta == 1.0) throw DomainError("beta must differ from 0 and 1");
  require_positive(X, "X");
  const double n = static_cast<double>(N);
  require_budget(n * n * n * n, budget, "count_B0");
  const double scale = std::pow(n, beta);
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(N * N));
  for (std::int64_t a = N + 1; a <= 2 * N; ++a)
    for (std::int64_t b = N + 1; b <= 2 * N; ++b)
      v.push_back(std::pow(static_cast<double>(a), beta) + std::pow(static_cast<double>(b), beta));
  return count_close_pairs(v, scale, X, exec);
}

CountResult count_B2(std::int64_t N, double gamma, double X, const PerturbationSpec& spec,
                     SupMode mode, Exec exec, double budget) {
  if (N < 1) throw DomainError("N must be >= 1");
  require_positive(gamma, "gamma");
  require_positive(X, "X");
  const double n = static_cast<double>(N);
  const double scan = mode == SupMode::full_scan ? static_cast<double>(spec.M) : 2.0;
  require_budget(n * n * n * n + n * n * scan, budget, "count_B2");
  std::vector<double> lo, hi;
  for (std::int64_t a = N + 1; a <= 2 * N; ++a)
    for (std::int64_t b = N + 1; b <= 2 * N; ++b) {
      const auto [l, h] =
          m_extent(spec, mode, [&](std::int64_t m) { return phi_pair(a, b, m, spec, N, gamma); });
      lo.push_back(l);
      hi.push_back(h);
    }
  auto out = count_close_ranges(lo, hi, X, exec);
  note_regime(out, X, spec, N, gamma);
  return out;
}

CountResult count_B3(std::int64_t N, double gamma, double X, const PerturbationSpec& spec,
                     SupMode mode, Exec exec, double budget) {
  if (N < 1) throw DomainError("N must be >= 1");
  require_positive(gamma, "gamma");
  require_positive(X, "X");
  const double n = static_cast<double>(N);
  const double scan = mode == SupMode::full_scan ? static_cast<double>(spec.M) : 2.0;
  require_budget(n * n + n * scan, budget, "count_B3");
  std::vector<double> lo, hi;
  for (std::int64_t a = N + 1; a <= 2 * N; ++a) {
    const auto [l, h] =
        m_extent(spec, mode, [&](std::int64_t m) { return psi_member(a, m, spec, N, gamma); });
    lo.push_back(l);
    hi.push_back(h);
  }
  auto out = count_close_ranges(lo, hi, X, exec);
  note_regime(out, X, spec, N, gamma);
  return out;
}

double dio_bound(DioKind kind, const DioParams& p) {
  require_positive(p.X, "X");
  const double e = p.epsilon;
  switch (kind) {
    case DioKind::B1: {
      const double hm = static_cast<double>(p.H) * static_cast<double>(p.M);
      return std::pow(hm, 2.0 + e) * (1.0 / hm + 1.0 / p.X);
    }
    case DioKind::B0:
    case DioKind::B2: {
      const double n = static_cast<double>(p.N);
      return std::pow(n, 4.0 + e) * (1.0 / (n * n) + 1.0 / p.X);
    }
    case DioKind::B3: {
      const double n = static_cast<double>(p.N);
      return n * n * (1.0 / n + 1.0 / p.X);
    }
  }
  throw DomainError("unknown count kind");
}

DioResult dio_result(DioKind kind, const CountResult& c, const DioParams& p) {
  DioResult r;
  r.kind = kind;
  r.count = c;
  r.params = p;
  r.bound = dio_bound(kind, p);
  r.fitted_constant = static_cast<double>(c.count) / r.bound;
  return r;
}

namespace {

struct ScenarioPoints {
  std::vector<double> y;
  std::vector<std::int64_t> m;
  double Y = 0.0;
};

ScenarioPoints scenario_points(std::int64_t H, std::int64_t M, double X, double alpha, double beta) {
  if (H < 1 || M < 1) throw DomainError("H and M must be >= 1");
  ScenarioPoints p;
  const double scale = X * std::pow(static_cast<double>(H), -alpha) * std::pow(static_cast<double>(M), beta);
  for (std::int64_t h = H + 1; h <= 2 * H; ++h)
    for (std::int64_t m = M + 1; m <= 2 * M; ++m) {
      const double y = scale * std::pow(static_cast<double>(h), alpha) * std::pow(static_cast<double>(m), -beta);
      p.y.push_back(y);
      p.m.push_back(m);
      p.Y = std::max(p.Y, std::abs(y));
    }
  return p;
}

double fitting_K(const FunctionFamily& f, double Y) {
  double osc = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) osc = std::max(osc, f.osc(k));
  // smallest K >= 1 with osc < K/(4Y), with a relative margin
  return std::max(1.0, 4.0 * Y * osc * (1.0 + 1e-9) + 1e-12);
}

}  // namespace

DlsInstance regime_one_scenario(std::int64_t H, std::int64_t M, std::int64_t N, double X,
                                double alpha, double beta, double gamma, double delta,
                                std::uint64_t seed) {
  const PerturbationSpec spec(beta, delta, M);
  auto pts = scenario_points(H, M, X, alpha, beta);
  PointSet points(pts.y, std::vector<cplx>(pts.y.size(), 1.0), pts.Y);
  std::vector<std::vector<double>> tables;
  std::vector<cplx> coeffs;
  double sup = 0.0;
  for (std::int64_t a = N + 1; a <= 2 * N; ++a)
    for (std::int64_t b = N + 1; b <= 2 * N; ++b) {
      std::vector<double> t;
      for (auto m : pts.m) {
        t.push_back(phi_pair(a, b, m, spec, N, gamma));
        sup = std::max(sup, std::abs(t.back()));
      }
      tables.push_back(std::move(t));
      coeffs.push_back(hashed_unimodular(seed, static_cast<std::uint64_t>(a)) *
                       std::conj(hashed_unimodular(seed, static_cast<std::uint64_t>(b))));
    }
  FunctionFamily family(std::move(tables), std::move(coeffs), std::max(sup, 1e-300));
  const double K = fitting_K(family, pts.Y);
  return {std::move(family), std::move(points), K};
}

DlsInstance regime_two_scenario(std::int64_t H, std::int64_t M, std::int64_t N, double X,
                                double alpha, double beta, double gamma, double delta,
                                std::uint64_t seed) {
  const PerturbationSpec spec(beta, delta, M, PerturbationSpec::Kind::nu);
  auto pts = scenario_points(H, M, X, alpha, beta);
  std::vector<cplx> b;
  for (std::size_t i = 0; i < pts.y.size(); ++i) b.push_back(hashed_unimodular(seed ^ 0xb3ULL, i));
  PointSet points(pts.y, std::move(b), pts.Y);
  std::vector<std::vector<double>> tables;
  std::vector<cplx> coeffs;
  double sup = 0.0;
  for (std::int64_t n = N + 1; n <= 2 * N; ++n) {
    std::vector<double> t;
    for (auto m : pts.m) {
      t.push_back(psi_member(n, m, spec, N, gamma));
      sup = std::max(sup, std::abs(t.back()));
    }
    tables.push_back(std::move(t));
    coeffs.push_back(hashed_unimodular(seed, static_cast<std::uint64_t>(n)));
  }
  FunctionFamily family(std::move(tables), std::move(coeffs), sup);
  const double K = fitting_K(family, pts.Y);
  return {std::move(family), std::move(points), K};
}

}  // namespace pertlab
