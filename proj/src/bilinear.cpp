#include "pertlab/bilinear.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pertlab/errors.hpp"
#include "pertlab/phase.hpp"

namespace pertlab {

namespace {

constexpr double kPi = std::numbers::pi;

// int_{-T}^{T} e(delta t) dt
double fourier_kernel(double delta, double T) {
  const double z = 2.0 * kPi * T * delta;
  if (std::fabs(z) < 1e-4) {
    const double z2 = z * z;
    return 2.0 * T * (1.0 - z2 / 6.0 + z2 * z2 / 120.0);
  }
  return std::sin(z) / (kPi * delta);
}

}  // namespace

PointSet::PointSet(std::vector<double> points, std::vector<cplx> coeffs, double Y)
    : points_(std::move(points)), coeffs_(std::move(coeffs)), Y_(Y) {
  if (points_.size() != coeffs_.size())
    throw StructuralError("PointSet: " + std::to_string(points_.size()) + " points but " +
                          std::to_string(coeffs_.size()) + " coefficients");
  if (!(Y_ > 0.0)) throw DomainError("PointSet: Y must be positive");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!(std::fabs(points_[i]) <= Y_))
      throw DomainError("PointSet: |y| > Y at index " + std::to_string(i));
    if (std::abs(coeffs_[i]) > 1.0 + 1e-15)
      throw DomainError("PointSet: |b(y)| > 1 at index " + std::to_string(i));
  }
}

FunctionFamily::FunctionFamily(std::vector<std::vector<double>> tables, std::vector<cplx> coeffs,
                               double X)
    : tables_(std::move(tables)), coeffs_(std::move(coeffs)), X_(X) {
  if (tables_.size() != coeffs_.size())
    throw StructuralError("FunctionFamily: member and coefficient counts differ");
  if (!(X_ > 0.0)) throw DomainError("FunctionFamily: X must be positive");
  width_ = tables_.empty() ? 0 : tables_.front().size();
  min_.resize(tables_.size());
  max_.resize(tables_.size());
  for (std::size_t k = 0; k < tables_.size(); ++k) {
    const auto& t = tables_[k];
    if (t.size() != width_ || t.empty())
      throw StructuralError("FunctionFamily: member " + std::to_string(k) +
                            " has a different tabulation length");
    const auto [lo, hi] = std::minmax_element(t.begin(), t.end());
    min_[k] = *lo;
    max_[k] = *hi;
    if (!(std::max(std::fabs(*lo), std::fabs(*hi)) <= X_))
      throw DomainError("FunctionFamily: |phi| > X for member " + std::to_string(k));
    if (std::abs(coeffs_[k]) > 1.0 + 1e-15)
      throw DomainError("FunctionFamily: |a(phi)| > 1 for member " + std::to_string(k));
  }
}

FunctionFamily FunctionFamily::tabulate(const PointSet& points,
                                        const std::vector<std::function<double(double)>>& members,
                                        std::vector<cplx> coeffs, double X) {
  std::vector<std::vector<double>> tables;
  tables.reserve(members.size());
  for (const auto& f : members) {
    std::vector<double> row;
    row.reserve(points.size());
    for (double y : points.points()) row.push_back(f(y));
    tables.push_back(std::move(row));
  }
  return FunctionFamily(std::move(tables), std::move(coeffs), X);
}

cplx bilinear_form(const FunctionFamily& family, const PointSet& points, Exec exec) {
  if (family.tabulation_size() != points.size())
    throw StructuralError("bilinear_form: family tabulated over " +
                          std::to_string(family.tabulation_size()) + " points, point set has " +
                          std::to_string(points.size()));
  const std::size_t n = points.size();
  const auto& y = points.points();
  const auto& b = points.coeffs();
  const auto& a = family.coeffs();
  return par::compensated_sum<cplx>(
      family.size() * n,
      [&](std::size_t i) {
        const std::size_t k = i / n;
        const std::size_t j = i % n;
        return a[k] * b[j] * unit_phase(family.value(k, j) * y[j]);
      },
      exec);
}

double correlation_points(const PointSet& points, double eta, Exec exec) {
  const auto& y = points.points();
  const auto& b = points.coeffs();
  return par::compensated_sum<double>(
      y.size(),
      [&](std::size_t i) {
        double s = 0.0;
        for (std::size_t j = 0; j < y.size(); ++j)
          if (std::fabs(y[i] - y[j]) <= eta) s += std::abs(b[i]) * std::abs(b[j]);
        return s;
      },
      exec, 16);
}

double sup_distance(const FunctionFamily& family, std::size_t i, std::size_t j) {
  return std::max(family.max(i) - family.min(j), family.max(j) - family.min(i));
}

double correlation_functions(const FunctionFamily& family, double threshold, Exec exec) {
  const auto& a = family.coeffs();
  return par::compensated_sum<double>(
      family.size(),
      [&](std::size_t i) {
        double s = 0.0;
        for (std::size_t j = 0; j < family.size(); ++j)
          if (sup_distance(family, i, j) <= threshold) s += std::abs(a[i]) * std::abs(a[j]);
        return s;
      },
      exec, 16);
}

double large_sieve_integral(const PointSet& points, double T, Exec exec) {
  const auto& y = points.points();
  const auto& b = points.coeffs();
  const std::size_t n = y.size();
  return par::compensated_sum<double>(
      n * n,
      [&](std::size_t idx) {
        const std::size_t i = idx / n;
        const std::size_t j = idx % n;
        const double w = (b[i] * std::conj(b[j])).real();
        return i == j ? w * 2.0 * T : w * fourier_kernel(y[i] - y[j], T);
      },
      exec);
}

VerificationReport lemma21_check(const PointSet& points, double T, double eta, Exec exec) {
  if (!(T > 0.0) || !(eta > 0.0)) throw DomainError("lemma21_check: T and eta must be positive");
  VerificationReport r;
  r.suite = "lemma21";
  r.which = "large_sieve_integral";
  r.param("points", static_cast<std::int64_t>(points.size()));
  r.param("Y", points.Y());
  r.param("T", T);
  r.param("eta", eta);
  const double lhs = large_sieve_integral(points, T, exec);
  const double rhs = (2.0 * T + 1.0 / eta) * correlation_points(points, eta, exec);
  r.set_sides(lhs, rhs);
  r.pass = lhs <= rhs * (1.0 + 1e-9);
  return r;
}

double dls_proof_ratio_bound(double X, double Y, double K) {
  return kPi * kPi * K * (3.0 * X * Y + 0.5) / (1.0 + K * X * Y);
}

double dls_constant(double K) { return kPi * kPi * std::max(3.0, K / 2.0); }

VerificationReport dls_check(const FunctionFamily& family, const PointSet& points, double K,
                             Exec exec) {
  if (!(K >= 1.0)) throw DomainError("dls_check: K must be >= 1");
  const double X = family.X();
  const double Y = points.Y();
  const double limit = K / (4.0 * Y);
  for (std::size_t k = 0; k < family.size(); ++k) {
    if (!(family.osc(k) < limit))
      throw RejectedInstance("dls_check: member phi_" + std::to_string(k) +
                             " violates sup|phi(y1) - phi(y2)| < K/(4Y): oscillation " +
                             format_double(family.osc(k)) + " >= " + format_double(limit));
  }
  VerificationReport r;
  r.suite = "dls";
  r.which = "double_large_sieve";
  r.param("members", static_cast<std::int64_t>(family.size()));
  r.param("points", static_cast<std::int64_t>(points.size()));
  r.param("X", X);
  r.param("Y", Y);
  r.param("K", K);
  r.param("proof_bound", dls_proof_ratio_bound(X, Y, K));
  r.param("C_dls", dls_constant(K));
  const double lhs = std::norm(bilinear_form(family, points, exec));
  const double rhs = (1.0 + K * X * Y) * correlation_points(points, 1.0 / X, exec) *
                     correlation_functions(family, K / Y, exec);
  r.set_sides(lhs, rhs);
  r.pass = r.ratio <= dls_constant(K);
  return r;
}

PointSet random_point_set(Rng& rng, std::size_t max_points) {
  const double Y = rng.uniform(0.5, 10.0);
  const auto n = static_cast<std::size_t>(rng.integer(1, static_cast<std::int64_t>(max_points)));
  const bool clustered = rng.uniform() < 0.4;
  const bool unimodular = rng.uniform() < 0.5;
  std::vector<double> centers;
  for (int c = 0; c < 3; ++c) centers.push_back(rng.uniform(-0.9 * Y, 0.9 * Y));
  std::vector<double> y(n);
  std::vector<cplx> b(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (clustered) {
      const double c = centers[static_cast<std::size_t>(rng.integer(0, 2))];
      y[i] = std::clamp(c + rng.uniform(-0.05, 0.05) * Y, -Y, Y);
    } else {
      y[i] = rng.uniform(-Y, Y);
    }
    b[i] = unimodular ? rng.unimodular() : rng.in_disc();
  }
  return PointSet(std::move(y), std::move(b), Y);
}

DlsInstance random_dls_instance(Rng& rng, FamilyShape shape, std::size_t max_members,
                                std::size_t max_points) {
  PointSet points = random_point_set(rng, max_points);
  const double Y = points.Y();
  const double K = rng.uniform(1.0, 6.0);
  const double X = rng.uniform(0.2, 30.0);
  const auto k = static_cast<std::size_t>(rng.integer(1, static_cast<std::int64_t>(max_members)));
  const double max_osc = std::min(0.999 * K / (4.0 * Y), X / 2.0);
  const bool clustered = rng.uniform() < 0.5;
  std::vector<double> centers;
  for (int c = 0; c < 2; ++c) centers.push_back(rng.uniform(-X / 2.0, X / 2.0));

  std::vector<std::vector<double>> tables;
  std::vector<cplx> a;
  for (std::size_t m = 0; m < k; ++m) {
    const double osc = shape == FamilyShape::constant ? 0.0 : rng.uniform() * max_osc;
    const double room = X - osc;
    double c = clustered ? centers[static_cast<std::size_t>(rng.integer(0, 1))] +
                               rng.uniform(-1.0, 1.0) * K / Y
                         : rng.uniform(-room, room);
    c = std::clamp(c, -0.999 * room, 0.999 * room);
    const double width = rng.uniform(0.2, 3.0);
    const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
    std::vector<double> row;
    row.reserve(points.size());
    for (double y : points.points()) {
      double v = c;
      if (shape == FamilyShape::linear)
        v += sign * osc * y / (2.0 * Y);
      else if (shape == FamilyShape::monotone)
        v += sign * 0.5 * osc * std::tanh(width * y / Y) / std::tanh(width);
      row.push_back(v);
    }
    tables.push_back(std::move(row));
    a.push_back(rng.uniform() < 0.5 ? rng.unimodular() : rng.in_disc());
  }
  return DlsInstance{FunctionFamily(std::move(tables), std::move(a), X), std::move(points), K};
}

}  // namespace pertlab
