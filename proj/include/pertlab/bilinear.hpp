#pragma once

// Bilinear forms sum_phi sum_y a(phi) b(y) e(phi(y) y) over a family of
// tabulated functions and a finite point set, their correlation counts, the
// exact-kernel form of the large-sieve integral, and the empirical check of
// the generalized double large sieve.

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "pertlab/parallel.hpp"
#include "pertlab/random.hpp"
#include "pertlab/report.hpp"

namespace pertlab {

using cplx = std::complex<double>;

// Points |y| <= Y with coefficients |b(y)| <= 1.
class PointSet {
 public:
  PointSet(std::vector<double> points, std::vector<cplx> coeffs, double Y);

  std::size_t size() const { return points_.size(); }
  const std::vector<double>& points() const { return points_; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  double Y() const { return Y_; }

 private:
  std::vector<double> points_;
  std::vector<cplx> coeffs_;
  double Y_;
};

// Real functions tabulated over the points of a companion PointSet, with
// coefficients |a(phi)| <= 1 and |phi| <= X on the tabulation.
class FunctionFamily {
 public:
  // tables[k][j] = phi_k(y_j)
  FunctionFamily(std::vector<std::vector<double>> tables, std::vector<cplx> coeffs, double X);

  static FunctionFamily tabulate(const PointSet& points,
                                 const std::vector<std::function<double(double)>>& members,
                                 std::vector<cplx> coeffs, double X);

  std::size_t size() const { return tables_.size(); }
  std::size_t tabulation_size() const { return width_; }
  double value(std::size_t k, std::size_t j) const { return tables_[k][j]; }
  const std::vector<double>& table(std::size_t k) const { return tables_[k]; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  double X() const { return X_; }
  double min(std::size_t k) const { return min_[k]; }
  double max(std::size_t k) const { return max_[k]; }
  // max tabulated phi_k - min tabulated phi_k
  double osc(std::size_t k) const { return max_[k] - min_[k]; }

 private:
  std::vector<std::vector<double>> tables_;
  std::vector<cplx> coeffs_;
  double X_;
  std::size_t width_ = 0;
  std::vector<double> min_;
  std::vector<double> max_;
};

cplx bilinear_form(const FunctionFamily& family, const PointSet& points,
                   Exec exec = Exec::parallel);

// Ordered pairs (y, y*) with |y - y*| <= eta, weighted by |b(y) b(y*)|.
double correlation_points(const PointSet& points, double eta, Exec exec = Exec::parallel);

// sup over tabulated y1, y2 of |phi_i(y1) - phi_j(y2)|. Not a metric: the
// diagonal value is osc(phi_i).
double sup_distance(const FunctionFamily& family, std::size_t i, std::size_t j);

// Ordered pairs (phi, phi*) with sup_distance <= threshold, weighted by |a a*|.
double correlation_functions(const FunctionFamily& family, double threshold,
                             Exec exec = Exec::parallel);

// int_{-T}^{T} |sum b(y) e(yt)|^2 dt, evaluated exactly through the kernel
// sin(2 pi T (y - y*)) / (pi (y - y*)).
double large_sieve_integral(const PointSet& points, double T, Exec exec = Exec::parallel);

// lhs = the integral above, rhs = (2T + 1/eta) correlation_points(eta);
// pass when lhs <= rhs (1 + 1e-9).
VerificationReport lemma21_check(const PointSet& points, double T, double eta,
                                 Exec exec = Exec::parallel);

// Constant of the double large sieve, obtained by carrying the proof with
// explicit values: eps = 1/(4Y), T = X + eps, eta = 1/X and |omega(y)| <= pi Y.
// The phi-integral contributes (K/Y) B(a;Y) and the y-integral
// (2T + 1/eta) (pi Y)^2 B(b;X) = (3X + 1/(2Y)) pi^2 Y^2 B(b;X), so
//   |B|^2 <= pi^2 K (3XY + 1/2) B(b;X) B(a;Y).
// Against (1 + KXY) B(b;X) B(a;Y) this is at most pi^2 max(3, K/2).
double dls_proof_ratio_bound(double X, double Y, double K);
double dls_constant(double K);

// Checks |B|^2 against (1 + KXY) B(b;X) B(a;Y). The report's ratio must stay
// below dls_constant(K). Throws RejectedInstance when some member has
// osc(phi) >= K/(4Y).
VerificationReport dls_check(const FunctionFamily& family, const PointSet& points, double K,
                             Exec exec = Exec::parallel);

struct DlsInstance {
  FunctionFamily family;
  PointSet points;
  double K;
};

enum class FamilyShape { linear, monotone, constant };

// Random instance satisfying the oscillation condition, K drawn from [1, 6].
DlsInstance random_dls_instance(Rng& rng, FamilyShape shape, std::size_t max_members = 12,
                                std::size_t max_points = 40);

// Random point set for the large-sieve integral, up to max_points points.
PointSet random_point_set(Rng& rng, std::size_t max_points = 50);

}  // namespace pertlab
