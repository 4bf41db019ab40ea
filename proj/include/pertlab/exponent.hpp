#pragma once

// Exact exponent calculus for max-of-monomials bounds: rational exponents,
// substitution, dominance over a one-parameter range, and minimax balancing.
//
// Text form: terms separated by ',' or '+', factors by '*', e.g.
//   x^{17/19} * E^{-17/19}, (x^2 * D^7)^{1/12}, E
// Variables: x D E H K L X M N. A factor `x^{eps}` sets the epsilon flag,
// which is carried along but never enters exponent comparisons.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pertlab {

class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_zero() const { return num_ == 0; }
  std::string str() const;

  static Rational parse(std::string_view text);

  friend Rational operator+(Rational a, Rational b);
  friend Rational operator-(Rational a, Rational b);
  friend Rational operator*(Rational a, Rational b);
  friend Rational operator/(Rational a, Rational b);
  Rational operator-() const { return Rational(-num_, den_); }
  Rational& operator+=(Rational o) { return *this = *this + o; }
  Rational& operator*=(Rational o) { return *this = *this * o; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

const std::vector<std::string>& known_variables();

struct Monomial {
  std::map<std::string, Rational> exponents;  // zero exponents are never stored
  bool eps = false;

  static Monomial var(const std::string& name, Rational power = Rational(1));

  Rational exponent(const std::string& v) const;
  void set(const std::string& v, Rational e);
  Monomial pow(Rational p) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Maximum of its terms, up to constants.
struct BoundExpr {
  std::vector<Monomial> terms;

  BoundExpr() = default;
  explicit BoundExpr(std::vector<Monomial> t);
  void add(const Monomial& m);  // skips duplicates
};

std::string to_string(const Monomial& m);
std::string to_string(const BoundExpr& e);
Monomial parse_monomial(std::string_view text);
BoundExpr parse_bound_expr(std::string_view text);

struct ExponentPair {
  Rational kappa;
  Rational lambda;
  ExponentPair(Rational k, Rational l);
};

// Replaces var by `replacement` everywhere. Throws ParseError for a name
// outside known_variables().
Monomial substitute(const Monomial& m, const std::string& var, const Monomial& replacement);
BoundExpr substitute(const BoundExpr& e, const std::string& var, const Monomial& replacement);

// sup of e over var in [lo, hi]: each term is monotone in var, so the union
// of the two endpoint substitutions represents the sup exactly.
BoundExpr sup_over_range(const BoundExpr& e, const std::string& var, const Monomial& lo,
                         const Monomial& hi);

// var = base^t with t in [lo, hi].
struct ParamRange {
  std::string var = "D";
  std::string base = "x";
  Rational lo;
  Rational hi;
};

// Exponent of `base` after substituting var = base^t, as c0 + c1 t.
struct Affine {
  Rational c0;
  Rational c1;
  Rational at(Rational t) const { return c0 + c1 * t; }
};
Affine reduce_affine(const Monomial& m, const std::string& var, const std::string& base);

struct DominanceResult {
  bool dominated = false;
  std::optional<Rational> witness;  // a t where the inequality fails
  Rational worst_margin;            // min over checked t of (max b) - a
};

// a <= max(b) for every t in the range (a < max(b) when strict). The max of
// b's affine exponents is convex, so it is checked at both endpoints and at
// each breakpoint of b inside the range.
DominanceResult dominance_check(const Monomial& a, const BoundExpr& b, const ParamRange& range,
                                bool strict = false);

struct BalanceResult {
  Rational e;      // optimal exponent: var = base^e
  Rational value;  // base exponent of the max at e
  bool unbounded = false;
  std::vector<std::size_t> active;  // terms attaining the max at e
  std::string var;
  std::string base;
  Monomial optimum() const { return Monomial::var(base, e); }
};

// Minimizes max_i (c0_i + c1_i e) over e in [lo, hi] (either side optional)
// with exact rational breakpoints. Throws DomainError for an empty range.
BalanceResult minimax_balance(const BoundExpr& terms, const std::string& var,
                              const std::string& base, std::optional<Rational> lo,
                              std::optional<Rational> hi);

// (X^k H^{2+k} M^{2+k} N^{1+k+l})^{1/(2+2k)}
Monomial lwy_first_term(const ExponentPair& pair);

struct TypeOneBound {
  BoundExpr raw;        // x^k D^{(-5k+2l+1)/3} L^k + x^{-1} D^2 (+ D L^{-1})
  BoundExpr optimized;  // after optimizing L over [1, oo)
  std::optional<Monomial> L_opt;
  bool unbounded = false;
};

// Optimizes a bound over var >= 1 when it has one decreasing and one
// increasing term in var; returns the balanced term, the increasing term at
// var = 1, and the var-free terms.
TypeOneBound optimize_lower_bounded(const BoundExpr& raw, const std::string& var);

TypeOneBound type_one_bound(const ExponentPair& pair, bool with_tail = true);

// Terms of the type II estimate for the Mangoldt-weighted sum in D, for a
// split parameter theta: D H^{-1}, x^{1/4} D^{3/8} K^{1/4}, D^{1-theta/4} K^{1/2},
// x^{1/6} D^{1/2+theta/6}, D^{8/9}.
BoundExpr type_two_bound(Rational theta);

// E-exponent balancing for the floor sum: the small-D bound (x^2 D^7)^{1/12}
// over D in [E, x^{11/21}], the large-D bound D^{17/19} + x^{1/6} D^{329/570}
// over D in [x^{11/21}, x/E], and the short-sum term E, minimized over
// E in [x^{8/17}, x^{1/2}].
struct FloorSumExponent {
  BoundExpr combined;  // in x and E
  BalanceResult balance;
};
FloorSumExponent floor_sum_exponent();

}  // namespace pertlab
