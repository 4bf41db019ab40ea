#include "pertlab/exponent.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>

#include "pertlab/errors.hpp"

namespace pertlab {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("rational arithmetic overflow");
  return static_cast<std::int64_t>(v);
}

Rational make(i128 n, i128 d) {
  if (d == 0) throw DomainError("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 a = n < 0 ? -n : n;
  i128 b = d;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    n /= a;
    d /= a;
  }
  return Rational(narrow(n), narrow(d));
}

bool is_known(const std::string& v) {
  const auto& k = known_variables();
  return std::find(k.begin(), k.end(), v) != k.end();
}

void require_known(const std::string& v) {
  if (!is_known(v)) throw ParseError("unknown variable '" + v + "'");
}

// --- parser -----------------------------------------------------------------

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  BoundExpr expr() {
    BoundExpr out;
    out.add(term());
    skip();
    while (pos_ < s_.size() && (s_[pos_] == ',' || s_[pos_] == '+')) {
      ++pos_;
      out.add(term());
      skip();
    }
    if (pos_ != s_.size()) fail("unexpected character");
    return out;
  }

  Monomial single() {
    Monomial m = term();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return m;
  }

 private:
  Monomial term() {
    Monomial m = factor();
    skip();
    while (pos_ < s_.size() && s_[pos_] == '*') {
      ++pos_;
      m = m * factor();
      skip();
    }
    return m;
  }

  Monomial factor() {
    skip();
    if (pos_ >= s_.size()) fail("expected a factor");
    Monomial base;
    if (s_[pos_] == '(') {
      ++pos_;
      base = term();
      expect(')');
    } else if (s_[pos_] == '1') {
      ++pos_;
    } else if (std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      require_known(name);
      base = Monomial::var(name);
    } else {
      fail("expected a variable, '1' or '('");
    }
    skip();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      skip();
      bool braced = pos_ < s_.size() && (s_[pos_] == '{' || s_[pos_] == '(');
      char close = braced ? (s_[pos_] == '{' ? '}' : ')') : '\0';
      if (braced) ++pos_;
      skip();
      if (s_.substr(pos_, 3) == "eps") {
        pos_ += 3;
        if (braced) expect(close);
        base.exponents.clear();
        base.eps = true;
        return base;
      }
      Rational p = rational();
      if (braced) expect(close);
      base = base.pow(p);
    }
    return base;
  }

  Rational rational() {
    skip();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/' ||
                                s_[pos_] == ' '))
      ++pos_;
    try {
      return Rational::parse(s_.substr(start, pos_ - start));
    } catch (const std::exception&) {
      fail("bad rational exponent");
    }
    return {};
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(what + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

// Affine forms of every term in `base` and `var`.
std::vector<Affine> affine_forms(const BoundExpr& e, const std::string& var, const std::string& base) {
  std::vector<Affine> out;
  for (const auto& m : e.terms) out.push_back(reduce_affine(m, var, base));
  return out;
}

Rational max_at(const std::vector<Affine>& forms, Rational t) {
  Rational best = forms.front().at(t);
  for (const auto& f : forms) best = std::max(best, f.at(t));
  return best;
}

}  // namespace

// --- Rational -----------------------------------------------------------------

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  i128 n = num;
  i128 d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 g = std::gcd(static_cast<std::int64_t>(n < 0 ? -n : n), static_cast<std::int64_t>(d));
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num_ = narrow(n);
  den_ = narrow(d);
}

std::string Rational::str() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw ParseError("empty rational");
  const auto slash = t.find('/');
  auto to_int = [&](const std::string& part) -> std::int64_t {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(part, &used);
    } catch (const std::exception&) {
      throw ParseError("bad rational '" + t + "'");
    }
    if (used != part.size()) throw ParseError("bad rational '" + t + "'");
    return v;
  };
  if (slash == std::string::npos) return Rational(to_int(t));
  const auto d = to_int(t.substr(slash + 1));
  if (d == 0) throw ParseError("zero denominator in '" + t + "'");
  return Rational(to_int(t.substr(0, slash)), d);
}

Rational operator+(Rational a, Rational b) {
  return make(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
              static_cast<i128>(a.den_) * b.den_);
}
Rational operator-(Rational a, Rational b) { return a + (-b); }
Rational operator*(Rational a, Rational b) {
  return make(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}
Rational operator/(Rational a, Rational b) {
  if (b.num_ == 0) throw DomainError("rational division by zero");
  return make(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
}
std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const i128 l = static_cast<i128>(a.num_) * b.den_;
  const i128 r = static_cast<i128>(b.num_) * a.den_;
  return l < r ? std::strong_ordering::less
               : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
}

// --- Monomial / BoundExpr -----------------------------------------------------------

const std::vector<std::string>& known_variables() {
  static const std::vector<std::string> vars = {"x", "D", "E", "H", "K", "L", "X", "M", "N"};
  return vars;
}

Monomial Monomial::var(const std::string& name, Rational power) {
  require_known(name);
  Monomial m;
  m.set(name, power);
  return m;
}

Rational Monomial::exponent(const std::string& v) const {
  auto it = exponents.find(v);
  return it == exponents.end() ? Rational(0) : it->second;
}

void Monomial::set(const std::string& v, Rational e) {
  if (e.is_zero())
    exponents.erase(v);
  else
    exponents[v] = e;
}

Monomial Monomial::pow(Rational p) const {
  Monomial out;
  out.eps = eps;
  for (const auto& [v, e] : exponents) out.set(v, e * p);
  return out;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out = a;
  out.eps = a.eps || b.eps;
  for (const auto& [v, e] : b.exponents) out.set(v, out.exponent(v) + e);
  return out;
}

BoundExpr::BoundExpr(std::vector<Monomial> t) {
  for (const auto& m : t) add(m);
}

void BoundExpr::add(const Monomial& m) {
  if (std::find(terms.begin(), terms.end(), m) == terms.end()) terms.push_back(m);
}

std::string to_string(const Monomial& m) {
  std::string out;
  auto emit = [&](const std::string& v, Rational e) {
    if (!out.empty()) out += " * ";
    out += v;
    if (e != Rational(1)) out += "^{" + e.str() + "}";
  };
  for (const auto& v : known_variables()) {
    auto it = m.exponents.find(v);
    if (it != m.exponents.end()) emit(v, it->second);
  }
  if (out.empty()) out = "1";
  if (m.eps) out += " * x^{eps}";
  return out;
}

std::string to_string(const BoundExpr& e) {
  std::string out;
  for (const auto& m : e.terms) {
    if (!out.empty()) out += " + ";
    out += to_string(m);
  }
  return out;
}

Monomial parse_monomial(std::string_view text) { return Parser(text).single(); }
BoundExpr parse_bound_expr(std::string_view text) { return Parser(text).expr(); }

ExponentPair::ExponentPair(Rational k, Rational l) : kappa(k), lambda(l) {
  if (!(Rational(0) <= kappa && kappa <= Rational(1, 2) && Rational(1, 2) <= lambda &&
        lambda <= Rational(1)))
    throw DomainError("exponent pair requires 0 <= kappa <= 1/2 <= lambda <= 1, got (" +
                      kappa.str() + ", " + lambda.str() + ")");
}

// --- operations ---------------------------------------------------------------

Monomial substitute(const Monomial& m, const std::string& var, const Monomial& replacement) {
  require_known(var);
  const Rational e = m.exponent(var);
  if (e.is_zero()) return m;
  Monomial rest = m;
  rest.exponents.erase(var);
  return rest * replacement.pow(e);
}

BoundExpr substitute(const BoundExpr& e, const std::string& var, const Monomial& replacement) {
  BoundExpr out;
  for (const auto& m : e.terms) out.add(substitute(m, var, replacement));
  return out;
}

BoundExpr sup_over_range(const BoundExpr& e, const std::string& var, const Monomial& lo,
                         const Monomial& hi) {
  BoundExpr out = substitute(e, var, lo);
  for (const auto& m : substitute(e, var, hi).terms) out.add(m);
  return out;
}

Affine reduce_affine(const Monomial& m, const std::string& var, const std::string& base) {
  Affine a;
  for (const auto& [v, e] : m.exponents) {
    if (v == base)
      a.c0 = e;
    else if (v == var)
      a.c1 = e;
    else
      throw UnsupportedStructure("term " + to_string(m) + " involves '" + v +
                                 "', which does not reduce to a power of " + base);
  }
  return a;
}

DominanceResult dominance_check(const Monomial& a, const BoundExpr& b, const ParamRange& range,
                                bool strict) {
  if (b.terms.empty()) throw DomainError("dominance_check: empty bound expression");
  if (range.hi < range.lo) throw DomainError("dominance_check: empty range");
  const Affine fa = reduce_affine(a, range.var, range.base);
  const auto fb = affine_forms(b, range.var, range.base);

  std::vector<Rational> points = {range.lo, range.hi};
  for (std::size_t i = 0; i < fb.size(); ++i)
    for (std::size_t j = i + 1; j < fb.size(); ++j) {
      if (fb[i].c1 == fb[j].c1) continue;
      const Rational t = (fb[j].c0 - fb[i].c0) / (fb[i].c1 - fb[j].c1);
      if (range.lo < t && t < range.hi) points.push_back(t);
    }
  std::sort(points.begin(), points.end());

  DominanceResult res;
  res.dominated = true;
  bool first = true;
  for (Rational t : points) {
    const Rational margin = max_at(fb, t) - fa.at(t);
    if (first || margin < res.worst_margin) res.worst_margin = margin;
    first = false;
    const bool ok = strict ? margin > Rational(0) : margin >= Rational(0);
    if (!ok && res.dominated) {
      res.dominated = false;
      res.witness = t;
    }
  }
  return res;
}

BalanceResult minimax_balance(const BoundExpr& terms, const std::string& var,
                              const std::string& base, std::optional<Rational> lo,
                              std::optional<Rational> hi) {
  if (terms.terms.empty()) throw DomainError("minimax_balance: no terms");
  if (lo && hi && *hi < *lo) throw DomainError("minimax_balance: empty range");
  const auto forms = affine_forms(terms, var, base);

  BalanceResult res;
  res.var = var;
  res.base = base;

  Rational min_slope = forms.front().c1;
  Rational max_slope = forms.front().c1;
  for (const auto& f : forms) {
    min_slope = std::min(min_slope, f.c1);
    max_slope = std::max(max_slope, f.c1);
  }
  // the convex max decreases forever on an open side
  if ((!hi && max_slope < Rational(0)) || (!lo && min_slope > Rational(0))) {
    res.unbounded = true;
    return res;
  }

  auto inside = [&](Rational t) { return (!lo || *lo <= t) && (!hi || t <= *hi); };
  std::vector<Rational> cand;
  if (lo) cand.push_back(*lo);
  if (hi) cand.push_back(*hi);
  for (std::size_t i = 0; i < forms.size(); ++i)
    for (std::size_t j = i + 1; j < forms.size(); ++j) {
      if (forms[i].c1 == forms[j].c1) continue;
      const Rational t = (forms[j].c0 - forms[i].c0) / (forms[i].c1 - forms[j].c1);
      if (inside(t)) cand.push_back(t);
    }
  if (cand.empty()) {
    // every slope is zero on an unbounded range: any point is optimal
    cand.push_back(lo ? *lo : (hi ? *hi : Rational(0)));
  }
  std::sort(cand.begin(), cand.end());
  bool have = false;
  for (Rational t : cand) {
    const Rational v = max_at(forms, t);
    if (!have || v < res.value) {
      res.e = t;
      res.value = v;
      have = true;
    }
  }
  for (std::size_t i = 0; i < forms.size(); ++i)
    if (forms[i].at(res.e) == res.value) res.active.push_back(i);
  return res;
}

Monomial lwy_first_term(const ExponentPair& pair) {
  const Rational k = pair.kappa;
  const Rational l = pair.lambda;
  const Rational denom = Rational(2) + Rational(2) * k;
  Monomial m;
  m.set("X", k / denom);
  m.set("H", (Rational(2) + k) / denom);
  m.set("M", (Rational(2) + k) / denom);
  m.set("N", (Rational(1) + k + l) / denom);
  return m;
}

TypeOneBound optimize_lower_bounded(const BoundExpr& raw, const std::string& var) {
  TypeOneBound out;
  out.raw = raw;
  std::vector<Monomial> dec, inc, flat;
  for (const auto& m : raw.terms) {
    const Rational e = m.exponent(var);
    if (e < Rational(0))
      dec.push_back(m);
    else if (e > Rational(0))
      inc.push_back(m);
    else
      flat.push_back(m);
  }
  if (dec.size() > 1 || inc.size() > 1)
    throw UnsupportedStructure("optimize_lower_bounded: needs at most one decreasing and one "
                               "increasing term in " + var);
  if (!dec.empty() && inc.empty()) {
    out.unbounded = true;
    out.optimized = BoundExpr(flat);
    return out;
  }
  const Monomial one;
  if (dec.empty()) {
    out.optimized = substitute(raw, var, one);
    out.L_opt = one;
    return out;
  }
  // A var^{-a} = B var^{b}  =>  var = (A/B)^{1/(a+b)}, value A^{b/(a+b)} B^{a/(a+b)}
  Monomial A = dec.front();
  Monomial B = inc.front();
  const Rational a = -A.exponent(var);
  const Rational b = B.exponent(var);
  A.exponents.erase(var);
  B.exponents.erase(var);
  const Rational s = a + b;
  out.L_opt = (A * B.pow(Rational(-1))).pow(Rational(1) / s);
  out.optimized.add(A.pow(b / s) * B.pow(a / s));
  out.optimized.add(B);
  for (const auto& m : flat) out.optimized.add(m);
  return out;
}

TypeOneBound type_one_bound(const ExponentPair& pair, bool with_tail) {
  const Rational k = pair.kappa;
  const Rational l = pair.lambda;
  BoundExpr raw;
  if (with_tail) raw.add(Monomial::var("D") * Monomial::var("L", Rational(-1)));
  Monomial main = Monomial::var("x", k) * Monomial::var("D", (Rational(-5) * k + Rational(2) * l + Rational(1)) / Rational(3));
  main.set("L", k);
  raw.add(main);
  raw.add(Monomial::var("x", Rational(-1)) * Monomial::var("D", Rational(2)));
  if (!with_tail) {
    TypeOneBound out;
    out.raw = raw;
    out.optimized = raw;
    return out;
  }
  return optimize_lower_bounded(raw, "L");
}

BoundExpr type_two_bound(Rational theta) {
  BoundExpr e;
  e.add(Monomial::var("D") * Monomial::var("H", Rational(-1)));
  e.add(Monomial::var("x", Rational(1, 4)) * Monomial::var("D", Rational(3, 8)) *
        Monomial::var("K", Rational(1, 4)));
  e.add(Monomial::var("D", Rational(1) - theta / Rational(4)) * Monomial::var("K", Rational(1, 2)));
  e.add(Monomial::var("x", Rational(1, 6)) *
        Monomial::var("D", Rational(1, 2) + theta / Rational(6)));
  e.add(Monomial::var("D", Rational(8, 9)));
  return e;
}

FloorSumExponent floor_sum_exponent() {
  const Monomial E = Monomial::var("E");
  const Monomial split = Monomial::var("x", Rational(11, 21));
  const Monomial top = Monomial::var("x") * Monomial::var("E", Rational(-1));

  const BoundExpr small_d = parse_bound_expr("(x^2 * D^7)^{1/12}");
  const BoundExpr large_d = parse_bound_expr("D^{17/19}, x^{1/6} * D^{329/570}");

  FloorSumExponent out;
  out.combined.add(E);
  for (const auto& m : sup_over_range(small_d, "D", E, split).terms) out.combined.add(m);
  for (const auto& m : sup_over_range(large_d, "D", split, top).terms) out.combined.add(m);
  out.balance = minimax_balance(out.combined, "E", "x", Rational(8, 17), Rational(1, 2));
  return out;
}

}  // namespace pertlab
