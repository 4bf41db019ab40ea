#include "pertlab/arith.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>

#include "pertlab/errors.hpp"

namespace pertlab {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr std::array<std::uint32_t, 18> kSmallPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23,
                                                        29, 31, 37, 41, 43, 47, 53, 59, 61};

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// true when r^k <= limit
bool power_at_most(u64 r, unsigned k, u64 limit) {
  u128 acc = 1;
  for (unsigned i = 0; i < k; ++i) {
    acc *= r;
    if (acc > limit) return false;
  }
  return true;
}

u64 isqrt(u64 n) { return integer_root(n, 2); }

void check_capacity(std::int64_t lo, std::int64_t hi, std::int64_t capacity) {
  if (hi - lo > capacity)
    throw ResourceError("table of " + std::to_string(hi - lo) +
                        " entries exceeds the table capacity budget of " +
                        std::to_string(capacity) + " entries");
}

std::vector<std::uint32_t> base_primes_for(std::int64_t hi) {
  const u64 root = isqrt(static_cast<u64>(hi));
  if (root > 1'000'000'000ULL)
    throw ResourceError("sieving above 10^18 is outside the supported range");
  return primes_up_to(static_cast<std::uint32_t>(root));
}

// Fills out[i] = Lambda(lo + 1 + i) for lo < d <= hi using base primes <= sqrt(hi).
void fill_segment(std::int64_t lo, std::int64_t hi, const std::vector<std::uint32_t>& primes,
                  double* out) {
  const std::size_t len = static_cast<std::size_t>(hi - lo);
  std::vector<std::uint8_t> composite(len, 0);
  for (std::uint32_t p32 : primes) {
    const std::int64_t p = p32;
    if (p * p > hi) break;
    std::int64_t start = std::max(p * p, (lo / p + 1) * p);
    for (std::int64_t m = start; m <= hi; m += p) composite[static_cast<std::size_t>(m - lo - 1)] = 1;
  }
  for (std::size_t i = 0; i < len; ++i) {
    const std::int64_t n = lo + 1 + static_cast<std::int64_t>(i);
    out[i] = (n >= 2 && !composite[i]) ? std::log(static_cast<double>(n)) : 0.0;
  }
  // proper prime powers p^k, k >= 2, all have p <= sqrt(hi)
  for (std::uint32_t p32 : primes) {
    const std::int64_t p = p32;
    if (p * p > hi) break;
    const double logp = std::log(static_cast<double>(p));
    for (std::int64_t q = p * p; q <= hi; ) {
      if (q > lo) out[q - lo - 1] = logp;
      if (q > hi / p) break;
      q *= p;
    }
  }
}

MangoldtTable sieve_range(std::int64_t lo, std::int64_t hi, std::int64_t capacity, Exec exec) {
  if (lo < 0 || hi <= lo) throw DomainError("sieve range requires 0 <= lo < hi");
  check_capacity(lo, hi, capacity);
  const auto primes = base_primes_for(hi);
  std::vector<double> values(static_cast<std::size_t>(hi - lo));
  const std::int64_t seg = kDefaultSegmentLength;
  const std::size_t segments = static_cast<std::size_t>((hi - lo + seg - 1) / seg);
  par::for_each_index(
      segments,
      [&](std::size_t s) {
        const std::int64_t a = lo + static_cast<std::int64_t>(s) * seg;
        const std::int64_t b = std::min(hi, a + seg);
        fill_segment(a, b, primes, values.data() + (a - lo));
      },
      exec);
  return MangoldtTable(lo, hi, std::move(values));
}

void put_u64(std::ostream& out, u64 v) {
  std::array<char, 8> bytes;
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(bytes.data(), 8);
}

u64 get_u64(std::istream& in) {
  std::array<unsigned char, 8> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), 8);
  if (!in) throw StructuralError("truncated Mangoldt table segment");
  u64 v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | bytes[i];
  return v;
}

}  // namespace

MangoldtTable::MangoldtTable(std::int64_t lo, std::int64_t hi, std::vector<double> values)
    : lo_(lo), hi_(hi), values_(std::move(values)) {
  if (hi_ - lo_ != static_cast<std::int64_t>(values_.size()))
    throw StructuralError("Mangoldt table size does not match its range");
}

double MangoldtTable::at(std::int64_t d) const {
  if (!contains(d))
    throw std::out_of_range("d=" + std::to_string(d) + " outside table (" + std::to_string(lo_) +
                            ", " + std::to_string(hi_) + "]");
  return (*this)(d);
}

void MangoldtTable::write(std::ostream& out) const {
  put_u64(out, static_cast<u64>(lo_));
  put_u64(out, static_cast<u64>(hi_));
  for (double v : values_) put_u64(out, std::bit_cast<u64>(v));
}

MangoldtTable MangoldtTable::read(std::istream& in) {
  const auto lo = static_cast<std::int64_t>(get_u64(in));
  const auto hi = static_cast<std::int64_t>(get_u64(in));
  if (hi < lo || hi - lo > kDefaultTableCapacity)
    throw StructuralError("corrupt Mangoldt table header");
  std::vector<double> values(static_cast<std::size_t>(hi - lo));
  for (double& v : values) v = std::bit_cast<double>(get_u64(in));
  return MangoldtTable(lo, hi, std::move(values));
}

double frac_part(double t) {
  double f = t - std::floor(t);
  if (f >= 1.0) f = std::nextafter(1.0, 0.0);
  return f;
}

double psi_frac(double t) { return frac_part(t) - 0.5; }

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint32_t p : kSmallPrimes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // deterministic for all n < 2^64
  constexpr std::array<u64, 7> bases = {2, 325, 9375, 28178, 450775, 9780504, 1795265022};
  for (u64 a : bases) {
    a %= n;
    if (a == 0) continue;
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t integer_root(std::uint64_t n, unsigned k) {
  if (k == 0) throw DomainError("integer_root: k must be positive");
  if (k == 1 || n < 2) return n;
  u64 lo = 1;
  u64 hi = k >= 64 ? 2 : (u64{1} << (64 / k + 1));
  // invariant: lo^k <= n < hi^k
  while (hi - lo > 1) {
    const u64 mid = lo + (hi - lo) / 2;
    if (power_at_most(mid, k, n))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

double mangoldt_point(std::uint64_t d) {
  if (d < 2) return 0.0;
  for (std::uint32_t p : kSmallPrimes) {
    if (d % p == 0) {
      while (d % p == 0) d /= p;
      return d == 1 ? std::log(static_cast<double>(p)) : 0.0;
    }
  }
  if (is_prime_u64(d)) return std::log(static_cast<double>(d));
  // no prime factor below 67, so any root r has r >= 67 and k <= 10;
  // the largest exact k exposes the base p of d = p^k
  for (unsigned k = 10; k >= 2; --k) {
    const u64 r = integer_root(d, k);
    if (r < 67) continue;
    if (power_at_most(r, k, d) && !power_at_most(r, k, d - 1))
      return is_prime_u64(r) ? std::log(static_cast<double>(r)) : 0.0;
  }
  return 0.0;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t n) {
  std::vector<std::uint32_t> primes;
  if (n < 2) return primes;
  std::vector<std::uint8_t> composite(static_cast<std::size_t>(n) + 1, 0);
  for (u64 i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (u64 j = i * i; j <= n; j += i) composite[j] = 1;
  }
  return primes;
}

MangoldtTable sieve_mangoldt(std::int64_t limit, std::int64_t capacity, Exec exec) {
  if (limit < 1) throw DomainError("sieve_mangoldt: limit must be >= 1");
  return sieve_range(0, limit, capacity, exec);
}

MangoldtTable segment_sieve(std::int64_t lo, std::int64_t hi, std::int64_t capacity, Exec exec) {
  if (lo < 1 || hi <= lo) throw DomainError("segment_sieve: requires 1 <= lo < hi");
  return sieve_range(lo, hi, capacity, exec);
}

void for_each_segment(std::int64_t lo, std::int64_t hi, std::int64_t segment_length,
                      const std::function<void(const MangoldtTable&)>& visit) {
  if (lo < 0 || hi <= lo) throw DomainError("for_each_segment: requires 0 <= lo < hi");
  if (segment_length < 1) throw DomainError("for_each_segment: segment length must be positive");
  const auto primes = base_primes_for(hi);
  for (std::int64_t a = lo; a < hi; a += segment_length) {
    const std::int64_t b = std::min(hi, a + segment_length);
    std::vector<double> values(static_cast<std::size_t>(b - a));
    fill_segment(a, b, primes, values.data());
    visit(MangoldtTable(a, b, std::move(values)));
  }
}

std::vector<std::int8_t> mobius_table(std::int64_t n) {
  std::vector<std::int8_t> mu(static_cast<std::size_t>(std::max<std::int64_t>(n, 1)) + 1, 1);
  std::vector<std::uint8_t> composite(mu.size(), 0);
  std::vector<std::int64_t> primes;
  mu[0] = 0;
  for (std::int64_t i = 2; i <= n; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      mu[i] = -1;
    }
    for (std::int64_t p : primes) {
      if (i * p > n) break;
      composite[i * p] = 1;
      if (i % p == 0) {
        mu[i * p] = 0;
        break;
      }
      mu[i * p] = static_cast<std::int8_t>(-mu[i]);
    }
  }
  return mu;
}

std::vector<std::int32_t> divisor_count_table(std::int64_t n) {
  std::vector<std::int32_t> d(static_cast<std::size_t>(std::max<std::int64_t>(n, 1)) + 1, 0);
  for (std::int64_t a = 1; a <= n; ++a)
    for (std::int64_t m = a; m <= n; m += a) ++d[m];
  return d;
}

double table_sum(const MangoldtTable& table, Exec exec) {
  const auto values = table.values();
  return par::compensated_sum<double>(values.size(), [&](std::size_t i) { return values[i]; }, exec);
}

}  // namespace pertlab
