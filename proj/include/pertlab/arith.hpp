#pragma once

// Arithmetic substrate: Mangoldt and Moebius sieves, pointwise Lambda via
// perfect-power extraction and deterministic Miller-Rabin, the sawtooth psi.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pertlab/parallel.hpp"

namespace pertlab {

inline constexpr std::int64_t kDefaultTableCapacity = 100'000'000;
inline constexpr std::int64_t kDefaultSegmentLength = 1 << 18;

// Lambda(d) for the integers lo < d <= hi. Immutable after construction.
class MangoldtTable {
 public:
  MangoldtTable() = default;
  MangoldtTable(std::int64_t lo, std::int64_t hi, std::vector<double> values);

  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }
  std::size_t size() const { return values_.size(); }
  bool contains(std::int64_t d) const { return d > lo_ && d <= hi_; }

  // Lambda(d); d must lie in (lo, hi].
  double operator()(std::int64_t d) const { return values_[static_cast<std::size_t>(d - lo_ - 1)]; }
  double at(std::int64_t d) const;
  std::span<const double> values() const { return values_; }

  // Flat binary segment: int64 lo, int64 hi, then hi-lo float64, all little-endian.
  void write(std::ostream& out) const;
  static MangoldtTable read(std::istream& in);

 private:
  std::int64_t lo_ = 0;
  std::int64_t hi_ = 0;
  std::vector<double> values_;
};

// Fractional part in [0, 1), also for negative t.
double frac_part(double t);

// psi(t) = {t} - 1/2.
double psi_frac(double t);

bool is_prime_u64(std::uint64_t n);

// floor(n^(1/k)) for k >= 1.
std::uint64_t integer_root(std::uint64_t n, unsigned k);

// log p when d = p^k, else 0.
double mangoldt_point(std::uint64_t d);

// Primes p <= n in increasing order.
std::vector<std::uint32_t> primes_up_to(std::uint32_t n);

MangoldtTable sieve_mangoldt(std::int64_t limit, std::int64_t capacity = kDefaultTableCapacity,
                             Exec exec = Exec::parallel);

MangoldtTable segment_sieve(std::int64_t lo, std::int64_t hi,
                            std::int64_t capacity = kDefaultTableCapacity,
                            Exec exec = Exec::parallel);

// Streams (lo, hi] in consecutive segments of at most `segment_length`
// entries, in increasing order. Memory stays O(segment_length + sqrt(hi)).
void for_each_segment(std::int64_t lo, std::int64_t hi, std::int64_t segment_length,
                      const std::function<void(const MangoldtTable&)>& visit);

// Moebius function on [0, n]; entry 0 is unused.
std::vector<std::int8_t> mobius_table(std::int64_t n);

// Divisor-count function on [0, n]; entry 0 is unused.
std::vector<std::int32_t> divisor_count_table(std::int64_t n);

// Sum of Lambda over the table by the deterministic reduction.
double table_sum(const MangoldtTable& table, Exec exec = Exec::parallel);

}  // namespace pertlab
