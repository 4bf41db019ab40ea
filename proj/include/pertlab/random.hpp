#pragma once

// Seeded generators with a platform-independent mapping from engine bits to
// values, so suites reproduce bit-identically wherever they run.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace pertlab {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform integer in [lo, hi]
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

  std::complex<double> unimodular() {
    const double t = 2.0 * std::numbers::pi * uniform();
    return {std::cos(t), std::sin(t)};
  }

  // modulus uniform in [0, 1], uniform argument
  std::complex<double> in_disc() { return uniform() * unimodular(); }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace pertlab

namespace pertlab {

// Stateless counter-based values for generators that are called concurrently.
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline double hashed_uniform(std::uint64_t seed, std::uint64_t i, std::uint64_t j = 0) {
  const std::uint64_t h = splitmix64(splitmix64(splitmix64(seed) ^ i) ^ (j * 0x632be59bd9b4e019ULL));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

inline std::complex<double> hashed_unimodular(std::uint64_t seed, std::uint64_t i, std::uint64_t j = 0) {
  const double t = 2.0 * std::numbers::pi * hashed_uniform(seed, i, j);
  return {std::cos(t), std::sin(t)};
}

}  // namespace pertlab
