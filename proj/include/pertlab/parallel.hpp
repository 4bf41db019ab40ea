#pragma once

// Deterministic parallel reduction.
//
// An index range [0, n) is cut into chunks of a fixed size. Each chunk is
// summed by one worker in index order with Neumaier compensation, and the
// chunk partials are combined by a pairwise tree whose shape depends only on
// the number of chunks. The result is therefore bit-identical for any worker
// count and for the serial path.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace pertlab {

enum class Exec { serial, parallel };

namespace par {

inline constexpr std::size_t kDefaultChunk = 4096;

int max_workers();

// Sets the OpenMP worker count for the lifetime of the object.
class WorkerScope {
 public:
  explicit WorkerScope(int workers);
  ~WorkerScope();
  WorkerScope(const WorkerScope&) = delete;
  WorkerScope& operator=(const WorkerScope&) = delete;

 private:
  int previous_;
};

template <class T>
struct Neumaier {
  T sum{};
  T comp{};

  void add(T v) {
    T t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  T value() const { return sum + comp; }
};

template <>
struct Neumaier<std::complex<double>> {
  Neumaier<double> re;
  Neumaier<double> im;

  void add(std::complex<double> v) {
    re.add(v.real());
    im.add(v.imag());
  }
  std::complex<double> value() const { return {re.value(), im.value()}; }
};

// Fixed-shape pairwise tree: level by level, adjacent pairs are added.
template <class T>
T pairwise_reduce(std::vector<T> v) {
  if (v.empty()) return T{};
  while (v.size() > 1) {
    std::size_t half = v.size() / 2;
    for (std::size_t i = 0; i < half; ++i) v[i] = v[2 * i] + v[2 * i + 1];
    if (v.size() % 2 == 1) {
      v[half] = v.back();
      v.resize(half + 1);
    } else {
      v.resize(half);
    }
  }
  return v.front();
}

// Sum of term(i) for i in [0, n). `term` must be safe to call concurrently.
template <class T, class F>
T compensated_sum(std::size_t n, F&& term, Exec exec = Exec::parallel,
                  std::size_t chunk = kDefaultChunk) {
  if (n == 0) return T{};
  if (chunk == 0) chunk = 1;
  const std::size_t chunks = (n + chunk - 1) / chunk;
  std::vector<T> partial(chunks);
  const bool parallel = exec == Exec::parallel && chunks > 1;
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
    Neumaier<T> acc;
    const std::size_t begin = static_cast<std::size_t>(c) * chunk;
    const std::size_t end = begin + chunk < n ? begin + chunk : n;
    for (std::size_t i = begin; i < end; ++i) acc.add(term(i));
    partial[static_cast<std::size_t>(c)] = acc.value();
  }
  return pairwise_reduce(std::move(partial));
}

// Integer reduction; order-independent by construction.
template <class F>
std::int64_t count_sum(std::size_t n, F&& term, Exec exec = Exec::parallel) {
  std::int64_t total = 0;
  const bool parallel = exec == Exec::parallel && n > 1;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : total) if (parallel)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
    total += term(static_cast<std::size_t>(i));
  return total;
}

// Runs body(i) for i in [0, n); bodies must write disjoint outputs.
template <class F>
void for_each_index(std::size_t n, F&& body, Exec exec = Exec::parallel) {
  const bool parallel = exec == Exec::parallel && n > 1;
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
    body(static_cast<std::size_t>(i));
}

}  // namespace par
}  // namespace pertlab
