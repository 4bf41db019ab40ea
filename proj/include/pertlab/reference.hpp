#pragma once

// Naive serial kernels: plain loops, no chunking, no compensation. They are
// the baselines for the benchmarks and independent cross-checks in tests.

#include <complex>
#include <cstdint>
#include <vector>

#include "pertlab/bilinear.hpp"
#include "pertlab/expsum.hpp"

namespace pertlab::reference {

// Lambda(d) by trial division.
double mangoldt_trial(std::int64_t d);

// Lambda on [0, limit] by trial division per entry; entry 0 is 0.
std::vector<double> mangoldt_table(std::int64_t limit);

std::complex<double> bilinear_form(const FunctionFamily& family, const PointSet& points);

std::complex<double> exp_sum(const ExpSumInstance& inst);

// sum_{n <= x} Lambda([x/n]) with trial-division Lambda, memoized per value
double s_lambda(std::int64_t x);

std::int64_t count_B0(std::int64_t N, double beta, double X);

}  // namespace pertlab::reference
