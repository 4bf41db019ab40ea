// Serial vs OpenMP kernels, with the naive reference loops as baseline.

#include <benchmark/benchmark.h>

#include "pertlab/arith.hpp"
#include "pertlab/bilinear.hpp"
#include "pertlab/diophantine.hpp"
#include "pertlab/expsum.hpp"
#include "pertlab/floor_sum.hpp"
#include "pertlab/random.hpp"
#include "pertlab/reference.hpp"

using namespace pertlab;

namespace {

Exec exec_of(const benchmark::State& s) { return s.range(1) ? Exec::parallel : Exec::serial; }

ExpSumInstance bench_instance(std::int64_t n) {
  ExpSumInstance inst;
  inst.H = 8;
  inst.M = n;
  inst.N = n;
  inst.X = 1234.5;
  inst.delta = 0.5;
  randomize_coefficients(inst, 1);
  return inst;
}

DlsInstance bench_dls(std::int64_t n) {
  Rng rng(3);
  return random_dls_instance(rng, FamilyShape::linear, n, n);
}

void BM_sieve(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(sieve_mangoldt(s.range(0), kDefaultTableCapacity, exec_of(s)));
  s.SetItemsProcessed(s.iterations() * s.range(0));
}
BENCHMARK(BM_sieve)->ArgsProduct({{1 << 20, 1 << 24}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_sieve_reference(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(reference::mangoldt_table(s.range(0)));
  s.SetItemsProcessed(s.iterations() * s.range(0));
}
BENCHMARK(BM_sieve_reference)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

void BM_bilinear(benchmark::State& s) {
  const auto inst = bench_dls(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(bilinear_form(inst.family, inst.points, exec_of(s)));
}
BENCHMARK(BM_bilinear)->ArgsProduct({{64, 512}, {0, 1}})->Unit(benchmark::kMicrosecond);

void BM_bilinear_reference(benchmark::State& s) {
  const auto inst = bench_dls(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(reference::bilinear_form(inst.family, inst.points));
}
BENCHMARK(BM_bilinear_reference)->Arg(64)->Arg(512)->Unit(benchmark::kMicrosecond);

void BM_exp_sum(benchmark::State& s) {
  const auto inst = bench_instance(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(eval_exp_sum(inst, kExpSumBudget, exec_of(s)));
  s.SetItemsProcessed(s.iterations() * static_cast<std::int64_t>(inst.terms()));
}
BENCHMARK(BM_exp_sum)->ArgsProduct({{64, 256}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_exp_sum_reference(benchmark::State& s) {
  const auto inst = bench_instance(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(reference::exp_sum(inst));
  s.SetItemsProcessed(s.iterations() * static_cast<std::int64_t>(inst.terms()));
}
BENCHMARK(BM_exp_sum_reference)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_s_lambda_blocked(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(s_lambda_blocked(s.range(0), kBlockedBudget, exec_of(s)));
}
BENCHMARK(BM_s_lambda_blocked)->ArgsProduct({{1'000'000, 1'000'000'000}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_s_lambda_direct(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(s_lambda_direct(s.range(0), kDirectBudget, exec_of(s)));
}
BENCHMARK(BM_s_lambda_direct)->ArgsProduct({{1'000'000}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_s_lambda_reference(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(reference::s_lambda(s.range(0)));
}
BENCHMARK(BM_s_lambda_reference)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_count_B0(benchmark::State& s) {
  const auto N = s.range(0);
  for (auto _ : s) benchmark::DoNotOptimize(count_B0(N, 1.5, static_cast<double>(N * N), exec_of(s)));
}
BENCHMARK(BM_count_B0)->ArgsProduct({{16, 32}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_count_B0_reference(benchmark::State& s) {
  const auto N = s.range(0);
  for (auto _ : s) benchmark::DoNotOptimize(reference::count_B0(N, 1.5, static_cast<double>(N * N)));
}
BENCHMARK(BM_count_B0_reference)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_count_B2(benchmark::State& s) {
  const PerturbationSpec spec(1.0, 0.5, 16);
  const auto N = s.range(0);
  for (auto _ : s)
    benchmark::DoNotOptimize(count_B2(N, 1.0, static_cast<double>(N), spec, SupMode::endpoints, exec_of(s)));
}
BENCHMARK(BM_count_B2)->ArgsProduct({{16, 32}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
