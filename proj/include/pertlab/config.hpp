#pragma once

// Run configuration: budgets, tolerances, default epsilons, seed and
// baseline path. Read from a key=value file ('#' starts a comment), then
// overridden by environment variables PERTLAB_<KEY> (key upper-cased).

#include <cstdint>
#include <map>
#include <string>

#include "pertlab/report.hpp"

namespace pertlab {

struct RunConfig {
  std::uint64_t seed = 20240607;
  ReportFormat format = ReportFormat::csv;
  int workers = 0;  // 0: OpenMP default

  double expsum_budget = 1e8;
  std::int64_t direct_budget = 10'000'000;
  std::int64_t blocked_budget = 1'000'000'000'000;
  std::int64_t sieve_capacity = 100'000'000;
  double dio_budget = 5e9;

  double vaaler_tol = 1e-12;
  double lemma21_tol = 1e-9;
  double vaughan_tol = 1e-9;
  double floor_tol = 1e-6;

  double eps_expsum = 0.05;
  double eps_dio = 0.1;

  std::string baseline_path;

  // Applies one key; throws ParseError for unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
  // Throws DomainError when a budget is not positive.
  void validate() const;

  // Canonical key=value lines for the result-affecting keys (not workers or format).
  std::string canonical() const;
  std::string hash() const;
};

RunConfig load_config(const std::string& path);
// Reads PERTLAB_<KEY> for every known key.
void apply_env_overrides(RunConfig& cfg);

}  // namespace pertlab
