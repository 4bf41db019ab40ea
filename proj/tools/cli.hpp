#pragma once

// Command-line harness: one subcommand per verification suite. The suite
// runners are exposed so the acceptance binary drives the same code.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pertlab/config.hpp"
#include "pertlab/diophantine.hpp"
#include "pertlab/expsum.hpp"
#include "pertlab/report.hpp"

namespace pertlab::cli {

inline constexpr const char* kToolVersion = "1.0.0";

struct SuiteContext {
  RunConfig cfg;
  bool timing = false;
};

// Exit codes
inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitError = 3;

// One summary row: the largest |psi - psi_approx| - majorant over `cases`
// seeded (x, H), H <= Hmax, a tenth of them within 1e-9 of an integer.
VerificationReport psi_suite(const SuiteContext& ctx, std::int64_t cases, int Hmax);

std::vector<VerificationReport> lemma21_suite(const SuiteContext& ctx, std::int64_t cases);
std::vector<VerificationReport> prop22_suite(const SuiteContext& ctx, std::int64_t cases);
// Both families built from the perturbed phases.
std::vector<VerificationReport> dls_scenario_suite(const SuiteContext& ctx);

// Frozen seeded grid of thm1-regime instances with HMN <= 10^6.
std::vector<ExpSumInstance> thm1_grid(std::uint64_t seed, std::size_t count, double epsilon);
std::string baseline_key(const std::string& suite, const RunConfig& cfg);
// Reads a baseline value; throws ParseError when the key is absent.
double read_baseline(const std::string& path, const std::string& key);
void write_baseline(const std::string& path, const std::string& key, double value);

// Count-vs-bound over doubling sizes; the constant is fitted at the smallest
// size and each row passes when count <= slack * c * bound.
struct LadderRow {
  DioKind kind;
  std::int64_t size;
  CountResult count;
  double bound;
};
std::vector<LadderRow> dio_ladder(DioKind kind, const std::vector<std::int64_t>& sizes, double eps,
                                  double budget);
std::vector<VerificationReport> ladder_reports(const std::vector<LadderRow>& rows, double slack,
                                               std::uint64_t seed);

// Exact identity rows: random bounded g (cases of them) and g(d) = psi(x/(d+1)).
std::vector<VerificationReport> vaughan_suite(const SuiteContext& ctx,
                                              const std::vector<std::int64_t>& Ds, int cases,
                                              double x);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace pertlab::cli
