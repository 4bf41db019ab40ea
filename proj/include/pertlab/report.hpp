#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace pertlab {

enum class ReportFormat { csv, json };

// Result of one inequality check. ratio = lhs / rhs when rhs > 0, NaN otherwise.
struct VerificationReport {
  std::string suite;
  std::vector<std::pair<std::string, std::string>> params;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool pass = true;
  std::uint64_t seed = 0;
  std::string which;
  double wall_s = 0.0;

  void set_sides(double l, double r);
  void param(const std::string& key, const std::string& value);
  void param(const std::string& key, double value);
  void param(const std::string& key, std::int64_t value);
  std::string param_string() const;
};

// Shortest round-trip decimal for v ("%.17g"); stable across runs.
std::string format_double(double v);

// Fixed CSV columns, in order.
inline constexpr const char* kCsvHeader = "suite,which,params,lhs,rhs,ratio,verdict,seed,wall_s";

struct ReportMeta {
  std::string tool_version;
  std::string config_hash;
  std::string command;
};

// Writes rows as CSV (header + one line per row) or as JSON
// ({"meta": {...}, "rows": [...]}) with the same fields.
void write_reports(std::ostream& out, const std::vector<VerificationReport>& rows,
                   ReportFormat format, const ReportMeta& meta);

// FNV-1a 64-bit, hex.
std::string fnv1a_hex(const std::string& text);

}  // namespace pertlab
