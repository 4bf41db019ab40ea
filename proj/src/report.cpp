#include "pertlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <limits>

#include "json.hpp"

namespace pertlab {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void VerificationReport::set_sides(double l, double r) {
  lhs = l;
  rhs = r;
  ratio = r > 0.0 ? l / r : std::numeric_limits<double>::quiet_NaN();
}

void VerificationReport::param(const std::string& key, const std::string& value) {
  params.emplace_back(key, value);
}

void VerificationReport::param(const std::string& key, double value) {
  params.emplace_back(key, format_double(value));
}

void VerificationReport::param(const std::string& key, std::int64_t value) {
  params.emplace_back(key, std::to_string(value));
}

std::string VerificationReport::param_string() const {
  std::string s;
  for (const auto& [k, v] : params) {
    if (!s.empty()) s += ';';
    s += k + '=' + v;
  }
  return s;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_reports(std::ostream& out, const std::vector<VerificationReport>& rows,
                   ReportFormat format, const ReportMeta& meta) {
  if (format == ReportFormat::csv) {
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
      out << csv_escape(r.suite) << ',' << csv_escape(r.which) << ',' << csv_escape(r.param_string())
          << ',' << format_double(r.lhs) << ',' << format_double(r.rhs) << ','
          << format_double(r.ratio) << ',' << (r.pass ? "pass" : "fail") << ',' << r.seed << ','
          << format_double(r.wall_s) << '\n';
    }
    out.flush();
    return;
  }
  nlohmann::ordered_json doc;
  doc["meta"] = {{"version", meta.tool_version},
                 {"config_hash", meta.config_hash},
                 {"command", meta.command}};
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    doc["rows"].push_back({{"suite", r.suite},
                           {"which", r.which},
                           {"params", params},
                           {"lhs", format_double(r.lhs)},
                           {"rhs", format_double(r.rhs)},
                           {"ratio", format_double(r.ratio)},
                           {"verdict", r.pass ? "pass" : "fail"},
                           {"seed", r.seed},
                           {"wall_s", format_double(r.wall_s)}});
  }
  out << doc.dump(2) << '\n';
  out.flush();
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace pertlab
