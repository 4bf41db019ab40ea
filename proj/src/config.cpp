#include "pertlab/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "pertlab/errors.hpp"

namespace pertlab {

namespace {

const std::vector<std::string>& keys() {
  static const std::vector<std::string> k = {
      "seed",          "format",       "workers",      "expsum_budget", "direct_budget",
      "blocked_budget", "sieve_capacity", "dio_budget",  "vaaler_tol",    "lemma21_tol",
      "vaughan_tol",   "floor_tol",    "eps_expsum",   "eps_dio",       "baseline_path"};
  return k;
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw ParseError("config: bad number for " + key + ": '" + v + "'");
  return out;
}

std::int64_t to_int(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  if (d != static_cast<double>(static_cast<std::int64_t>(d)))
    throw ParseError("config: " + key + " must be an integer, got '" + v + "'");
  return static_cast<std::int64_t>(d);
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (key == "seed") {
    try {
      std::size_t used = 0;
      seed = std::stoull(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
    } catch (const std::exception&) {
      throw ParseError("config: bad seed '" + v + "'");
    }
  } else if (key == "format") {
    if (v == "csv")
      format = ReportFormat::csv;
    else if (v == "json")
      format = ReportFormat::json;
    else
      throw ParseError("config: format must be csv or json, got '" + v + "'");
  } else if (key == "workers") {
    workers = static_cast<int>(to_int(key, v));
  } else if (key == "expsum_budget") {
    expsum_budget = to_double(key, v);
  } else if (key == "direct_budget") {
    direct_budget = to_int(key, v);
  } else if (key == "blocked_budget") {
    blocked_budget = to_int(key, v);
  } else if (key == "sieve_capacity") {
    sieve_capacity = to_int(key, v);
  } else if (key == "dio_budget") {
    dio_budget = to_double(key, v);
  } else if (key == "vaaler_tol") {
    vaaler_tol = to_double(key, v);
  } else if (key == "lemma21_tol") {
    lemma21_tol = to_double(key, v);
  } else if (key == "vaughan_tol") {
    vaughan_tol = to_double(key, v);
  } else if (key == "floor_tol") {
    floor_tol = to_double(key, v);
  } else if (key == "eps_expsum") {
    eps_expsum = to_double(key, v);
  } else if (key == "eps_dio") {
    eps_dio = to_double(key, v);
  } else if (key == "baseline_path") {
    baseline_path = v;
  } else {
    throw ParseError("config: unknown key '" + key + "'");
  }
}

void RunConfig::validate() const {
  if (!(expsum_budget > 0) || direct_budget <= 0 || blocked_budget <= 0 || sieve_capacity <= 0 ||
      !(dio_budget > 0))
    throw DomainError("config: every budget must be positive");
  if (workers < 0) throw DomainError("config: workers must be >= 0");
}

std::string RunConfig::canonical() const {
  std::ostringstream out;
  out << "seed=" << seed << '\n'
      << "expsum_budget=" << format_double(expsum_budget) << '\n'
      << "direct_budget=" << direct_budget << '\n'
      << "blocked_budget=" << blocked_budget << '\n'
      << "sieve_capacity=" << sieve_capacity << '\n'
      << "dio_budget=" << format_double(dio_budget) << '\n'
      << "vaaler_tol=" << format_double(vaaler_tol) << '\n'
      << "lemma21_tol=" << format_double(lemma21_tol) << '\n'
      << "vaughan_tol=" << format_double(vaughan_tol) << '\n'
      << "floor_tol=" << format_double(floor_tol) << '\n'
      << "eps_expsum=" << format_double(eps_expsum) << '\n'
      << "eps_dio=" << format_double(eps_dio) << '\n';
  return out.str();
}

std::string RunConfig::hash() const { return fnv1a_hex(canonical()); }

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("config: cannot open '" + path + "'");
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("config: line " + std::to_string(lineno) + " is not key=value");
    cfg.set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return cfg;
}

void apply_env_overrides(RunConfig& cfg) {
  for (const auto& key : keys()) {
    std::string name = "PERTLAB_";
    for (char c : key) name += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (const char* v = std::getenv(name.c_str())) cfg.set(key, v);
  }
}

}  // namespace pertlab
