#include <cmath>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "pertlab/report.hpp"

using namespace pertlab;

namespace {

std::vector<VerificationReport> sample_rows() {
  VerificationReport a;
  a.suite = "demo";
  a.which = "thm1";
  a.param("H", std::int64_t{16});
  a.param("X", 256.0);
  a.param("label", "a,b");
  a.set_sides(1.5, 3.0);
  a.seed = 7;
  VerificationReport b;
  b.suite = "demo";
  b.which = "value";
  b.set_sides(2.0, 0.0);
  b.pass = false;
  return {a, b};
}

}  // namespace

TEST_CASE("set_sides") {
  VerificationReport r;
  r.set_sides(1.0, 4.0);
  CHECK(r.ratio == 0.25);
  r.set_sides(1.0, 0.0);
  CHECK(std::isnan(r.ratio));
  r.set_sides(1.0, -2.0);
  CHECK(std::isnan(r.ratio));
}

TEST_CASE("format_double round trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.02e23, -0.0, 3328.0}) CHECK(std::stod(format_double(v)) == v);
  CHECK(format_double(3328.0) == "3328");
}

TEST_CASE("fnv1a known vectors") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("csv layout") {
  std::ostringstream out;
  write_reports(out, sample_rows(), ReportFormat::csv, {"1.0.0", "abc", "demo"});
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == kCsvHeader);
  std::getline(in, line);
  CHECK(line.rfind("demo,thm1,", 0) == 0);
  CHECK(line.find(",1.5,3,0.5,pass,7,0") != std::string::npos);
  std::getline(in, line);
  CHECK(line.find("nan,fail") != std::string::npos);
  CHECK(!std::getline(in, line));
}

TEST_CASE("json mirrors csv with meta") {
  std::ostringstream out;
  write_reports(out, sample_rows(), ReportFormat::json, {"1.0.0", "abc", "demo"});
  const auto j = nlohmann::json::parse(out.str());
  CHECK(j["meta"]["version"] == "1.0.0");
  CHECK(j["meta"]["config_hash"] == "abc");
  REQUIRE(j["rows"].size() == 2);
  CHECK(j["rows"][0]["suite"] == "demo");
  CHECK(j["rows"][0]["params"]["label"] == "a,b");
  CHECK(j["rows"][0]["verdict"] == "pass");
  CHECK(j["rows"][1]["verdict"] == "fail");
  CHECK(j["rows"][0]["seed"] == 7);
}

TEST_CASE("writing is deterministic") {
  std::ostringstream a, b;
  write_reports(a, sample_rows(), ReportFormat::csv, {"1.0.0", "abc", "demo"});
  write_reports(b, sample_rows(), ReportFormat::csv, {"1.0.0", "abc", "demo"});
  CHECK(a.str() == b.str());
}
