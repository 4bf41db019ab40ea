#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "pertlab/errors.hpp"

using namespace pertlab;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> csv_fields(const std::string& line) {
  std::vector<std::string> f;
  std::string cur;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') quoted = !quoted;
    else if (c == ',' && !quoted) {
      f.push_back(cur);
      cur.clear();
    } else cur += c;
  }
  f.push_back(cur);
  return f;
}

std::string second_line(const std::string& s) {
  std::istringstream in(s);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  return line;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("pertlab_test_" + name);
}

}  // namespace

TEST_CASE("msum direct reports log 60") {
  const auto r = run({"msum", "--x", "10", "--method", "direct"});
  CHECK(r.code == 0);
  const auto f = csv_fields(second_line(r.out));
  REQUIRE(f.size() == 9);
  CHECK(f[0] == "msum");
  CHECK(std::stod(f[3]) == doctest::Approx(std::log(60.0)).epsilon(1e-15));
  CHECK(f[6] == "pass");
}

TEST_CASE("expcalc balance prints E = x^{17/36}") {
  const auto r = run({"expcalc", "balance", "--terms", "E, x^{17/19}*E^{-17/19}, x^{212/285}*E^{-329/570}",
                      "--range", "8/17:1/2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("E = x^{17/36}") != std::string::npos);
  const auto u = run({"expcalc", "balance", "--terms", "E, x * E^{-1}"});
  CHECK(u.out.find("E = x^{1/2}") != std::string::npos);
}

TEST_CASE("expcalc substitute and dominate") {
  const auto s = run({"expcalc", "substitute", "--expr", "(x^2 * D^7)^{1/12}", "--var", "D", "--by", "x^{11/21}"});
  CHECK(s.code == 0);
  CHECK(s.out.find("x^{17/36}") != std::string::npos);
  const auto d = run({"expcalc", "dominate", "--a", "D^{8/9}", "--b", "D^{17/19}", "--range", "11/21:3/4"});
  CHECK(d.code == 0);
  const auto f = run({"expcalc", "dominate", "--a", "D", "--b", "D^{17/19}", "--range", "11/21:3/4"});
  CHECK(f.code == cli::kExitFail);
  CHECK(f.err.find("FAIL") != std::string::npos);
}

TEST_CASE("dio count and json format") {
  const auto r = run({"--format", "json", "dio", "--kind", "B0", "--N", "2", "--beta", "2", "--X", "100"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["meta"]["command"] == "dio");
  CHECK(j["meta"]["version"] == cli::kToolVersion);
  CHECK(j["rows"][0]["lhs"] == "6");
  const auto b1 = run({"dio", "--kind", "B1", "--H", "2", "--M", "2", "--alpha", "1", "--beta", "1", "--X", "100"});
  CHECK(csv_fields(second_line(b1.out))[3] == "6");
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"bogus"}).code == cli::kExitUsage);
  CHECK(run({"msum"}).code == cli::kExitUsage);
  CHECK(run({"msum", "--x", "ten"}).code == cli::kExitUsage);
  CHECK(run({"expcalc", "substitute", "--expr", "y^2", "--var", "D", "--by", "x"}).code == cli::kExitUsage);
  const auto big = run({"msum", "--x", "20000000", "--method", "direct"});
  CHECK(big.code == cli::kExitError);
  CHECK(big.err.find("budget") != std::string::npos);
  CHECK(run({"--config", "/nonexistent/cfg", "msum", "--x", "3"}).code == cli::kExitUsage);
  CHECK(run({"fit", "--lo", "1e4", "--hi", "1e6", "--points", "5", "--threshold", "-1"}).code == cli::kExitFail);
}

TEST_CASE("reruns are byte-identical") {
  const std::vector<std::string> args = {"psi", "--cases", "2000"};
  CHECK(run(args).out == run(args).out);
  const std::vector<std::string> dls = {"dls", "--suite", "all", "--cases", "40"};
  CHECK(run(dls).out == run(dls).out);
  const std::vector<std::string> es = {"expsum", "--mode", "scan", "--cases", "30"};
  const auto a = run(es), b = run(es);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("every report row has the fixed columns") {
  for (const auto& args : std::vector<std::vector<std::string>>{{"sieve", "--hi", "10000", "--samples", "50"},
                                                                {"vaughan", "--D", "101", "--cases", "2"},
                                                                {"frak-s", "--x", "100", "--D", "5"},
                                                                {"dio", "--kind", "B3", "--N", "16", "--X", "8",
                                                                 "--delta", "0.5", "--M", "8", "--mode", "both"}}) {
    const auto r = run(args);
    CHECK(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == kCsvHeader);
    int rows = 0;
    while (std::getline(in, line)) {
      CHECK(csv_fields(line).size() == 9);
      ++rows;
    }
    CHECK(rows >= 1);
  }
}

TEST_CASE("worker count does not change reports") {
  const std::vector<std::string> base = {"vaughan", "--D", "1000", "--cases", "3"};
  auto with = [&](const char* w) {
    std::vector<std::string> a = {"--workers", w};
    a.insert(a.end(), base.begin(), base.end());
    return run(a).out;
  };
  CHECK(with("1") == with("2"));
  CHECK(with("1") == with("8"));
}

TEST_CASE("config file, environment overrides and hash") {
  RunConfig c;
  const auto h0 = c.hash();
  c.workers = 8;
  c.format = ReportFormat::json;
  CHECK(c.hash() == h0);
  c.set("seed", "5");
  CHECK(c.seed == 5);
  CHECK(c.hash() != h0);
  CHECK_THROWS_AS(c.set("nonsense", "1"), ParseError);
  CHECK_THROWS_AS(c.set("seed", "abc"), ParseError);
  RunConfig bad;
  bad.direct_budget = 0;
  CHECK_THROWS_AS(bad.validate(), DomainError);

  const auto path = temp_file("cfg.txt");
  {
    std::ofstream f(path);
    f << "# comment\nseed = 99\neps_dio=0.2\n\n";
  }
  const auto loaded = load_config(path.string());
  CHECK(loaded.seed == 99);
  CHECK(loaded.eps_dio == 0.2);

  ::setenv("PERTLAB_SEED", "1234", 1);
  RunConfig e;
  apply_env_overrides(e);
  ::unsetenv("PERTLAB_SEED");
  CHECK(e.seed == 1234);

  const auto r = run({"--config", path.string(), "msum", "--x", "10"});
  CHECK(csv_fields(second_line(r.out))[7] == "99");
  std::filesystem::remove(path);
}

TEST_CASE("baseline files") {
  const auto path = temp_file("baseline.json");
  std::filesystem::remove(path);
  cli::write_baseline(path.string(), "k1", 0.125);
  cli::write_baseline(path.string(), "k2", 2.5);
  CHECK(cli::read_baseline(path.string(), "k1") == 0.125);
  CHECK(cli::read_baseline(path.string(), "k2") == 2.5);
  CHECK_THROWS_AS(cli::read_baseline(path.string(), "k3"), ParseError);
  RunConfig c;
  CHECK(cli::baseline_key("s", c) != cli::baseline_key("t", c));
  std::filesystem::remove(path);
}
