#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pertlab/arith.hpp"
#include "pertlab/bilinear.hpp"
#include "pertlab/errors.hpp"
#include "pertlab/exponent.hpp"
#include "pertlab/floor_sum.hpp"
#include "pertlab/random.hpp"
#include "pertlab/vaaler.hpp"
#include "pertlab/vaughan.hpp"

namespace pertlab::cli {

namespace {

using Clock = std::chrono::steady_clock;

class Stopwatch {
 public:
  explicit Stopwatch(bool on) : on_(on), start_(Clock::now()) {}
  double lap() {
    if (!on_) return 0.0;
    const auto now = Clock::now();
    const double s = std::chrono::duration<double>(now - start_).count();
    start_ = now;
    return s;
  }

 private:
  bool on_;
  Clock::time_point start_;
};

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t i) { return splitmix64(seed ^ splitmix64(i)); }

}  // namespace

// --- suites ---------------------------------------------------------------------

VerificationReport psi_suite(const SuiteContext& ctx, std::int64_t cases, int Hmax) {
  Stopwatch sw(ctx.timing);
  const auto n = static_cast<std::size_t>(cases);
  std::vector<double> excess(n);
  par::for_each_index(n, [&](std::size_t i) {
    const std::uint64_t s = derive_seed(ctx.cfg.seed, i);
    const int H = 1 + static_cast<int>(hashed_uniform(s, 1) * Hmax);
    double x = hashed_uniform(s, 2);
    if (i % 10 == 0) x = hashed_uniform(s, 3) < 0.5 ? x * 1e-9 : 1.0 - x * 1e-9;
    excess[i] = std::abs(psi_frac(x) - psi_approx(x, H)) - error_majorant(x, H);
  });
  std::int64_t fails = 0;
  double worst = -1.0;
  for (double e : excess) {
    worst = std::max(worst, e);
    if (e > ctx.cfg.vaaler_tol) ++fails;
  }
  VerificationReport r;
  r.suite = "psi";
  r.which = "vaaler";
  r.seed = ctx.cfg.seed;
  r.param("cases", cases);
  r.param("Hmax", static_cast<std::int64_t>(Hmax));
  r.param("failures", fails);
  r.set_sides(worst, ctx.cfg.vaaler_tol);
  r.pass = fails == 0;
  r.wall_s = sw.lap();
  return r;
}

std::vector<VerificationReport> lemma21_suite(const SuiteContext& ctx, std::int64_t cases) {
  std::vector<VerificationReport> out;
  Stopwatch sw(ctx.timing);
  for (std::int64_t i = 0; i < cases; ++i) {
    const std::uint64_t s = derive_seed(ctx.cfg.seed, static_cast<std::uint64_t>(i));
    Rng rng(s);
    const auto points = random_point_set(rng);
    const double T = rng.uniform(0.05, 20.0);
    const double eta = rng.uniform(0.01, 2.0);
    auto r = lemma21_check(points, T, eta);
    r.pass = r.lhs <= r.rhs * (1.0 + ctx.cfg.lemma21_tol);
    r.seed = s;
    r.param("n", static_cast<std::int64_t>(points.size()));
    r.param("Y", points.Y());
    r.param("T", T);
    r.param("eta", eta);
    r.wall_s = sw.lap();
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<VerificationReport> prop22_suite(const SuiteContext& ctx, std::int64_t cases) {
  std::vector<VerificationReport> out;
  Stopwatch sw(ctx.timing);
  const FamilyShape shapes[] = {FamilyShape::linear, FamilyShape::monotone, FamilyShape::constant};
  for (std::int64_t i = 0; i < cases; ++i) {
    const std::uint64_t s = derive_seed(ctx.cfg.seed ^ 0x22ULL, static_cast<std::uint64_t>(i));
    Rng rng(s);
    const auto shape = shapes[i % 3];
    auto inst = random_dls_instance(rng, shape);
    auto r = dls_check(inst.family, inst.points, inst.K);
    r.seed = s;
    r.param("shape", std::string(shape == FamilyShape::linear     ? "linear"
                                 : shape == FamilyShape::monotone ? "monotone"
                                                                  : "constant"));
    r.param("members", static_cast<std::int64_t>(inst.family.size()));
    r.param("points", static_cast<std::int64_t>(inst.points.size()));
    r.param("C_dls", dls_constant(inst.K));
    r.wall_s = sw.lap();
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<VerificationReport> dls_scenario_suite(const SuiteContext& ctx) {
  struct Shape {
    std::int64_t H, M, N;
    double X, alpha, beta, gamma, delta;
  };
  const Shape shapes[] = {{4, 4, 4, 50.0, 1.0, 1.0, 1.0, 0.5},   {8, 4, 4, 200.0, 1.5, 1.0, 1.0, 1.0},
                          {4, 8, 6, 30.0, 1.0, 2.0, 1.5, 2.0},   {6, 6, 8, 500.0, 0.5, 1.0, 1.0, 0.25},
                          {3, 5, 5, 10.0, 2.0, 0.5, 2.0, 1.0}};
  std::vector<VerificationReport> out;
  Stopwatch sw(ctx.timing);
  std::uint64_t k = 0;
  for (const auto& sh : shapes) {
    for (int regime = 1; regime <= 2; ++regime) {
      const std::uint64_t s = derive_seed(ctx.cfg.seed ^ 0x44ULL, k++);
      auto inst = regime == 1 ? regime_one_scenario(sh.H, sh.M, sh.N, sh.X, sh.alpha, sh.beta,
                                                    sh.gamma, sh.delta, s)
                              : regime_two_scenario(sh.H, sh.M, sh.N, sh.X, sh.alpha, sh.beta,
                                                    sh.gamma, sh.delta, s);
      auto r = dls_check(inst.family, inst.points, inst.K);
      r.which = regime == 1 ? "scenario_phi_pairs" : "scenario_psi";
      r.seed = s;
      r.param("H", sh.H);
      r.param("M", sh.M);
      r.param("N", sh.N);
      r.param("X", sh.X);
      r.param("delta", sh.delta);
      r.param("K", inst.K);
      r.param("C_dls", dls_constant(inst.K));
      r.wall_s = sw.lap();
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<ExpSumInstance> thm1_grid(std::uint64_t seed, std::size_t count, double epsilon) {
  std::vector<ExpSumInstance> grid;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t s = derive_seed(seed ^ 0x7431ULL, i);
    Rng rng(s);
    ExpSumInstance inst;
    inst.H = rng.integer(1, 32);
    inst.M = rng.integer(1, 48);
    inst.N = rng.integer(1, 48);
    while (inst.terms() > 1e6) inst.N = std::max<std::int64_t>(1, inst.N / 2);
    inst.alpha = rng.uniform(0.5, 2.0);
    inst.beta = rng.uniform(0.5, 2.0);
    inst.gamma = rng.uniform(0.5, 2.0);
    inst.delta = i % 5 == 0 ? 0.0 : rng.uniform(0.01, 2.0);
    inst.X = std::exp(rng.uniform(std::log(2.0), std::log(1e5)));
    inst.epsilon = epsilon;
    inst.K = regime_min_K(inst);
    inst.label = "grid" + std::to_string(i);
    randomize_coefficients(inst, s);
    grid.push_back(std::move(inst));
  }
  return grid;
}

std::string baseline_key(const std::string& suite, const RunConfig& cfg) {
  return suite + ":" + cfg.hash();
}

double read_baseline(const std::string& path, const std::string& key) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open baseline file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParseError("baseline file '" + path + "': " + e.what());
  }
  if (!j.contains(key)) throw ParseError("baseline file '" + path + "' has no entry '" + key + "'");
  return j.at(key).at("max_ratio").get<double>();
}

void write_baseline(const std::string& path, const std::string& key, double value) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  if (std::ifstream in(path); in) {
    try {
      in >> j;
    } catch (const std::exception&) {
      j = nlohmann::ordered_json::object();
    }
  }
  j[key] = {{"max_ratio", value}, {"max_ratio_text", format_double(value)}};
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write baseline file '" + path + "'");
  out << j.dump(2) << '\n';
}

std::vector<LadderRow> dio_ladder(DioKind kind, const std::vector<std::int64_t>& sizes, double eps,
                                  double budget) {
  std::vector<LadderRow> rows;
  for (auto n : sizes) {
    DioParams p;
    p.epsilon = eps;
    CountResult c;
    switch (kind) {
      case DioKind::B0:
        p.N = n;
        p.X = static_cast<double>(n * n);
        c = count_B0(n, 1.5, p.X, Exec::parallel, budget);
        break;
      case DioKind::B1:
        p.H = p.M = n;
        p.X = static_cast<double>(n * n);
        c = count_B1(n, n, 1.5, 0.5, p.X, Exec::parallel, budget);
        break;
      case DioKind::B2: {
        p.N = n;
        const PerturbationSpec spec(1.0, 0.5, n);
        p.X = 0.5 * std::pow(static_cast<double>(n), 1.0) / spec.U();
        c = count_B2(n, 1.0, p.X, spec, SupMode::endpoints, Exec::parallel, budget);
        break;
      }
      case DioKind::B3: {
        p.N = n;
        const PerturbationSpec spec(1.0, 0.5, n, PerturbationSpec::Kind::nu);
        p.X = static_cast<double>(n);
        c = count_B3(n, 1.0, p.X, spec, SupMode::endpoints, Exec::parallel, budget);
        break;
      }
    }
    rows.push_back({kind, n, c, dio_bound(kind, p)});
  }
  return rows;
}

std::vector<VerificationReport> ladder_reports(const std::vector<LadderRow>& rows, double slack,
                                               std::uint64_t seed) {
  std::vector<VerificationReport> out;
  if (rows.empty()) return out;
  const double c = static_cast<double>(rows.front().count.count) / rows.front().bound;
  for (const auto& row : rows) {
    VerificationReport r;
    r.suite = "dio";
    r.which = to_string(row.kind) + "_ladder";
    r.seed = seed;
    r.param("size", row.size);
    r.param("count", row.count.count);
    r.param("boundary", row.count.boundary);
    r.param("c_fit", c);
    r.param("slack", slack);
    if (!row.count.warning.empty()) r.param("warning", row.count.warning);
    r.set_sides(static_cast<double>(row.count.count), c * row.bound);
    r.pass = static_cast<double>(row.count.count) <= slack * c * row.bound;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<VerificationReport> vaughan_suite(const SuiteContext& ctx,
                                              const std::vector<std::int64_t>& Ds, int cases,
                                              double x) {
  std::vector<VerificationReport> out;
  Stopwatch sw(ctx.timing);
  for (auto D : Ds) {
    const VaughanCoefficients coeffs(D);
    auto add = [&](const std::string& which, std::uint64_t seed, const VaughanSplit& v) {
      VerificationReport r;
      r.suite = "vaughan";
      r.which = which;
      r.seed = seed;
      r.param("D", D);
      r.param("cut", v.cut);
      r.param("S1", v.s1);
      r.param("S2", v.s2);
      r.param("S3", v.s3);
      r.param("S4", v.s4);
      r.param("direct", v.direct);
      const double diff = std::abs(v.total() - v.direct);
      r.set_sides(diff, ctx.cfg.vaughan_tol * (1.0 + std::abs(v.direct)));
      r.pass = diff <= r.rhs;
      r.wall_s = sw.lap();
      out.push_back(std::move(r));
    };
    for (int i = 0; i < cases; ++i) {
      const std::uint64_t s = derive_seed(ctx.cfg.seed ^ 0x5a5aULL, static_cast<std::uint64_t>(D * 1000 + i));
      const auto v = vaughan_split(coeffs, [s](std::int64_t d) {
        return 2.0 * hashed_uniform(s, static_cast<std::uint64_t>(d)) - 1.0;
      });
      add("random_g", s, v);
    }
    const auto v = vaughan_split(coeffs, [x](std::int64_t d) {
      return psi_frac(x / (static_cast<double>(d) + 1.0));
    });
    add("psi_g", ctx.cfg.seed, v);
  }
  return out;
}

// --- command line -----------------------------------------------------------------

namespace {

Rational parse_rational_arg(const std::string& s) { return Rational::parse(s); }

std::pair<std::optional<Rational>, std::optional<Rational>> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw ParseError("range must look like lo:hi, got '" + s + "'");
  std::optional<Rational> lo, hi;
  const std::string a = s.substr(0, colon), b = s.substr(colon + 1);
  if (!a.empty()) lo = parse_rational_arg(a);
  if (!b.empty()) hi = parse_rational_arg(b);
  return {lo, hi};
}

std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(static_cast<std::int64_t>(std::stod(item)));
    } catch (const std::exception&) {
      throw ParseError("bad integer list '" + s + "'");
    }
  }
  if (out.empty()) throw ParseError("empty integer list");
  return out;
}

struct Emitter {
  std::ostream& out;
  std::ostream& err;
  const SuiteContext& ctx;
  std::string command;

  int emit(const std::vector<VerificationReport>& rows) const {
    write_reports(out, rows, ctx.cfg.format, {kToolVersion, ctx.cfg.hash(), command});
    for (const auto& r : rows)
      if (!r.pass) {
        err << "FAIL " << r.suite << "/" << r.which << " " << r.param_string()
            << " lhs=" << format_double(r.lhs) << " rhs=" << format_double(r.rhs) << '\n';
        return kExitFail;
      }
    return kExitOk;
  }
};

std::string exponent_line(const BalanceResult& b) {
  if (b.unbounded) return b.var + " unbounded (the maximum keeps decreasing)";
  return b.var + " = " + to_string(b.optimum()) + "\nvalue = " + b.base + "^{" + b.value.str() + "}";
}

}  // namespace

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verification suites for perturbed exponential sums and Mangoldt floor sums"};
  app.require_subcommand(1);
  std::string format = "csv", config_path;
  std::optional<std::uint64_t> seed;
  int workers = 0;
  bool timing = false;
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", seed, "base seed");
  app.add_option("--workers", workers, "OpenMP worker count (0 = default)")->check(CLI::NonNegativeNumber);
  app.add_flag("--timing", timing, "fill the wall_s column (reports stop being byte-reproducible)");
  app.add_option("--config", config_path, "key=value config file");

  // sieve
  auto* sieve = app.add_subcommand("sieve", "Mangoldt sieve against pointwise Lambda");
  std::int64_t sieve_lo = 0, sieve_hi = 1'000'000, sieve_samples = 100;
  std::string sieve_cache;
  sieve->add_option("--lo", sieve_lo, "table covers (lo, hi]");
  sieve->add_option("--hi", sieve_hi, "upper end");
  sieve->add_option("--samples", sieve_samples, "random entries checked pointwise");
  sieve->add_option("--cache", sieve_cache, "write the table in the binary segment format");

  // psi
  auto* psi = app.add_subcommand("psi", "Vaaler approximation suite");
  std::int64_t psi_cases = 100'000;
  int psi_H = 200;
  psi->add_option("--cases", psi_cases);
  psi->add_option("--Hmax", psi_H)->check(CLI::Range(1, 100000));

  // dls
  auto* dls = app.add_subcommand("dls", "large-sieve integral and double large sieve suites");
  std::string dls_suite = "all";
  std::int64_t dls_cases = 1000;
  dls->add_option("--suite", dls_suite)->check(CLI::IsMember({"lemma21", "prop22", "scenario", "all"}));
  dls->add_option("--cases", dls_cases);

  // expsum
  auto* expsum = app.add_subcommand("expsum", "perturbed triple exponential sums");
  std::string es_mode = "eval", es_bound = "thm1", es_baseline, es_pair = "1/2,1/2";
  bool es_record = false, es_clip = false;
  std::int64_t es_cases = 50;
  ExpSumInstance es;
  std::optional<std::uint64_t> es_coeff_seed;
  double fx = 1e6;
  std::int64_t fD = 1000, fHp = 1, fHmax = 8;
  expsum->add_option("--mode", es_mode)->check(CLI::IsMember({"eval", "scan", "floor"}));
  expsum->add_option("--bound", es_bound);
  expsum->add_option("--pair", es_pair, "exponent pair kappa,lambda for lwy");
  expsum->add_option("--H", es.H);
  expsum->add_option("--M", es.M);
  expsum->add_option("--N", es.N);
  expsum->add_option("--X", es.X);
  expsum->add_option("--alpha", es.alpha);
  expsum->add_option("--beta", es.beta);
  expsum->add_option("--gamma", es.gamma);
  expsum->add_option("--delta", es.delta);
  expsum->add_option("--K", es.K);
  expsum->add_option("--eps", es.epsilon);
  expsum->add_option("--coeff-seed", es_coeff_seed, "random unimodular coefficients");
  expsum->add_option("--cases", es_cases, "grid size for scan");
  expsum->add_option("--baseline", es_baseline, "baseline JSON for scan");
  expsum->add_flag("--record", es_record, "store the scan maximum as the baseline");
  expsum->add_option("--x", fx, "floor scenario x");
  expsum->add_option("--D", fD, "floor scenario D");
  expsum->add_option("--Hp", fHp, "floor scenario h-block");
  expsum->add_option("--Hmax", fHmax, "floor scenario Vaaler degree");
  expsum->add_flag("--clip", es_clip, "floor scenario: keep only D < mn <= 2D");

  // dio
  auto* dio = app.add_subcommand("dio", "Diophantine counts");
  std::string dio_kind = "B0", dio_mode = "endpoints", dio_ladder_sizes;
  std::int64_t dH = 1, dM = 1, dN = 1;
  double d_alpha = 1.0, d_beta = 1.0, d_gamma = 1.0, d_X = 1.0, d_delta = 0.0;
  std::optional<double> d_eps;
  double d_slack = 4.0;
  dio->add_option("--kind", dio_kind)->check(CLI::IsMember({"B0", "B1", "B2", "B3"}));
  dio->add_option("--H", dH);
  dio->add_option("--M", dM);
  dio->add_option("--N", dN);
  dio->add_option("--alpha", d_alpha);
  dio->add_option("--beta", d_beta);
  dio->add_option("--gamma", d_gamma);
  dio->add_option("--X", d_X);
  dio->add_option("--delta", d_delta);
  dio->add_option("--eps", d_eps);
  dio->add_option("--mode", dio_mode)->check(CLI::IsMember({"endpoints", "full", "both"}));
  dio->add_option("--ladder", dio_ladder_sizes, "comma-separated doubling sizes");
  dio->add_option("--slack", d_slack);

  // vaughan
  auto* vaughan = app.add_subcommand("vaughan", "exact Vaughan identity");
  std::string v_Ds = "101,1000,10000";
  int v_cases = 20;
  double v_x = 1e6;
  vaughan->add_option("--D", v_Ds, "comma-separated D values");
  vaughan->add_option("--cases", v_cases);
  vaughan->add_option("--x", v_x, "x for g(d) = psi(x/(d+1))");

  // msum
  auto* msum = app.add_subcommand("msum", "sum_{n<=x} Lambda([x/n])");
  std::int64_t m_x = 10;
  std::string m_method = "blocked";
  msum->add_option("--x", m_x)->required();
  msum->add_option("--method", m_method)->check(CLI::IsMember({"direct", "blocked", "both"}));

  // frak-s
  auto* fraks = app.add_subcommand("frak-s", "dyadic sums of Lambda(d) psi(x/(d+delta))");
  double s_x = 1e6, s_delta = 0.0, s_E = 0.0;
  std::int64_t s_D = 1000;
  bool s_decomposed = false;
  fraks->add_option("--x", s_x);
  fraks->add_option("--D", s_D);
  fraks->add_option("--delta", s_delta);
  fraks->add_option("--E", s_E, "evaluate R_delta(x) over E < d <= x/E instead");
  fraks->add_flag("--decomposed", s_decomposed, "compare with the Vaughan decomposition");

  // fit
  auto* fit = app.add_subcommand("fit", "error term E(x) = S(x) - C x and its log-log slope");
  double f_lo = 1e4, f_hi = 1e9, f_threshold = 0.60;
  int f_points = 11;
  std::int64_t f_T = 100'000'000;
  fit->add_option("--lo", f_lo);
  fit->add_option("--hi", f_hi);
  fit->add_option("--points", f_points);
  fit->add_option("--T", f_T, "cutoff for the main constant");
  fit->add_option("--threshold", f_threshold, "largest accepted slope");

  // expcalc
  auto* expcalc = app.add_subcommand("expcalc",
                                     "exact exponent calculus. Grammar: terms separated by ',' or '+', "
                                     "factors by '*', powers as v^{p/q}, e.g. x^{1/6} * D^{329/570}");
  expcalc->require_subcommand(1);
  auto* sub = expcalc->add_subcommand("substitute", "replace a variable by a monomial");
  std::string c_expr, c_var = "D", c_by, c_a, c_b, c_base = "x", c_range, c_terms;
  bool c_strict = false;
  sub->add_option("--expr", c_expr)->required();
  sub->add_option("--var", c_var)->required();
  sub->add_option("--by", c_by)->required();
  auto* dom = expcalc->add_subcommand("dominate", "a <= max(b) for var = base^t, t in the range");
  dom->add_option("--a", c_a)->required();
  dom->add_option("--b", c_b)->required();
  dom->add_option("--var", c_var);
  dom->add_option("--base", c_base);
  dom->add_option("--range", c_range)->required();
  dom->add_flag("--strict", c_strict);
  auto* bal = expcalc->add_subcommand("balance", "minimize the max of the terms over var = base^e");
  std::string b_var = "E";
  bal->add_option("--terms", c_terms)->required();
  bal->add_option("--var", b_var);
  bal->add_option("--base", c_base);
  bal->add_option("--range", c_range, "lo:hi, either side may be empty");

  std::vector<std::string> args(args_in.rbegin(), args_in.rend());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  SuiteContext ctx;
  try {
    if (!config_path.empty()) ctx.cfg = load_config(config_path);
    apply_env_overrides(ctx.cfg);
    if (seed) ctx.cfg.seed = *seed;
    if (app.get_option("--format")->count() > 0)
      ctx.cfg.format = format == "json" ? ReportFormat::json : ReportFormat::csv;
    if (workers > 0) ctx.cfg.workers = workers;
    ctx.cfg.validate();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  ctx.timing = timing;
  std::optional<par::WorkerScope> scope;
  if (ctx.cfg.workers > 0) scope.emplace(ctx.cfg.workers);

  const auto* chosen = app.get_subcommands().front();
  Emitter em{out, err, ctx, chosen->get_name()};

  try {
    if (sieve->parsed()) {
      Stopwatch sw(timing);
      const auto table = sieve_lo == 0 ? sieve_mangoldt(sieve_hi, ctx.cfg.sieve_capacity)
                                       : segment_sieve(sieve_lo, sieve_hi, ctx.cfg.sieve_capacity);
      if (!sieve_cache.empty()) {
        std::ofstream f(sieve_cache, std::ios::binary);
        if (!f) throw ParseError("cannot write '" + sieve_cache + "'");
        table.write(f);
      }
      VerificationReport sum;
      sum.suite = "sieve";
      sum.which = "lambda_sum";
      sum.seed = ctx.cfg.seed;
      sum.param("lo", sieve_lo);
      sum.param("hi", sieve_hi);
      sum.set_sides(table_sum(table), 0.0);
      sum.wall_s = sw.lap();
      std::int64_t mismatches = 0;
      Rng rng(ctx.cfg.seed);
      for (std::int64_t i = 0; i < sieve_samples; ++i) {
        const std::int64_t d = rng.integer(sieve_lo + 1, sieve_hi);
        const double a = table(d), b = mangoldt_point(static_cast<std::uint64_t>(d));
        if ((a == 0.0) != (b == 0.0) || std::abs(a - b) > 1e-14 * std::max(a, b)) ++mismatches;
      }
      VerificationReport pw;
      pw.suite = "sieve";
      pw.which = "pointwise";
      pw.seed = ctx.cfg.seed;
      pw.param("lo", sieve_lo);
      pw.param("hi", sieve_hi);
      pw.param("samples", sieve_samples);
      pw.set_sides(static_cast<double>(mismatches), 0.0);
      pw.pass = mismatches == 0;
      pw.wall_s = sw.lap();
      return em.emit({sum, pw});
    }

    if (psi->parsed()) return em.emit({psi_suite(ctx, psi_cases, psi_H)});

    if (dls->parsed()) {
      std::vector<VerificationReport> rows;
      auto append = [&](std::vector<VerificationReport> v) {
        rows.insert(rows.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
      };
      if (dls_suite == "lemma21" || dls_suite == "all") append(lemma21_suite(ctx, dls_cases));
      if (dls_suite == "prop22" || dls_suite == "all") append(prop22_suite(ctx, dls_cases));
      if (dls_suite == "scenario" || dls_suite == "all") append(dls_scenario_suite(ctx));
      return em.emit(rows);
    }

    if (expsum->parsed()) {
      std::optional<ExponentPair> pair;
      {
        const auto comma = es_pair.find(',');
        if (comma == std::string::npos) throw ParseError("--pair must be kappa,lambda");
        pair.emplace(Rational::parse(es_pair.substr(0, comma)), Rational::parse(es_pair.substr(comma + 1)));
      }
      const auto which = parse_bound_kind(es_bound);
      if (es_mode == "eval") {
        if (es_coeff_seed) randomize_coefficients(es, *es_coeff_seed);
        else es.seed = ctx.cfg.seed;
        return em.emit(ratio_scan({es}, which, pair).reports);
      }
      if (es_mode == "floor") {
        auto inst = build_floor_scenario(fx, fD, es.delta, fHp, fHmax, es.M, es.N,
                                         es_clip ? IndexMode::hyperbola : IndexMode::rectangle);
        inst.epsilon = es.epsilon;
        inst.seed = ctx.cfg.seed;
        auto scan = ratio_scan({inst}, which, pair);
        scan.reports.front().param("x", fx);
        scan.reports.front().param("D", fD);
        scan.reports.front().param("Hmax", fHmax);
        return em.emit(scan.reports);
      }
      // scan
      Stopwatch sw(timing);
      const auto grid = thm1_grid(ctx.cfg.seed, static_cast<std::size_t>(es_cases), ctx.cfg.eps_expsum);
      auto scan = ratio_scan(grid, which, pair);
      VerificationReport summary;
      summary.suite = "expsum";
      summary.which = to_string(which) + "_max_ratio";
      summary.seed = ctx.cfg.seed;
      summary.param("cases", es_cases);
      summary.param("argmax", static_cast<std::int64_t>(scan.argmax));
      const std::string key =
          baseline_key("expsum-" + to_string(which) + "-" + std::to_string(es_cases), ctx.cfg);
      if (!es_baseline.empty() && es_record) {
        write_baseline(es_baseline, key, scan.max_ratio);
        summary.set_sides(scan.max_ratio, scan.max_ratio);
      } else if (!es_baseline.empty()) {
        const double base = read_baseline(es_baseline, key);
        summary.param("baseline", base);
        summary.set_sides(scan.max_ratio, 10.0 * base);
        summary.pass = scan.max_ratio <= 10.0 * base;
      } else {
        summary.set_sides(scan.max_ratio, 0.0);
      }
      summary.wall_s = sw.lap();
      scan.reports.push_back(summary);
      return em.emit(scan.reports);
    }

    if (dio->parsed()) {
      const auto kind = parse_dio_kind(dio_kind);
      const double eps = d_eps.value_or(ctx.cfg.eps_dio);
      if (!dio_ladder_sizes.empty())
        return em.emit(ladder_reports(dio_ladder(kind, parse_int_list(dio_ladder_sizes), eps, ctx.cfg.dio_budget),
                                      d_slack, ctx.cfg.seed));
      DioParams p{dH, dM, dN, d_X, eps};
      std::vector<VerificationReport> rows;
      auto add = [&](const CountResult& c, const std::string& mode) {
        const auto res = dio_result(kind, c, p);
        VerificationReport r;
        r.suite = "dio";
        r.which = to_string(kind);
        r.seed = ctx.cfg.seed;
        if (kind == DioKind::B1) {
          r.param("H", dH);
          r.param("M", dM);
          r.param("alpha", d_alpha);
        } else {
          r.param("N", dN);
        }
        r.param("beta", d_beta);
        if (kind == DioKind::B2 || kind == DioKind::B3) {
          r.param("M", dM);
          r.param("gamma", d_gamma);
          r.param("delta", d_delta);
          r.param("mode", mode);
        }
        r.param("X", d_X);
        r.param("eps", eps);
        r.param("boundary", c.boundary);
        r.param("fitted_constant", res.fitted_constant);
        if (!c.warning.empty()) r.param("warning", c.warning);
        r.set_sides(static_cast<double>(c.count), res.bound);
        rows.push_back(std::move(r));
      };
      switch (kind) {
        case DioKind::B0: add(count_B0(dN, d_beta, d_X, Exec::parallel, ctx.cfg.dio_budget), ""); break;
        case DioKind::B1: add(count_B1(dH, dM, d_alpha, d_beta, d_X, Exec::parallel, ctx.cfg.dio_budget), ""); break;
        case DioKind::B2:
        case DioKind::B3: {
          const PerturbationSpec spec(d_beta, d_delta, dM,
                                      kind == DioKind::B2 ? PerturbationSpec::Kind::mu : PerturbationSpec::Kind::nu);
          auto count = [&](SupMode m) {
            return kind == DioKind::B2 ? count_B2(dN, d_gamma, d_X, spec, m, Exec::parallel, ctx.cfg.dio_budget)
                                       : count_B3(dN, d_gamma, d_X, spec, m, Exec::parallel, ctx.cfg.dio_budget);
          };
          if (dio_mode == "endpoints" || dio_mode == "both") add(count(SupMode::endpoints), "endpoints");
          if (dio_mode == "full" || dio_mode == "both") add(count(SupMode::full_scan), "full");
          if (rows.size() == 2 && rows[0].lhs != rows[1].lhs) rows[1].pass = false;
          break;
        }
      }
      return em.emit(rows);
    }

    if (vaughan->parsed()) return em.emit(vaughan_suite(ctx, parse_int_list(v_Ds), v_cases, v_x));

    if (msum->parsed()) {
      Stopwatch sw(timing);
      std::vector<VerificationReport> rows;
      auto row = [&](const std::string& which) {
        VerificationReport r;
        r.suite = "msum";
        r.which = which;
        r.seed = ctx.cfg.seed;
        r.param("x", m_x);
        return r;
      };
      std::optional<double> direct;
      if (m_method == "direct" || m_method == "both") {
        direct = s_lambda_direct(m_x, ctx.cfg.direct_budget);
        auto r = row("direct");
        r.set_sides(*direct, 0.0);
        r.wall_s = sw.lap();
        rows.push_back(std::move(r));
      }
      if (m_method == "blocked" || m_method == "both") {
        const auto b = s_lambda_blocked(m_x, ctx.cfg.blocked_budget);
        auto r = row("blocked");
        r.param("blocks", b.blocks);
        r.param("block_limit", static_cast<std::int64_t>(2 * std::ceil(std::sqrt(static_cast<double>(m_x))) + 2));
        r.set_sides(b.value, 0.0);
        r.pass = static_cast<double>(b.blocks) <= 2 * std::ceil(std::sqrt(static_cast<double>(m_x))) + 2;
        r.wall_s = sw.lap();
        rows.push_back(std::move(r));
        if (direct) {
          auto c = row("blocked_vs_direct");
          c.set_sides(std::abs(b.value - *direct), ctx.cfg.floor_tol * std::abs(*direct));
          c.pass = c.lhs <= c.rhs;
          rows.push_back(std::move(c));
        }
      }
      return em.emit(rows);
    }

    if (fraks->parsed()) {
      std::vector<VerificationReport> rows;
      VerificationReport r;
      r.suite = "frak-s";
      r.seed = ctx.cfg.seed;
      r.param("x", s_x);
      r.param("delta", s_delta);
      if (s_E > 0.0) {
        r.which = "r_delta";
        r.param("E", s_E);
        const double v = r_delta(s_x, s_E, s_delta);
        const auto dy = r_delta_dyadic(s_x, s_E, s_delta);
        r.param("value", v);
        r.param("pieces", dy.pieces);
        r.set_sides(std::abs(v - dy.value), 1e-9 * (1.0 + std::abs(v)));
        r.pass = r.lhs <= r.rhs;
        rows.push_back(std::move(r));
        return em.emit(rows);
      }
      r.which = "trivial_bound";
      r.param("D", s_D);
      const double v = frak_s(s_x, s_D, s_delta);
      const auto seg = segment_sieve(s_D, 2 * s_D, ctx.cfg.sieve_capacity);
      r.param("value", v);
      r.set_sides(std::abs(v), 0.5 * table_sum(seg));
      r.pass = r.lhs <= r.rhs;
      rows.push_back(r);
      if (s_decomposed) {
        const auto dec = frak_s_decomposed(s_x, s_D, s_delta);
        VerificationReport d;
        d.suite = "frak-s";
        d.which = "decomposed";
        d.seed = ctx.cfg.seed;
        d.param("x", s_x);
        d.param("D", s_D);
        d.param("delta", s_delta);
        d.param("S1", dec.s1);
        d.param("S2", dec.s2);
        d.param("S3", dec.s3);
        d.param("S4", dec.s4);
        d.set_sides(std::abs(dec.total() - v), ctx.cfg.vaughan_tol * (1.0 + std::abs(v)));
        d.pass = d.lhs <= d.rhs;
        rows.push_back(std::move(d));
      }
      return em.emit(rows);
    }

    if (fit->parsed()) {
      Stopwatch sw(timing);
      const auto C = main_constant(f_T);
      const auto grid = geometric_grid(f_lo, f_hi, f_points);
      const auto curve = error_curve(grid, C);
      std::vector<VerificationReport> rows;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        VerificationReport r;
        r.suite = "fit";
        r.which = "error_point";
        r.seed = ctx.cfg.seed;
        r.param("x", grid[i]);
        r.param("S", curve.S[i]);
        r.param("E", curve.E[i]);
        r.set_sides(std::abs(curve.E[i]), curve.band[i]);
        r.pass = true;
        rows.push_back(std::move(r));
      }
      const auto f = fit_slope(curve.x, curve.E, curve.band);
      VerificationReport s;
      s.suite = "fit";
      s.which = "slope";
      s.seed = ctx.cfg.seed;
      s.param("C", C.value);
      s.param("C_T", C.T);
      s.param("C_tail", C.tail_bound);
      s.param("used", static_cast<std::int64_t>(f.used.size()));
      s.param("excluded", static_cast<std::int64_t>(f.excluded.size()));
      s.param("reference_exponent", 17.0 / 36.0);
      s.set_sides(f.slope, f_threshold);
      s.pass = f.slope <= f_threshold;
      s.wall_s = sw.lap();
      rows.push_back(std::move(s));
      return em.emit(rows);
    }

    if (expcalc->parsed()) {
      if (sub->parsed()) {
        const auto e = substitute(parse_bound_expr(c_expr), c_var, parse_monomial(c_by));
        out << to_string(e) << '\n';
        return kExitOk;
      }
      if (dom->parsed()) {
        const auto [lo, hi] = parse_range(c_range);
        if (!lo || !hi) throw ParseError("dominate needs a closed range lo:hi");
        ParamRange range{c_var, c_base, *lo, *hi};
        const auto r = dominance_check(parse_monomial(c_a), parse_bound_expr(c_b), range, c_strict);
        out << (r.dominated ? "dominated" : "not dominated") << "\nworst_margin = " << r.worst_margin.str() << '\n';
        if (r.witness) out << "witness t = " << r.witness->str() << '\n';
        if (!r.dominated) {
          err << "FAIL expcalc/dominate at t = " << (r.witness ? r.witness->str() : "?") << '\n';
          return kExitFail;
        }
        return kExitOk;
      }
      std::optional<Rational> lo, hi;
      if (!c_range.empty()) std::tie(lo, hi) = parse_range(c_range);
      const auto b = minimax_balance(parse_bound_expr(c_terms), b_var, c_base, lo, hi);
      out << exponent_line(b) << '\n';
      return kExitOk;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitUsage;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace pertlab::cli
