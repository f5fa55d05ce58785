#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "markovnik/analysis.hpp"
#include "markovnik/cone.hpp"
#include "markovnik/constants.hpp"
#include "markovnik/constructions.hpp"
#include "markovnik/errors.hpp"

namespace markovnik::cli {
namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// JSON numbers carry the same 12 significant digits as the CSV output.
Json num(double v) {
  if (!std::isfinite(v)) return fmt(v);
  return std::stod(fmt(v));
}

struct IntRange {
  int lo = 0;
  int hi = 0;
};

IntRange parse_range(const std::string& text, const char* flag) {
  const auto bad = [&] { return UsageError(std::string(flag) + " expects N or A..B, got '" + text + "'"); };
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const int v = std::stoi(text, &used);
      if (used != text.size()) throw bad();
      return {v, v};
    }
    const std::string a = text.substr(0, dots);
    const std::string b = text.substr(dots + 2);
    const int lo = std::stoi(a, &used);
    if (used != a.size()) throw bad();
    const int hi = std::stoi(b, &used);
    if (used != b.size()) throw bad();
    if (hi < lo) throw bad();
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw bad();
  }
}

// ---------------------------------------------------------------------------
// constants

struct ConstantsConfig {
  std::string n = "";
  std::string k = "";
  bool bernstein = false;
  std::string format = "csv";
};

void cmd_constants(const ConstantsConfig& cfg, std::ostream& out) {
  if (cfg.n.empty()) throw UsageError("constants needs --n");
  const IntRange n = parse_range(cfg.n, "--n");
  if (n.lo < 1) throw UsageError("--n must be >= 1");
  if (cfg.k.empty() && !cfg.bernstein) throw UsageError("constants needs --k or --bernstein");

  std::vector<std::string> columns{"n"};
  if (!cfg.k.empty()) columns.push_back("k");
  if (cfg.bernstein) columns.push_back("bernstein_qazi");
  if (!cfg.k.empty()) {
    columns.push_back("kroo_szabados_sup");
    columns.push_back("kroo_szabados_l1");
  }

  std::vector<std::vector<std::string>> rows;
  if (cfg.k.empty()) {
    for (int v = n.lo; v <= n.hi; ++v) rows.push_back({std::to_string(v), bernstein_qazi(v).str()});
  } else {
    const IntRange k = parse_range(cfg.k, "--k");
    if (k.lo < 1) throw UsageError("--k must be >= 1");
    for (int nv = n.lo; nv <= n.hi; ++nv) {
      for (int kv = k.lo; kv <= k.hi; ++kv) {
        if (kv > nv) continue;
        std::vector<std::string> row{std::to_string(nv), std::to_string(kv)};
        if (cfg.bernstein) row.push_back(bernstein_qazi(nv).str());
        row.push_back(kv >= 2 ? fmt(kroo_szabados_sup(nv, kv)) : "");
        row.push_back(fmt(kroo_szabados_l1(nv, kv)));
        rows.push_back(std::move(row));
      }
    }
    if (rows.empty()) throw UsageError("no (n, k) pair with 1 <= k <= n in the requested ranges");
  }

  if (cfg.format == "csv") {
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
      out << '\n';
    }
    return;
  }
  Json table = Json::array();
  for (const auto& row : rows) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i].empty()) {
        obj[columns[i]] = nullptr;
      } else if (columns[i] == "n" || columns[i] == "k") {
        obj[columns[i]] = std::stoi(row[i]);
      } else {
        obj[columns[i]] = std::stod(row[i]);
      }
    }
    table.push_back(std::move(obj));
  }
  Json doc = Json::object();
  doc["command"] = "constants";
  doc["rows"] = std::move(table);
  doc["version"] = kVersion;
  out << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// verify

struct VerifyConfig {
  std::string suite;
  std::optional<int> trials;
  std::optional<int> n;
  int budget = 20000;
  std::uint64_t seed = 0;
  std::string format = "json";
};

struct Check {
  std::string name;
  bool pass = false;
  Json measured = Json::object();
  Json tolerance = Json::object();
};

std::vector<Check> suite_remez(const VerifyConfig& cfg) {
  const int n = cfg.n.value_or(20);
  const int trials = cfg.trials.value_or(500);
  std::vector<Check> checks;
  for (const char* qs : {"1/2", "1", "2"}) {
    const NormParam q = NormParam::parse(qs);
    for (double c : {1.0, 2.0}) {
      const RemezReport r = remez_check(n, q, c, trials, cfg.seed);
      Check ch;
      ch.name = "remez n=" + std::to_string(n) + " q=" + q.str() + " c=" + fmt(c);
      ch.pass = r.pass;
      ch.measured["trials"] = r.trials;
      ch.measured["width"] = num(r.width);
      ch.measured["max_ratio_times_c"] = num(r.max_scaled_ratio);
      ch.measured["worst_a"] = num(r.worst_a);
      ch.tolerance["threshold"] = num(r.threshold.value);
      if (r.threshold.nikolskii_constant > 0.0) ch.tolerance["nikolskii_constant"] = num(r.threshold.nikolskii_constant);
      ch.tolerance["calibration"] = r.threshold.calibration;
      checks.push_back(std::move(ch));
    }
  }
  return checks;
}

Check closed_form_key_check(const std::string& name, const Polynomial& p, double lhs, double rhs) {
  const KeyInequalityReport r = key_inequality_check(p, NormParam::parse("1/2"));
  const double lhs_err = std::fabs(r.lhs - lhs) / lhs;
  const double rhs_err = std::fabs(r.rhs - rhs) / rhs;
  Check ch;
  ch.name = name;
  ch.pass = r.pass && lhs_err <= 1e-6 && rhs_err <= 1e-6;
  ch.measured["lhs"] = num(r.lhs);
  ch.measured["rhs"] = num(r.rhs);
  ch.measured["lhs_expected"] = num(lhs);
  ch.measured["rhs_expected"] = num(rhs);
  ch.measured["lhs_rel_error"] = num(lhs_err);
  ch.measured["rhs_rel_error"] = num(rhs_err);
  ch.tolerance["rel"] = 1e-6;
  return ch;
}

std::vector<Check> suite_key_inequality(const VerifyConfig& cfg) {
  const int trials = cfg.trials.value_or(200);
  if (cfg.n && *cfg.n < 1) throw UsageError("--n must be >= 1");
  std::vector<Check> checks;
  const Polynomial ramp({1.0, 1.0});
  checks.push_back(closed_form_key_check("key-inequality closed-form P=1+x", ramp, 2.0, 2.0 * std::acos(-1.0)));
  checks.push_back(
      closed_form_key_check("key-inequality closed-form P=(1+x)^2", ramp * ramp, 8.0 / 3.0, 16.0 * std::sqrt(2.0) / 3.0));

  std::vector<Polynomial> members;
  for (int t = 0; t < trials; ++t) {
    const int degree = cfg.n.value_or(2 + t % 9);
    Polynomial p = random_cone_member(ConeSpec::abs_monotone(1, degree), derive_seed(cfg.seed, static_cast<std::uint64_t>(t)));
    p -= Polynomial::constant(eval(p, -1.0));
    members.push_back(std::move(p));
  }
  for (const char* qs : {"0.3", "0.5", "0.9"}) {
    const NormParam q = NormParam::parse(qs);
    int passed = 0;
    int skipped = 0;
    double worst = 0.0;
    for (const Polynomial& p : members) {
      if (p.degree() < 1) {
        ++skipped;
        continue;
      }
      const KeyInequalityReport r = key_inequality_check(p, q);
      if (r.pass) ++passed;
      worst = std::max(worst, r.lhs / r.rhs);
    }
    Check ch;
    ch.name = "key-inequality random q=" + q.str();
    ch.pass = passed + skipped == trials;
    ch.measured["trials"] = trials;
    ch.measured["passed"] = passed;
    ch.measured["skipped_constant"] = skipped;
    ch.measured["max_lhs_over_rhs"] = num(worst);
    ch.tolerance["lhs_le_rhs_times"] = 1.0 + 1e-6;
    checks.push_back(std::move(ch));
  }
  return checks;
}

std::vector<Check> suite_oracle(const VerifyConfig& cfg) {
  if (cfg.budget < 1) throw UsageError("--budget must be >= 1");
  struct Case {
    ConeSpec spec;
    double exact;
  };
  std::vector<Case> cases;
  const std::vector<int> monotone_n = cfg.n ? std::vector<int>{*cfg.n} : std::vector<int>{2, 3, 4, 5};
  const std::vector<int> abs_n = cfg.n ? std::vector<int>{*cfg.n} : std::vector<int>{2, 3, 4};
  for (int n : monotone_n) {
    if (n < 1) throw UsageError("--n must be >= 1");
    cases.push_back({ConeSpec::monotone_only(n), bernstein_qazi(n).to_double()});
  }
  for (int n : abs_n) {
    if (n >= 2) cases.push_back({ConeSpec::abs_monotone(2, n), kroo_szabados_sup(n, 2)});
  }
  const NormParam inf = NormParam::infinity();
  std::vector<Check> checks;
  for (const Case& c : cases) {
    const OracleResult r = brute_force_sup(c.spec, 1, inf, inf, cfg.budget, cfg.seed);
    const double rel = r.best_ratio / c.exact - 1.0;
    Check ch;
    ch.name = "oracle " + c.spec.str() + " l=1 p=inf q=inf";
    ch.pass = rel >= -0.02 && rel <= 1e-6;
    ch.measured["brute_force"] = num(r.best_ratio);
    ch.measured["exact"] = num(c.exact);
    ch.measured["rel_gap"] = num(rel);
    ch.measured["budget"] = cfg.budget;
    ch.measured["refinements"] = r.refinements;
    ch.tolerance["below"] = 0.02;
    ch.tolerance["above"] = 1e-6;
    checks.push_back(std::move(ch));
  }
  return checks;
}

std::vector<Check> suite_qseries(const VerifyConfig&) {
  std::vector<Check> checks;
  {
    const std::vector<int> grid = parse_grid("8:1024:x2");
    const auto values = q_log_growth(1.0, grid);
    double worst = 0.0;
    Json per_n = Json::object();
    for (const GrowthPoint& g : values) {
      double harmonic = 0.0;
      for (int j = g.n + 1; j >= 2; --j) harmonic += 1.0 / j;
      const double err = std::fabs(g.value - harmonic);
      worst = std::max(worst, err);
      per_n[std::to_string(g.n)] = num(g.value);
    }
    Check ch;
    ch.name = "qseries log-growth alpha=1";
    ch.pass = worst <= 1e-8;
    ch.measured["values"] = std::move(per_n);
    ch.measured["max_abs_error_vs_harmonic"] = num(worst);
    ch.tolerance["abs"] = 1e-8;
    checks.push_back(std::move(ch));
  }
  for (double alpha : {0.5, 1.0}) {
    double worst = 0.0;
    for (int n = 2; n <= 64; n += 2) worst = std::max(worst, q_bounded_on_left(alpha, n));
    Check ch;
    ch.name = "qseries bounded-on-left alpha=" + fmt(alpha);
    ch.pass = worst <= 1.5;
    ch.measured["max_over_even_n_le_64"] = num(worst);
    ch.tolerance["bound"] = 1.5;
    checks.push_back(std::move(ch));
  }
  return checks;
}

int cmd_verify(const VerifyConfig& cfg, std::ostream& out) {
  if (cfg.format != "json") throw UsageError("verify emits JSON only");
  if (cfg.trials && *cfg.trials < 1) throw UsageError("--trials must be >= 1");
  std::vector<Check> checks;
  const auto add = [&](std::vector<Check> more) {
    for (auto& c : more) checks.push_back(std::move(c));
  };
  const bool all = cfg.suite == "all";
  if (all || cfg.suite == "key-inequality") add(suite_key_inequality(cfg));
  if (all || cfg.suite == "oracle") add(suite_oracle(cfg));
  if (all || cfg.suite == "qseries") add(suite_qseries(cfg));
  if (all || cfg.suite == "remez") add(suite_remez(cfg));
  std::sort(checks.begin(), checks.end(), [](const Check& a, const Check& b) { return a.name < b.name; });

  bool pass = true;
  Json list = Json::array();
  for (const Check& c : checks) {
    pass = pass && c.pass;
    Json obj = Json::object();
    obj["name"] = c.name;
    obj["pass"] = c.pass;
    obj["measured"] = c.measured;
    obj["tolerance"] = c.tolerance;
    list.push_back(std::move(obj));
  }
  Json doc = Json::object();
  doc["suite"] = cfg.suite;
  doc["checks"] = std::move(list);
  doc["seed"] = cfg.seed;
  doc["version"] = kVersion;
  doc["pass"] = pass;
  out << doc.dump(2) << '\n';
  return pass ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepConfig {
  std::string family;
  int k = 1;
  int m = 1;
  int l = 1;
  std::string p = "inf";
  std::string q = "inf";
  std::string grid;
  std::string format = "csv";
};

void cmd_sweep(const SweepConfig& cfg, std::ostream& out) {
  FamilySpec family;
  if (cfg.family == "lower") {
    family.kind = FamilyKind::Lower;
  } else if (cfg.family == "powerramp") {
    family.kind = FamilyKind::PowerRamp;
  } else if (cfg.family == "chebybump") {
    family.kind = FamilyKind::ChebyshevBump;
  } else if (cfg.family == "ks-exact") {
    family.kind = FamilyKind::KrooSzabadosExact;
  } else {
    throw UsageError("unknown family '" + cfg.family + "'");
  }
  family.k = cfg.k;
  family.m = cfg.m;
  const NormParam p = NormParam::parse(cfg.p);
  const NormParam q = NormParam::parse(cfg.q);
  const std::vector<int> grid = parse_grid(cfg.grid);
  const SweepResult result = sweep_and_fit(family, cfg.l, p, q, grid);
  const RegimeClass predicted =
      regime(cfg.l, p, q, p.is_infinite() ? RegimeTable::ConstrainedSupInput : RegimeTable::Constrained);

  if (cfg.format == "csv") {
    out << "n,ratio\n";
    for (const auto& s : result.samples) out << s.n << ',' << fmt(s.ratio) << '\n';
    out << "n_exponent,log_exponent,residual,predicted_regime\n";
    out << fmt(result.fit.n_exponent) << ',' << fmt(result.fit.log_exponent) << ',' << fmt(result.fit.residual) << ','
        << predicted.str() << '\n';
    return;
  }
  Json samples = Json::array();
  for (const auto& s : result.samples) samples.push_back({{"n", s.n}, {"ratio", num(s.ratio)}});
  Json doc = Json::object();
  doc["command"] = "sweep";
  doc["family"] = family.name();
  doc["l"] = cfg.l;
  doc["p"] = p.str();
  doc["q"] = q.str();
  doc["samples"] = std::move(samples);
  doc["fit"] = {{"n_exponent", num(result.fit.n_exponent)},
                {"log_exponent", num(result.fit.log_exponent)},
                {"residual", num(result.fit.residual)}};
  doc["predicted_regime"] = predicted.str();
  doc["version"] = kVersion;
  out << doc.dump(2) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constrained Markov-Nikolskii constants, constructions and checks", "markovnik"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string out_path;
  const auto add_common = [&](CLI::App* sub, std::string& format, std::vector<std::string> formats) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember(std::move(formats)));
    sub->add_option("--out", out_path, "Write the report to PATH instead of standard output");
  };

  ConstantsConfig constants;
  auto* c = app.add_subcommand("constants", "Exact extremal constants table");
  c->add_option("--n", constants.n, "Degree N or range A..B");
  c->add_option("--k", constants.k, "Order K or range A..B");
  c->add_flag("--bernstein", constants.bernstein, "Include the monotone-class constant");
  add_common(c, constants.format, {"csv", "json"});

  VerifyConfig verify;
  auto* v = app.add_subcommand("verify", "Run a verification suite");
  v->add_option("--suite", verify.suite, "Suite to run")
      ->required()
      ->check(CLI::IsMember({"remez", "key-inequality", "oracle", "qseries", "all"}));
  v->add_option("--trials", verify.trials, "Trials for randomized suites");
  v->add_option("--n", verify.n, "Degree override");
  v->add_option("--budget", verify.budget, "Brute-force draws per oracle case");
  v->add_option("--seed", verify.seed, "Seed");
  add_common(v, verify.format, {"json"});

  SweepConfig sweep;
  std::uint64_t sweep_seed = 0;
  auto* s = app.add_subcommand("sweep", "Sample a family and fit growth exponents");
  s->add_option("--family", sweep.family, "lower | powerramp | chebybump | ks-exact")->required();
  s->add_option("--k", sweep.k, "Cone order");
  s->add_option("--m", sweep.m, "Power parameter of the lower family");
  s->add_option("--l", sweep.l, "Derivative order");
  s->add_option("--p", sweep.p, "Norm of P: decimal, fraction or inf");
  s->add_option("--q", sweep.q, "Norm of the derivative: decimal, fraction or inf");
  s->add_option("--grid", sweep.grid, "a:b or a:b:xS")->required();
  s->add_option("--seed", sweep_seed, "Seed (sweeps are deterministic)");
  add_common(s, sweep.format, {"csv", "json"});

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::ostringstream buffer;
  int code = kExitOk;
  try {
    if (c->parsed()) {
      cmd_constants(constants, buffer);
    } else if (v->parsed()) {
      code = cmd_verify(verify, buffer);
    } else {
      cmd_sweep(sweep, buffer);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DegreeOverflow& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }

  if (out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open '" << out_path << "' for writing\n";
      return kExitUsage;
    }
    file << buffer.str();
  }
  return code;
}

}  // namespace markovnik::cli
