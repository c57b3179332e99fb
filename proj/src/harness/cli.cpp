#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>
#include <json.hpp>

#include "czeta/errors.hpp"
#include "czeta/harness.hpp"

namespace czeta::harness {

using json = nlohmann::json;
using sym::IdentityId;

namespace {

struct EvalFlags {
  long prec = 0;
  std::string method = "asymptotic_tail";
  std::int64_t cutoff = 0;
  double target_err = EvalConfig{}.target_err;

  void add(CLI::App* app) {
    app->add_option("--prec", prec, "Working precision in bits (default: CZETA_PREC_BITS or 192)");
    app->add_option("--method", method, "asymptotic_tail or block_richardson");
    app->add_option("--cutoff", cutoff, "Prefix cutoff (0 = method default)");
    app->add_option("--target-err", target_err, "Largest acceptable evaluation error");
  }

  EvalConfig config() const {
    EvalConfig cfg;
    if (method == "asymptotic_tail") {
      cfg.method = EvalConfig::Method::kAsymptoticTail;
    } else if (method == "block_richardson") {
      cfg.method = EvalConfig::Method::kBlockRichardson;
    } else {
      throw ConfigError("unknown --method '" + method + "'");
    }
    cfg.cutoff = cutoff;
    cfg.target_err = target_err;
    return cfg;
  }

  prec_t precision() const {
    if (prec == 0) return working_precision();
    if (prec < 64 || prec > 100000) throw ConfigError("--prec must lie in [64, 100000]");
    return static_cast<prec_t>(prec);
  }
};

std::vector<RootOfUnity> roots(const std::vector<std::string>& xs) {
  std::vector<RootOfUnity> out;
  for (const auto& s : xs) out.push_back(RootOfUnity::parse(s));
  return out;
}

std::vector<HPComplex> params(const std::vector<std::string>& as) {
  std::vector<HPComplex> out;
  for (const auto& s : as) out.push_back(parse_param(s));
  return out;
}

template <class T>
const T& single(const std::vector<T>& v, const char* flag) {
  if (v.size() != 1) throw ConfigError(std::string(flag) + " takes exactly one value here");
  return v.front();
}

struct EvalCmd {
  std::string series;
  std::vector<int> k;
  std::vector<std::string> x, c, a;
  std::string s, z;
  long n = 0;
  int j = 1;
  EvalFlags flags;

  HPComplex run() const {
    EvalConfig cfg = flags.config();
    auto need = [&](bool ok, const char* what) {
      if (!ok) throw ConfigError("series " + series + " needs " + what);
    };
    if (series == "li") {
      HPComplex cc = c.empty() ? HPComplex(1) : parse_param(single(c, "--c"));
      return li_single(single(k, "--k"), RootOfUnity::parse(single(x, "--x")), cc, cfg);
    }
    if (series == "cmzv") return cmzv(k, roots(x), cfg);
    if (series == "mtv") return mtv(k, roots(x), cfg);
    if (series == "mtv_T") return mtv_T(k, cfg);
    if (series == "cmhzv") {
      std::vector<HPComplex> cs = c.empty() ? std::vector<HPComplex>(k.size(), HPComplex(1)) : params(c);
      return cmhzv(ZetaIndex(k, roots(x), cs), cfg);
    }
    if (series == "phi") {
      need(!s.empty(), "--s");
      if (!z.empty()) return phi(parse_param(s), parse_param(z), cfg);
      return phi(parse_param(s), RootOfUnity::parse(single(x, "--x")), cfg);
    }
    if (series == "phi_ext") {
      need(!s.empty(), "--s");
      return phi_ext(parse_param(s), RootOfUnity::parse(single(x, "--x")), cfg);
    }
    if (series == "mhs") return mhs(n, k, roots(x));
    if (series == "mhs_hurwitz") return mhs_hurwitz(n, k, roots(x), params(a));
    if (series == "sym_li_bracket") return sym::sym_li_bracket(j, RootOfUnity::parse(single(x, "--x")), cfg);
    if (series == "hat_li") {
      return sym::hat_li(j, RootOfUnity::parse(single(x, "--x")), parse_param(single(a, "--a")), cfg);
    }
    if (series == "hat_ti") return sym::hat_ti(j, RootOfUnity::parse(single(x, "--x")), cfg);
    throw ConfigError("unknown series '" + series + "'");
  }
};

struct CheckCmd {
  std::string id;
  int q = 1;
  std::vector<int> k;
  std::string x0, a0, y, b;
  std::vector<std::string> x, a;
  int m = 0;
  int l = 1;
  double tol = 1e-10;
  EvalFlags flags;

  sym::IdentityCase build() const {
    auto parsed = sym::identity_from_name(id);
    if (!parsed) throw ConfigError("unknown identity '" + id + "'");
    sym::IdentityCase c;
    c.id = *parsed;
    c.q = q;
    c.m = m;
    c.l = l;
    c.k = k;
    c.label = id + "/cli";
    c.provenance = "explicit";
    switch (c.id) {
      case IdentityId::kReflection:
      case IdentityId::kHurwitzReflection:
      case IdentityId::kTValueReflection:
        if (!x0.empty()) c.x0 = RootOfUnity::parse(x0);
        c.x = roots(x);
        if (!a0.empty()) c.a0 = parse_param(a0);
        c.a = params(a);
        break;
      case IdentityId::kDoubleReflection:
      case IdentityId::kDoubleParity:
      case IdentityId::kDoubleParityAltSign:
      case IdentityId::kDoubleHurwitz:
      case IdentityId::kStuffle:
        c.x0 = RootOfUnity::parse(x0.empty() ? single(x, "--x") : x0);
        if (y.empty()) throw ConfigError(id + " needs --y");
        c.x = {RootOfUnity::parse(y)};
        if (c.id == IdentityId::kDoubleHurwitz) {
          c.a0 = parse_param(a0.empty() ? single(a, "--a") : a0);
          if (b.empty()) throw ConfigError(id + " needs --b");
          c.a = {parse_param(b)};
        }
        break;
      case IdentityId::kCscSquareExample:
      case IdentityId::kCscCotExample:
        c.x0 = RootOfUnity::parse(x0.empty() ? single(x, "--x") : x0);
        c.a0 = parse_param(a0.empty() ? single(a, "--a") : a0);
        if (b.empty()) throw ConfigError(id + " needs --b");
        c.a = {parse_param(b)};
        break;
      case IdentityId::kDerivativeClosedForm:
        c.x0 = RootOfUnity::parse(x0.empty() ? single(x, "--x") : x0);
        c.a0 = parse_param(a0.empty() ? single(a, "--a") : a0);
        break;
      case IdentityId::kAlternatingFamily:
      case IdentityId::kTValueRelation:
        break;
    }
    if (auto why = sym::admissibility_violation(c)) throw PreconditionError(id + ": " + *why);
    return c;
  }
};

struct SuiteCmd {
  std::string config;
  std::string out;
  int workers = -1;
  double tol = 0.0;
};

struct ExpandCmd {
  std::string lemma;
  int n = 1;
  std::string x = "0/1";
  std::vector<int> k;
  std::vector<std::string> xs, a;
  std::string a0 = "0.5";
  int j = 1;
  int M = 2;
  std::string delta = "0.01";
  EvalFlags flags;
};

int run_eval(const EvalCmd& cmd, std::ostream& out) {
  PrecisionScope scope(cmd.flags.precision());
  HPComplex v = cmd.run();
  json j = json::parse(value_to_json(v));
  j["series"] = cmd.series;
  out << j.dump(2) << "\n";
  return 0;
}

int run_check(const CheckCmd& cmd, std::ostream& out) {
  PrecisionScope scope(cmd.flags.precision());
  sym::IdentityCase c = cmd.build();
  sym::ResidualReport r = sym::check(c, cmd.flags.config(), cmd.tol);
  out << residual_report_to_json(r) << "\n";
  return r.passed ? 0 : 1;
}

int run_suite_cmd(const SuiteCmd& cmd, std::ostream& out, std::ostream& err) {
  SuiteSpec spec = load_suite_file(cmd.config);
  if (cmd.workers >= 0) spec.workers = cmd.workers;
  if (cmd.tol > 0) spec.tolerance = cmd.tol;
  SuiteReport rep = run_suite(spec);
  std::string text = report_to_json(rep);
  if (cmd.out.empty()) {
    out << text << "\n";
  } else {
    std::ofstream f(cmd.out);
    if (!f) throw ConfigError("cannot write report '" + cmd.out + "'");
    f << text << "\n";
  }
  err << "suite " << (rep.passed() ? "PASS" : "FAIL") << ": " << rep.summary.passed << "/" << rep.summary.total
      << " passed, " << rep.summary.errors << " errors, " << rep.wall_time << " s\n";
  for (const auto& r : rep.cases) {
    if (!r.passed) {
      err << "  failed " << r.case_.describe() << " |residual|=" << r.magnitude()
          << (r.error.empty() ? "" : " error: " + r.error) << "\n";
    }
  }
  return rep.passed() ? 0 : 1;
}

int run_expand(const ExpandCmd& cmd, std::ostream& out) {
  PrecisionScope scope(cmd.flags.precision());
  auto id = sym::expansion_from_name(cmd.lemma);
  if (!id) throw ConfigError("unknown lemma '" + cmd.lemma + "'");
  sym::ExpansionParams p;
  p.n = cmd.n;
  p.x = RootOfUnity::parse(cmd.x);
  p.k = cmd.k;
  p.xs = roots(cmd.xs);
  p.a0 = parse_param(cmd.a0);
  p.a = params(cmd.a);
  p.j = cmd.j;
  sym::ScalingReport rep = sym::expansion_scaling(*id, p, cmd.M, parse_param(cmd.delta), cmd.flags.config());
  json j;
  j["lemma"] = cmd.lemma;
  j["M"] = cmd.M;
  j["residual_delta"] = json::parse(value_to_json(rep.at_delta));
  j["residual_half_delta"] = json::parse(value_to_json(rep.at_half));
  j["ratio"] = rep.ratio;
  j["expected"] = rep.expected;
  j["passed"] = rep.passed;
  out << j.dump(2) << "\n";
  return rep.passed ? 0 : 1;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cyclotomic multiple Hurwitz zeta values and their reflection identities"};
  app.require_subcommand(1);

  EvalCmd ev;
  auto* eval = app.add_subcommand("eval", "Evaluate one series and print it as JSON");
  eval->add_option("--series", ev.series,
                   "li, cmzv, cmhzv, mtv, mtv_T, phi, phi_ext, mhs, mhs_hurwitz, sym_li_bracket, hat_li, hat_ti")
      ->required();
  eval->add_option("--k", ev.k, "Exponents, comma separated")->delimiter(',');
  eval->add_option("--x", ev.x, "Roots of unity as p/q, comma separated")->delimiter(',');
  eval->add_option("--c", ev.c, "Shifts c (denominators n + c - 1)")->delimiter(',');
  eval->add_option("--a", ev.a, "Shifts a (mhs_hurwitz: n + a; hat_li: a)")->delimiter(',');
  eval->add_option("--s", ev.s, "Argument s of phi / phi_ext");
  eval->add_option("--z", ev.z, "General complex x for phi");
  eval->add_option("--n", ev.n, "Truncation point of mhs");
  eval->add_option("--j", ev.j, "Index of the bracket functions");
  ev.flags.add(eval);

  CheckCmd ck;
  auto* check = app.add_subcommand("check", "Evaluate one identity residual");
  check->add_option("--id", ck.id, "Identity name, e.g. thm2_1, eq2_11")->required();
  check->add_option("--q", ck.q, "Leading exponent q");
  check->add_option("--k", ck.k, "Exponents")->delimiter(',');
  check->add_option("--x0", ck.x0, "Leading root x0");
  check->add_option("--x", ck.x, "Roots (the single x for depth-two and closed-form identities)")->delimiter(',');
  check->add_option("--y", ck.y, "Second root y of the depth-two identities");
  check->add_option("--a0", ck.a0, "Leading parameter a0");
  check->add_option("--a", ck.a, "Parameters (the single a for depth-two and closed-form identities)")
      ->delimiter(',');
  check->add_option("--b", ck.b, "Second parameter b");
  check->add_option("--m", ck.m, "Order m of eq2_11");
  check->add_option("--l", ck.l, "Length l of zhao_family");
  check->add_option("--tol", ck.tol, "Tolerance");
  ck.flags.add(check);

  SuiteCmd st;
  auto* suite = app.add_subcommand("suite", "Run a TOML suite and write a JSON report");
  suite->add_option("--config", st.config, "Suite TOML file")->required();
  suite->add_option("--out", st.out, "Report path (default: stdout)");
  suite->add_option("--workers", st.workers, "Worker threads (0 = all cores)");
  suite->add_option("--tol", st.tol, "Override the suite tolerance");

  ExpandCmd ex;
  auto* expand = app.add_subcommand("expand", "Check the truncation order of a local expansion");
  expand->add_option("--lemma", ex.lemma, "L3_2, L3_3, L3_4, L3_5, L3_6_principal, L3_7")->required();
  expand->add_option("--n", ex.n, "Expansion point n");
  expand->add_option("--x", ex.x, "Root x of the Phi expansions");
  expand->add_option("--k", ex.k, "Exponents")->delimiter(',');
  expand->add_option("--xs", ex.xs, "Roots of the nested expansions")->delimiter(',');
  expand->add_option("--a0", ex.a0, "Parameter a0");
  expand->add_option("--a", ex.a, "Parameters a_1..a_r")->delimiter(',');
  expand->add_option("--j", ex.j, "Singular slot of L3_6_principal");
  expand->add_option("--M", ex.M, "Truncation order");
  expand->add_option("--delta", ex.delta, "Offset delta");
  ex.flags.add(expand);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*eval) return run_eval(ev, out);
    if (*check) return run_check(ck, out);
    if (*suite) return run_suite_cmd(st, out, err);
    if (*expand) return run_expand(ex, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace czeta::harness
