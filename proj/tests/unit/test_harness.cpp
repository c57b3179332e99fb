#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "czeta/errors.hpp"
#include "czeta/harness.hpp"
#include "helpers.hpp"

using namespace czeta;
using namespace czeta::harness;
using testing::dist;

namespace {

const char* kSmall = R"(
seed = 42
tolerance = 1e-10

[[case]]
id = "eq2_11"
m = 1
x0 = "1/3"
a0 = "0.25"

[[generate]]
id = "thm2_1"
count = 6
depth = [1, 2]
q_max = 2
k_max = 2
weight_cap = 5
root_orders = [1, 2, 4]

[[generate]]
id = "thm2_2"
count = 2
params_per_shape = 2
depth = [1, 1]
root_orders = [1, 3]

[[generate]]
id = "cor5_1"
count = 3
)";

struct Cli {
  int code = -1;
  std::string out;
  std::string err;
};

Cli run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "czeta");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Cli r;
  r.code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("czeta_test_" + name)).string();
}

std::vector<std::string> serialized(const std::vector<sym::IdentityCase>& cs) {
  std::vector<std::string> out;
  for (const auto& c : cs) out.push_back(case_to_json(c));
  return out;
}

}  // namespace

TEST_SUITE("suite_config") {
  TEST_CASE("parsing and defaults") {
    SuiteSpec s = parse_suite_toml(kSmall);
    CHECK(s.seed == 42);
    CHECK(s.tolerance == 1e-10);
    CHECK(s.cases.size() == 1);
    CHECK(s.cases[0].m == 1);
    CHECK(s.cases[0].x0 == RootOfUnity(1, 3));
    CHECK(s.cases[0].provenance == "explicit");
    REQUIRE(s.generate.size() == 3);
    CHECK(s.generate[0].weight_cap == 5);
    CHECK(s.generate[0].root_orders == std::vector<int>{1, 2, 4});
    CHECK(s.generate[2].region.re_min == 0.1);
    CHECK(s.generate[2].region.re_max == 0.9);
    CHECK(s.generate[2].region.im_max == 1.0);
    CHECK(s.generate[2].region.min_integer_distance == 0.1);
    CHECK(parse_suite_toml("").tolerance == 1e-10);
    CHECK(EvalConfig{}.target_err == parse_suite_toml("").eval.target_err);
  }

  TEST_CASE("eval overrides") {
    SuiteSpec s = parse_suite_toml(R"(
precision_bits = 128
workers = 2
[eval]
method = "block_richardson"
cutoff = 50000
target_err = 1e-8
)");
    CHECK(s.eval.method == EvalConfig::Method::kBlockRichardson);
    CHECK(s.eval.cutoff == 50000);
    CHECK(s.eval.target_err == 1e-8);
    CHECK(s.precision_bits == 128);
    CHECK(s.workers == 2);
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(parse_suite_toml("seed = [1"), ParseError);
    CHECK_THROWS_AS(parse_suite_toml("sede = 1"), ConfigError);
    CHECK_THROWS_AS(parse_suite_toml("[[case]]\nid = \"thm9_9\""), ConfigError);
    CHECK_THROWS_AS(parse_suite_toml("[[case]]\nid = \"thm2_1\"\nx0 = \"1/0\""), ParseError);
    CHECK_THROWS_AS(parse_suite_toml("[[case]]\nid = \"thm2_2\"\na0 = \"abc\""), ParseError);
    CHECK_THROWS_AS(parse_suite_toml("[eval]\nmethod = \"magic\""), ConfigError);
    CHECK_THROWS_AS(parse_suite_toml("[[generate]]\nid = \"thm2_1\"\nbogus = 1"), ConfigError);
    CHECK_THROWS_AS(load_suite_file(temp_path("does_not_exist.toml")), ConfigError);
  }

  TEST_CASE("spec hash") {
    SuiteSpec a = parse_suite_toml(kSmall);
    SuiteSpec b = parse_suite_toml(kSmall);
    CHECK(a.hash() == b.hash());
    CHECK(a.hash().size() == 16);
    b.seed = 43;
    CHECK(a.hash() != b.hash());
  }

  TEST_CASE("parameter text") {
    CHECK(dist(parse_param("0.3"), Complex(Real::from_string("0.3"))) == 0.0);
    CHECK(dist(parse_param("1/3"), Complex(Real::rational(1, 3))) == 0.0);
    HPComplex z = parse_param("0.3+0.25i");
    CHECK(z.re().to_double() == doctest::Approx(0.3));
    CHECK(z.im().to_double() == 0.25);
    CHECK(parse_param("-0.2i").im().to_double() == doctest::Approx(-0.2));
    CHECK(parse_param("-0.2i").re().is_zero());
    CHECK_THROWS_AS(parse_param("abc"), ParseError);
    CHECK_THROWS_AS(parse_param("1/0"), ParseError);
    CHECK_THROWS_AS(parse_param(""), ParseError);
  }
}

TEST_SUITE("generation") {
  TEST_CASE("count zero gives no cases") {
    CHECK(generate_cases(parse_suite_toml("[[generate]]\nid = \"thm2_1\"\ncount = 0")).empty());
  }

  TEST_CASE("deterministic in the seed, and every draw admissible") {
    SuiteSpec s = parse_suite_toml(kSmall);
    auto a = generate_cases(s);
    auto b = generate_cases(s);
    CHECK(a.size() == 1 + 6 + 4 + 3);
    CHECK(serialized(a) == serialized(b));
    for (const auto& c : a) {
      CAPTURE(c.describe());
      CHECK(sym::admissible(c));
      if (c.provenance != "explicit") CHECK(c.provenance.find("seed=42") != std::string::npos);
    }
    s.seed = 7;
    CHECK(serialized(generate_cases(s)) != serialized(a));
    std::set<std::string> labels;
    for (const auto& c : a) labels.insert(c.label);
    CHECK(labels.size() == a.size());
  }

  TEST_CASE("generated cases respect the block constraints") {
    SuiteSpec s = parse_suite_toml(R"(
seed = 9
[[generate]]
id = "thm2_2"
count = 20
params_per_shape = 3
depth = [2, 2]
q_max = 2
k_max = 2
weight_cap = 6
root_orders = [1, 3]
re_range = [0.2, 0.8]
im_max = 0.5
)");
    auto cs = generate_cases(s);
    CHECK(cs.size() == 60);
    for (const auto& c : cs) {
      CHECK(c.k.size() == 2);
      CHECK(c.q <= 2);
      int w = c.q;
      for (int v : c.k) w += v;
      CHECK(w <= 6);
      for (const auto& x : c.x) CHECK((x.den() == 1 || x.den() == 3));
      for (const auto& a : c.a) {
        double re = a.re().to_double();
        CHECK(std::fabs(a.im().to_double()) <= 0.5);
        CHECK(re - std::floor(re) >= 0.1 - 1e-12);
        CHECK(std::ceil(re) - re >= 0.1 - 1e-12);
      }
    }
  }

  TEST_CASE("unsatisfiable constraints name the violated condition") {
    SuiteSpec s = parse_suite_toml("[[generate]]\nid = \"thm2_1\"\ncount = 3\nk_max = 1\nroot_orders = [1]");
    try {
      generate_cases(s);
      FAIL("expected GenerationError");
    } catch (const GenerationError& e) {
      CHECK(std::string(e.what()).find("(k_r, x_r) = (1, 1)") != std::string::npos);
    }
  }
}

TEST_SUITE("run_suite") {
  TEST_CASE("empty suite passes") {
    SuiteReport r = run_suite(std::vector<sym::IdentityCase>{}, EvalConfig{});
    CHECK(r.passed());
    CHECK(r.summary.total == 0);
    CHECK(r.cases.empty());
  }

  TEST_CASE("a throwing case is a failure, not an abort") {
    sym::IdentityCase bad;
    bad.id = sym::IdentityId::kReflection;
    bad.q = 1;
    bad.k = {1};
    bad.x = {RootOfUnity()};
    bad.label = "bad";
    sym::IdentityCase good;
    good.id = sym::IdentityId::kAlternatingFamily;
    good.l = 1;
    good.label = "good";
    SuiteReport r = run_suite({bad, good}, EvalConfig{});
    CHECK_FALSE(r.passed());
    CHECK(r.summary.total == 2);
    CHECK(r.summary.passed == 1);
    CHECK(r.summary.failed == 1);
    CHECK(r.summary.errors == 1);
    CHECK(r.cases[0].case_.label == "bad");
    CHECK_FALSE(r.cases[0].error.empty());
    CHECK(r.cases[1].passed);
  }

  TEST_CASE("results do not depend on the worker count and are reproducible") {
    SuiteSpec s = parse_suite_toml(kSmall);
    auto cases = generate_cases(s);
    auto digest = [](const SuiteReport& r) {
      std::vector<std::string> v;
      for (const auto& c : r.cases) v.push_back(c.case_.label + value_to_json(c.residual) + (c.passed ? "p" : "f"));
      return v;
    };
    RunOptions one{1e-10, 1, 0}, three{1e-10, 3, 0};
    SuiteReport a = run_suite(cases, s.eval, one);
    SuiteReport b = run_suite(cases, s.eval, three);
    SuiteReport c = run_suite(cases, s.eval, three);
    CHECK(a.passed());
    CHECK(digest(a) == digest(b));
    CHECK(digest(b) == digest(c));
    CHECK(a.precision_bits == working_precision());
  }

  TEST_CASE("spec-level precision applies to every case") {
    SuiteSpec s = parse_suite_toml("precision_bits = 128\nseed = 3\n[[case]]\nid = \"zhao_family\"\nl = 1");
    SuiteReport r = run_suite(s);
    CHECK(r.passed());
    CHECK(r.precision_bits == 128);
    CHECK(r.cases[0].residual.prec_bits() == 128);
    CHECK(r.spec_hash == s.hash());
    CHECK(r.seed == 3);
  }

  TEST_CASE("below the error floor, residuals sit at the evaluation error") {
    // At 80 bits the residuals are ~1e-22, far above a 1e-30 tolerance; each is
    // covered by its own error bound (the 100 eval_err clause) and no tighter.
    SuiteSpec s = parse_suite_toml(R"(
seed = 5
tolerance = 1e-30
precision_bits = 80
[eval]
target_err = 1e-12
[[generate]]
id = "thm2_1"
count = 12
)");
    SuiteReport r = run_suite(s);
    REQUIRE(r.cases.size() == 12);
    std::size_t above_tol = 0;
    for (const auto& c : r.cases) {
      CAPTURE(c.case_.describe());
      CHECK(c.error.empty());
      CHECK(c.eval_err > 1e-30);
      CHECK(c.eval_err < 1e-15);
      CHECK(c.magnitude() <= 100 * c.eval_err);
      if (c.magnitude() > 1e-30) ++above_tol;
    }
    CHECK(above_tol == r.cases.size());
    CHECK(r.passed());
  }
}

TEST_SUITE("reports") {
  TEST_CASE("JSON round trip is lossless") {
    SuiteSpec s = parse_suite_toml(kSmall);
    SuiteReport r = run_suite(s);
    std::string j1 = report_to_json(r);
    SuiteReport back = report_from_json(j1);
    CHECK(report_to_json(back) == j1);
    CHECK(back.cases.size() == r.cases.size());
    CHECK(back.spec_hash == r.spec_hash);
    for (std::size_t i = 0; i < r.cases.size(); ++i) {
      CHECK(dist(back.cases[i].residual, r.cases[i].residual) == 0.0);
      CHECK(back.cases[i].case_.describe() == r.cases[i].case_.describe());
      CHECK(back.cases[i].eval_err == r.cases[i].eval_err);
    }
    auto doc = nlohmann::json::parse(j1);
    CHECK(doc.at("schema") == 1);
    CHECK(doc.at("summary").at("total") == r.cases.size());
  }

  TEST_CASE("values and cases") {
    HPComplex v = HPComplex::rational(1, 3);
    auto doc = nlohmann::json::parse(value_to_json(v));
    CHECK(doc.at("prec_bits") == 192);
    CHECK(Real::from_string(doc.at("re").get<std::string>()) == v.re());
    sym::IdentityCase c;
    c.id = sym::IdentityId::kHurwitzReflection;
    c.q = 2;
    c.x0 = RootOfUnity(1, 6);
    c.k = {1, 3};
    c.x = {RootOfUnity(1, 2), RootOfUnity(2, 3)};
    c.a0 = HPComplex::rational(1, 3);
    c.a = {HPComplex(0.25, -0.5), HPComplex::rational(2, 7)};
    c.label = "x/1";
    c.provenance = "explicit";
    sym::IdentityCase back = case_from_json(case_to_json(c));
    CHECK(case_to_json(back) == case_to_json(c));
    CHECK(dist(back.a0, c.a0) == 0.0);
    CHECK(back.x == c.x);
  }
}

TEST_SUITE("cli") {
  TEST_CASE("eval prints the value as JSON") {
    Cli r = run_cli({"eval", "--series", "cmzv", "--k", "1,2", "--x", "0/1,1/2"});
    CHECK(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("re").get<std::string>().rfind("0.150257", 0) == 0);
    CHECK(std::fabs(std::stod(doc.at("im").get<std::string>())) < 1e-40);
    CHECK(doc.at("prec_bits") == 192);
  }

  TEST_CASE("eval variants") {
    CHECK(run_cli({"eval", "--series", "li", "--k", "2", "--x", "0/1", "--c", "1/2"}).code == 0);
    CHECK(run_cli({"eval", "--series", "phi", "--s", "1", "--x", "1/2"}).code == 0);
    CHECK(run_cli({"eval", "--series", "mhs", "--n", "3", "--k", "1", "--x", "1/2"}).code == 0);
    CHECK(run_cli({"eval", "--series", "mtv_T", "--k", "2"}).code == 0);
    Cli p = run_cli({"eval", "--series", "li", "--k", "2", "--x", "0/1", "--prec", "256"});
    CHECK(nlohmann::json::parse(p.out).at("prec_bits") == 256);
    Cli d = run_cli({"eval", "--series", "li", "--k", "1", "--x", "0/1"});
    CHECK(d.code == 2);
    CHECK(d.err.find("diverg") != std::string::npos);
  }

  TEST_CASE("check exit codes") {
    Cli ok = run_cli({"check", "--id", "eq2_11", "--m", "0", "--x", "1/2", "--a", "0.5"});
    CHECK(ok.code == 0);
    CHECK(nlohmann::json::parse(ok.out).at("passed") == true);
    Cli fail = run_cli({"check", "--id", "cor4_2_alt_sign", "--q", "2", "--k", "1", "--x", "1/3", "--y", "1/4"});
    CHECK(fail.code == 1);
    CHECK(nlohmann::json::parse(fail.out).at("passed") == false);
    CHECK(run_cli({"check", "--id", "thm2_1", "--q", "2", "--x0", "0/1", "--k", "2", "--x", "0/1"}).code == 0);
    CHECK(run_cli({"check", "--id", "thm9_9"}).code == 2);
  }

  TEST_CASE("malformed input exits 2 with a message") {
    Cli r = run_cli({"eval", "--series", "cmzv", "--k", "2", "--x", "1/0"});
    CHECK(r.code == 2);
    CHECK_FALSE(r.err.empty());
    CHECK(run_cli({"eval", "--series", "li", "--k", "2", "--x", "0/1", "--c", "abc"}).code == 2);
    CHECK(run_cli({"eval", "--series", "nope"}).code == 2);
    CHECK(run_cli({"frobnicate"}).code == 2);
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"suite", "--config", temp_path("missing.toml")}).code == 2);
  }

  TEST_CASE("suite writes a report") {
    std::string cfg = temp_path("suite.toml");
    std::string out = temp_path("report.json");
    {
      std::ofstream f(cfg);
      f << kSmall;
    }
    Cli r = run_cli({"suite", "--config", cfg, "--out", out, "--workers", "2"});
    CHECK(r.code == 0);
    std::ifstream f(out);
    std::stringstream ss;
    ss << f.rdbuf();
    SuiteReport rep = report_from_json(ss.str());
    CHECK(rep.passed());
    CHECK(rep.cases.size() == 14);
    Cli tight = run_cli({"suite", "--config", cfg, "--out", out, "--tol", "1e-300"});
    CHECK(tight.code == 0);
    std::remove(cfg.c_str());
    std::remove(out.c_str());
  }

  TEST_CASE("expand") {
    Cli r = run_cli({"expand", "--lemma", "L3_2", "--n", "2", "--x", "1/4", "--M", "3", "--delta", "0.01"});
    CHECK(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("expected") == 16.0);
    CHECK(doc.at("passed") == true);
    CHECK(run_cli({"expand", "--lemma", "L9_9"}).code == 2);
  }
}
