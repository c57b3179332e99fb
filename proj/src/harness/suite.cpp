#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>
#include <toml.hpp>

#include "czeta/errors.hpp"
#include "czeta/harness.hpp"

namespace czeta::harness {

using json = nlohmann::json;
using sym::IdentityCase;
using sym::IdentityId;

namespace {

constexpr int kMaxResamples = 10000;

// ---- parameters and values -------------------------------------------------

Real parse_real(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Real::from_string(text);
  Real num = Real::from_string(text.substr(0, slash));
  Real den = Real::from_string(text.substr(slash + 1));
  if (den.is_zero()) throw ParseError("zero denominator in '" + text + "'");
  return num / den;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

json param_to_json(const HPComplex& v) { return json::array({v.re().to_string(), v.im().to_string()}); }

Real real_from_json(const json& j) {
  if (j.is_number()) return Real(j.get<double>());
  if (j.is_string()) return parse_real(j.get<std::string>());
  throw ParseError("expected a number or numeric string, got " + j.dump());
}

HPComplex param_from_json(const json& j) {
  if (j.is_array()) {
    if (j.size() != 2) throw ParseError("complex parameter must be [re, im]");
    return HPComplex(Complex(real_from_json(j[0]), real_from_json(j[1])));
  }
  if (j.is_string()) return parse_param(j.get<std::string>());
  if (j.is_number()) return HPComplex(Complex(Real(j.get<double>())));
  throw ParseError("bad parameter " + j.dump());
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
double number_or_inf(const json& j) { return j.is_null() ? INFINITY : j.get<double>(); }

// ---- cases -------------------------------------------------------------------

json case_json(const IdentityCase& c) {
  json j;
  j["id"] = std::string(sym::identity_name(c.id));
  j["label"] = c.label;
  j["provenance"] = c.provenance;
  j["q"] = c.q;
  j["x0"] = c.x0.to_string();
  j["k"] = c.k;
  json xs = json::array();
  for (const auto& x : c.x) xs.push_back(x.to_string());
  j["x"] = xs;
  j["a0"] = param_to_json(c.a0);
  json as = json::array();
  for (const auto& a : c.a) as.push_back(param_to_json(a));
  j["a"] = as;
  j["m"] = c.m;
  j["l"] = c.l;
  return j;
}

IdentityId identity_of(const std::string& name) {
  auto id = sym::identity_from_name(name);
  if (!id) throw ConfigError("unknown identity '" + name + "'");
  return *id;
}

IdentityCase case_from(const json& j) {
  static const std::set<std::string> known{"id", "label", "provenance", "q", "x0", "k", "x", "a0", "a", "m", "l"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) throw ConfigError("unknown case key '" + it.key() + "'");
  }
  IdentityCase c;
  if (!j.contains("id")) throw ConfigError("case without id");
  c.id = identity_of(j.at("id").get<std::string>());
  c.label = j.value("label", std::string());
  c.provenance = j.value("provenance", std::string("explicit"));
  c.q = j.value("q", 1);
  if (j.contains("x0")) c.x0 = RootOfUnity::parse(j.at("x0").get<std::string>());
  if (j.contains("k")) c.k = j.at("k").get<std::vector<int>>();
  if (j.contains("x")) {
    for (const auto& x : j.at("x")) c.x.push_back(RootOfUnity::parse(x.get<std::string>()));
  }
  if (j.contains("a0")) c.a0 = param_from_json(j.at("a0"));
  if (j.contains("a")) {
    for (const auto& a : j.at("a")) c.a.push_back(param_from_json(a));
  }
  c.m = j.value("m", 0);
  c.l = j.value("l", 1);
  return c;
}

json value_json(const HPComplex& v) {
  return json{{"re", v.re().to_string()},
              {"im", v.im().to_string()},
              {"err", number_or_null(v.err())},
              {"prec_bits", static_cast<long>(v.prec_bits())}};
}

HPComplex value_from(const json& j) {
  prec_t p = j.at("prec_bits").get<long>();
  return HPComplex(Real::from_string(j.at("re").get<std::string>(), p),
                   Real::from_string(j.at("im").get<std::string>(), p), number_or_inf(j.at("err")));
}

json residual_json(const sym::ResidualReport& r) {
  json j;
  j["label"] = r.case_.label;
  j["case"] = case_json(r.case_);
  j["residual"] = value_json(r.residual);
  j["magnitude"] = number_or_null(r.magnitude());
  j["eval_err"] = number_or_null(r.eval_err);
  j["tolerance"] = r.tolerance;
  j["passed"] = r.passed;
  j["wall_time"] = r.wall_time.count();
  j["error"] = r.error;
  return j;
}

// ---- config ------------------------------------------------------------------

json eval_json(const EvalConfig& e) {
  return json{{"method", e.method == EvalConfig::Method::kAsymptoticTail ? "asymptotic_tail" : "block_richardson"},
              {"cutoff", e.cutoff},
              {"richardson_levels", e.richardson_levels},
              {"period_block", e.period_block},
              {"target_err", e.target_err},
              {"tail_order", e.tail_order},
              {"use_cache", e.use_cache}};
}

json block_json(const GenerationBlock& b) {
  return json{{"id", std::string(sym::identity_name(b.id))},
              {"count", b.count},
              {"params_per_shape", b.params_per_shape},
              {"depth", {b.depth_min, b.depth_max}},
              {"q_max", b.q_max},
              {"k_max", b.k_max},
              {"weight_cap", b.weight_cap},
              {"root_orders", b.root_orders},
              {"re_range", {b.region.re_min, b.region.re_max}},
              {"im_max", b.region.im_max},
              {"min_integer_distance", b.region.min_integer_distance},
              {"m_max", b.m_max},
              {"l_max", b.l_max},
              {"distinct", b.distinct}};
}

json spec_json(const SuiteSpec& s) {
  json j;
  j["seed"] = s.seed;
  j["tolerance"] = s.tolerance;
  j["workers"] = s.workers;
  j["precision_bits"] = s.precision_bits ? json(static_cast<long>(*s.precision_bits)) : json(nullptr);
  j["eval"] = eval_json(s.eval);
  json cases = json::array();
  for (const auto& c : s.cases) cases.push_back(case_json(c));
  j["cases"] = cases;
  json gens = json::array();
  for (const auto& b : s.generate) gens.push_back(block_json(b));
  j["generate"] = gens;
  return j;
}

json toml_to_json(const toml::node& node) {
  if (auto t = node.as_table()) {
    json j = json::object();
    for (auto&& [k, v] : *t) j[std::string(k.str())] = toml_to_json(v);
    return j;
  }
  if (auto a = node.as_array()) {
    json j = json::array();
    for (auto&& v : *a) j.push_back(toml_to_json(v));
    return j;
  }
  if (auto v = node.as_string()) return json(v->get());
  if (auto v = node.as_integer()) return json(v->get());
  if (auto v = node.as_floating_point()) return json(v->get());
  if (auto v = node.as_boolean()) return json(v->get());
  throw ConfigError("unsupported TOML value (dates are not allowed)");
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + where);
  }
}

template <class T>
T get_as(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("bad value for '") + key + "': " + j.at(key).dump());
  }
}

std::pair<int, int> int_range(const json& j, const char* key, std::pair<int, int> fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (v.is_number_integer()) return {v.get<int>(), v.get<int>()};
  if (v.is_array() && v.size() == 2) return {v[0].get<int>(), v[1].get<int>()};
  throw ConfigError(std::string("'") + key + "' must be an integer or [min, max]");
}

EvalConfig eval_from(const json& j) {
  reject_unknown(j,
                 {"method", "cutoff", "richardson_levels", "period_block", "target_err", "tail_order", "use_cache"},
                 "[eval]");
  EvalConfig e;
  std::string method = get_as<std::string>(j, "method", "asymptotic_tail");
  if (method == "asymptotic_tail") {
    e.method = EvalConfig::Method::kAsymptoticTail;
  } else if (method == "block_richardson") {
    e.method = EvalConfig::Method::kBlockRichardson;
  } else {
    throw ConfigError("unknown eval method '" + method + "'");
  }
  e.cutoff = get_as<std::int64_t>(j, "cutoff", e.cutoff);
  e.richardson_levels = get_as<int>(j, "richardson_levels", e.richardson_levels);
  e.period_block = get_as<bool>(j, "period_block", e.period_block);
  e.target_err = get_as<double>(j, "target_err", e.target_err);
  e.tail_order = get_as<int>(j, "tail_order", e.tail_order);
  e.use_cache = get_as<bool>(j, "use_cache", e.use_cache);
  if (e.cutoff < 0 || e.richardson_levels < 0 || e.tail_order < 0 || !(e.target_err > 0)) {
    throw ConfigError("[eval] values must be nonnegative and target_err positive");
  }
  return e;
}

GenerationBlock block_from(const json& j) {
  reject_unknown(j,
                 {"id", "count", "params_per_shape", "depth", "q_max", "k_max", "weight_cap", "root_orders",
                  "re_range", "im_max", "min_integer_distance", "m_max", "l_max", "distinct"},
                 "[[generate]]");
  GenerationBlock b;
  if (!j.contains("id")) throw ConfigError("[[generate]] block without id");
  b.id = identity_of(j.at("id").get<std::string>());
  b.count = get_as<int>(j, "count", 0);
  b.params_per_shape = get_as<int>(j, "params_per_shape", 1);
  std::tie(b.depth_min, b.depth_max) = int_range(j, "depth", {b.depth_min, b.depth_max});
  b.q_max = get_as<int>(j, "q_max", b.q_max);
  b.k_max = get_as<int>(j, "k_max", b.k_max);
  b.weight_cap = get_as<int>(j, "weight_cap", b.weight_cap);
  b.root_orders = get_as<std::vector<int>>(j, "root_orders", b.root_orders);
  if (j.contains("re_range")) {
    auto r = j.at("re_range").get<std::vector<double>>();
    if (r.size() != 2) throw ConfigError("re_range must be [min, max]");
    b.region.re_min = r[0];
    b.region.re_max = r[1];
  }
  b.region.im_max = get_as<double>(j, "im_max", b.region.im_max);
  b.region.min_integer_distance = get_as<double>(j, "min_integer_distance", b.region.min_integer_distance);
  b.m_max = get_as<int>(j, "m_max", b.m_max);
  b.l_max = get_as<int>(j, "l_max", b.l_max);
  b.distinct = get_as<bool>(j, "distinct", b.distinct);
  if (b.count < 0 || b.params_per_shape < 1) throw ConfigError("count must be >= 0 and params_per_shape >= 1");
  if (b.depth_min < 0 || b.depth_max < b.depth_min) throw ConfigError("depth range is empty or negative");
  if (b.q_max < 1 || b.k_max < 1) throw ConfigError("q_max and k_max must be positive");
  if (b.region.re_max < b.region.re_min || b.region.im_max < 0) throw ConfigError("empty parameter region");
  for (int d : b.root_orders) {
    if (d < 1) throw ConfigError("root orders must be positive");
  }
  if (b.root_orders.empty()) throw ConfigError("root_orders is empty");
  return b;
}

// ---- generation --------------------------------------------------------------

class Sampler {
 public:
  Sampler(std::uint64_t seed, std::size_t block, const GenerationBlock& b) : b_(b) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(block)};
    rng_.seed(seq);
    std::set<RootOfUnity> roots;
    for (int d : b.root_orders) {
      for (int p = 0; p < d; ++p) {
        if (std::gcd(p, d) == 1) roots.insert(RootOfUnity(p, d));
      }
    }
    roots_.assign(roots.begin(), roots.end());
  }

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  RootOfUnity root() { return roots_[static_cast<std::size_t>(uniform(0, static_cast<int>(roots_.size()) - 1))]; }

  // A parameter from the region, or nullopt when Re(a) lands too close to an integer.
  std::optional<HPComplex> param() {
    double re = std::uniform_real_distribution<double>(b_.region.re_min, b_.region.re_max)(rng_);
    double im = b_.region.im_max > 0 ? std::uniform_real_distribution<double>(-b_.region.im_max, b_.region.im_max)(rng_)
                                     : 0.0;
    if (std::fabs(re - std::round(re)) < b_.region.min_integer_distance) return std::nullopt;
    return HPComplex(re, im);
  }

 private:
  const GenerationBlock& b_;
  std::mt19937_64 rng_;
  std::vector<RootOfUnity> roots_;
};

bool uses_params(IdentityId id) {
  switch (id) {
    case IdentityId::kHurwitzReflection:
    case IdentityId::kDoubleHurwitz:
    case IdentityId::kCscSquareExample:
    case IdentityId::kCscCotExample:
    case IdentityId::kDerivativeClosedForm:
      return true;
    default:
      return false;
  }
}

// Fills a0 and a for the case's identity; returns the violated constraint on failure.
std::optional<std::string> draw_params(Sampler& S, IdentityCase& c) {
  std::size_t count = 0;
  switch (c.id) {
    case IdentityId::kHurwitzReflection:
      count = c.k.size();
      break;
    case IdentityId::kDoubleHurwitz:
    case IdentityId::kCscSquareExample:
    case IdentityId::kCscCotExample:
      count = 1;
      break;
    case IdentityId::kDerivativeClosedForm:
      count = 0;
      break;
    default:
      return std::nullopt;
  }
  auto a0 = S.param();
  if (!a0) return "parameter Re(a) within min_integer_distance of an integer";
  c.a0 = *a0;
  c.a.clear();
  for (std::size_t i = 0; i < count; ++i) {
    auto a = S.param();
    if (!a) return "parameter Re(a) within min_integer_distance of an integer";
    c.a.push_back(*a);
  }
  return sym::admissibility_violation(c);
}

std::optional<std::string> draw_shape(Sampler& S, const GenerationBlock& b, IdentityCase& c) {
  c.k.clear();
  c.x.clear();
  switch (b.id) {
    case IdentityId::kReflection:
    case IdentityId::kHurwitzReflection:
    case IdentityId::kTValueReflection: {
      int r = S.uniform(b.depth_min, b.depth_max);
      c.q = S.uniform(1, b.q_max);
      c.x0 = S.root();
      int weight = c.q;
      for (int i = 0; i < r; ++i) {
        c.k.push_back(S.uniform(1, b.k_max));
        c.x.push_back(S.root());
        weight += c.k.back();
      }
      if (weight > b.weight_cap) return "weight cap " + std::to_string(b.weight_cap) + " exceeded";
      break;
    }
    case IdentityId::kDoubleReflection:
    case IdentityId::kDoubleParity:
    case IdentityId::kDoubleParityAltSign:
    case IdentityId::kDoubleHurwitz:
    case IdentityId::kStuffle:
      c.q = S.uniform(1, b.q_max);
      c.k = {S.uniform(1, b.k_max)};
      c.x0 = S.root();
      c.x = {S.root()};
      if (c.q + c.k[0] > b.weight_cap) return "weight cap " + std::to_string(b.weight_cap) + " exceeded";
      break;
    case IdentityId::kCscSquareExample:
    case IdentityId::kCscCotExample:
      c.x0 = S.root();
      break;
    case IdentityId::kDerivativeClosedForm:
      c.m = S.uniform(0, b.m_max);
      c.x0 = S.root();
      break;
    case IdentityId::kAlternatingFamily:
      c.l = S.uniform(1, std::max(1, b.l_max));
      break;
    case IdentityId::kTValueRelation: {
      int r = S.uniform(std::max(1, b.depth_min), std::max(1, b.depth_max));
      int weight = 0;
      for (int i = 0; i < r; ++i) {
        c.k.push_back(S.uniform(1, b.k_max));
        weight += c.k.back();
      }
      if (weight > b.weight_cap) return "weight cap " + std::to_string(b.weight_cap) + " exceeded";
      break;
    }
  }
  if (uses_params(b.id)) return draw_params(S, c);
  return sym::admissibility_violation(c);
}

void generate_block(const SuiteSpec& spec, std::size_t index, std::vector<IdentityCase>& out) {
  const GenerationBlock& b = spec.generate[index];
  Sampler S(spec.seed, index, b);
  std::set<std::string> seen;
  int per_shape = uses_params(b.id) ? b.params_per_shape : 1;
  std::string name(sym::identity_name(b.id));
  int draws = 0;
  auto fail = [&](const std::string& why) {
    throw GenerationError(name + " generation: " + std::to_string(kMaxResamples) +
                          " consecutive draws rejected; last violated constraint: " + why);
  };
  auto accept = [&](IdentityCase c) -> bool {
    std::string key = c.describe();
    if (b.distinct && !seen.insert(key).second) return false;
    c.provenance = "generated seed=" + std::to_string(spec.seed) + " block=" + std::to_string(index) +
                   " draw=" + std::to_string(draws);
    c.label = name + "/g" + std::to_string(index) + "/" + std::to_string(out.size());
    out.push_back(std::move(c));
    return true;
  };
  for (int shape = 0; shape < b.count; ++shape) {
    IdentityCase c;
    c.id = b.id;
    std::string why;
    int tries = 0;
    for (;;) {
      ++draws;
      if (auto v = draw_shape(S, b, c)) {
        why = *v;
      } else if (accept(c)) {
        break;
      } else {
        why = "distinct cases exhausted (the shape space is smaller than count)";
      }
      if (++tries >= kMaxResamples) fail(why);
    }
    for (int extra = 1; extra < per_shape; ++extra) {
      tries = 0;
      for (;;) {
        ++draws;
        if (auto v = draw_params(S, c)) {
          why = *v;
        } else if (accept(c)) {
          break;
        } else {
          why = "distinct parameter tuples exhausted";
        }
        if (++tries >= kMaxResamples) fail(why);
      }
    }
  }
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

// ---- public API -------------------------------------------------------------

HPComplex parse_param(const std::string& raw) {
  std::string text = trim(raw);
  if (text.empty()) throw ParseError("empty parameter");
  if (text.back() != 'i') return HPComplex(Complex(parse_real(text), Real::zero(working_precision())));
  std::string body = text.substr(0, text.size() - 1);
  // Split at the last sign that is not leading and not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  std::string re = split == std::string::npos ? "0" : body.substr(0, split);
  std::string im = split == std::string::npos ? body : body.substr(split);
  if (im == "+" || im == "" ) im = "1";
  if (im == "-") im = "-1";
  if (im[0] == '+') im = im.substr(1);
  return HPComplex(Complex(parse_real(re), parse_real(im)));
}

std::string SuiteSpec::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(spec_json(*this).dump())));
  return buf;
}

SuiteSpec parse_suite_toml(const std::string& text) {
  json j;
  try {
    j = toml_to_json(toml::parse(text));
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << "TOML parse error at line " << e.source().begin.line << ": " << e.description();
    throw ParseError(os.str());
  }
  reject_unknown(j, {"seed", "tolerance", "workers", "precision_bits", "eval", "case", "generate"}, "suite");
  SuiteSpec s;
  s.seed = static_cast<std::uint64_t>(get_as<std::int64_t>(j, "seed", 0));
  s.tolerance = get_as<double>(j, "tolerance", s.tolerance);
  if (!(s.tolerance > 0)) throw ConfigError("tolerance must be positive");
  s.workers = get_as<int>(j, "workers", 0);
  if (j.contains("precision_bits")) {
    long p = get_as<long>(j, "precision_bits", 0);
    if (p < 64 || p > 100000) throw ConfigError("precision_bits must lie in [64, 100000]");
    s.precision_bits = static_cast<prec_t>(p);
  }
  // Parameters are read at the suite's precision.
  PrecisionScope scope(s.precision_bits.value_or(working_precision()));
  if (j.contains("eval")) s.eval = eval_from(j.at("eval"));
  if (j.contains("case")) {
    std::size_t n = 0;
    for (const auto& cj : j.at("case")) {
      IdentityCase c;
      try {
        c = case_from(cj);
      } catch (const ParseError& e) {
        throw ParseError(std::string("case ") + std::to_string(n) + ": " + e.what());
      } catch (const json::exception& e) {
        throw ConfigError(std::string("case ") + std::to_string(n) + ": " + e.what());
      }
      c.provenance = "explicit";
      if (c.label.empty()) c.label = std::string(sym::identity_name(c.id)) + "/explicit/" + std::to_string(n);
      s.cases.push_back(std::move(c));
      ++n;
    }
  }
  if (j.contains("generate")) {
    for (const auto& bj : j.at("generate")) {
      try {
        s.generate.push_back(block_from(bj));
      } catch (const json::exception& e) {
        throw ConfigError(std::string("[[generate]]: ") + e.what());
      }
    }
  }
  return s;
}

SuiteSpec load_suite_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read suite file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_suite_toml(ss.str());
}

std::vector<IdentityCase> generate_cases(const SuiteSpec& spec) {
  PrecisionScope scope(spec.precision_bits.value_or(working_precision()));
  std::vector<IdentityCase> out = spec.cases;
  for (std::size_t b = 0; b < spec.generate.size(); ++b) generate_block(spec, b, out);
  return out;
}

SuiteReport run_suite(const std::vector<IdentityCase>& cases, const EvalConfig& cfg, const RunOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  prec_t prec = opts.precision_bits ? opts.precision_bits : working_precision();
  std::size_t workers = opts.workers > 0 ? static_cast<std::size_t>(opts.workers)
                                         : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(cases.size(), 1));
  std::vector<sym::ResidualReport> results(cases.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    PrecisionScope scope(prec);
    for (std::size_t i; (i = next.fetch_add(1)) < cases.size();) {
      results[i] = sym::check(cases[i], cfg, opts.tolerance);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  SuiteReport rep;
  rep.precision_bits = prec;
  rep.cases = std::move(results);
  for (const auto& r : rep.cases) {
    ++rep.summary.total;
    if (r.passed) {
      ++rep.summary.passed;
    } else {
      ++rep.summary.failed;
      if (!r.error.empty()) ++rep.summary.errors;
    }
  }
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

SuiteReport run_suite(const SuiteSpec& spec) {
  std::vector<IdentityCase> cases = generate_cases(spec);
  RunOptions opts;
  opts.tolerance = spec.tolerance;
  opts.workers = spec.workers;
  opts.precision_bits = spec.precision_bits.value_or(working_precision());
  SuiteReport rep = run_suite(cases, spec.eval, opts);
  rep.spec_hash = spec.hash();
  rep.seed = spec.seed;
  return rep;
}

std::string report_to_json(const SuiteReport& report, int indent) {
  json j;
  j["schema"] = 1;
  j["spec_hash"] = report.spec_hash;
  j["seed"] = report.seed;
  j["precision_bits"] = static_cast<long>(report.precision_bits);
  json cases = json::array();
  for (const auto& r : report.cases) cases.push_back(residual_json(r));
  j["cases"] = cases;
  j["summary"] = json{{"total", report.summary.total},
                      {"passed", report.summary.passed},
                      {"failed", report.summary.failed},
                      {"errors", report.summary.errors}};
  j["passed"] = report.passed();
  j["wall_time"] = report.wall_time;
  return j.dump(indent);
}

SuiteReport report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("report JSON: ") + e.what());
  }
  if (j.value("schema", 0) != 1) throw ParseError("unsupported report schema");
  try {
    SuiteReport rep;
    rep.spec_hash = j.at("spec_hash").get<std::string>();
    rep.seed = j.at("seed").get<std::uint64_t>();
    rep.precision_bits = j.at("precision_bits").get<long>();
    PrecisionScope scope(rep.precision_bits);
    for (const auto& cj : j.at("cases")) {
      sym::ResidualReport r;
      r.case_ = case_from(cj.at("case"));
      r.residual = value_from(cj.at("residual"));
      r.eval_err = number_or_inf(cj.at("eval_err"));
      r.tolerance = cj.at("tolerance").get<double>();
      r.passed = cj.at("passed").get<bool>();
      r.wall_time = std::chrono::duration<double>(cj.at("wall_time").get<double>());
      r.error = cj.at("error").get<std::string>();
      rep.cases.push_back(std::move(r));
    }
    const json& s = j.at("summary");
    rep.summary.total = s.at("total").get<std::size_t>();
    rep.summary.passed = s.at("passed").get<std::size_t>();
    rep.summary.failed = s.at("failed").get<std::size_t>();
    rep.summary.errors = s.at("errors").get<std::size_t>();
    rep.wall_time = j.at("wall_time").get<double>();
    return rep;
  } catch (const json::exception& e) {
    throw ParseError(std::string("report JSON: ") + e.what());
  }
}

std::string value_to_json(const HPComplex& v) { return value_json(v).dump(); }
std::string case_to_json(const IdentityCase& c) { return case_json(c).dump(); }

IdentityCase case_from_json(const std::string& text) {
  try {
    return case_from(json::parse(text));
  } catch (const json::exception& e) {
    throw ParseError(std::string("case JSON: ") + e.what());
  }
}

std::string residual_report_to_json(const sym::ResidualReport& r) { return residual_json(r).dump(2); }

}  // namespace czeta::harness
