#include "czeta/series.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "czeta/errors.hpp"
#include "engine.hpp"

namespace czeta {

namespace {

constexpr std::size_t kCacheLimit = 1u << 18;

struct CacheEntry {
  Complex value;
  double err;
};

struct SeriesCache {
  std::mutex mu;
  std::unordered_map<std::string, CacheEntry> map;
  std::atomic<std::uint64_t> hits{0};
  std::atomic<std::uint64_t> misses{0};
};

SeriesCache& cache() {
  static SeriesCache c;
  return c;
}

void append_exact(std::string& key, const Real& v) {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%Ra", v.raw());
  key += buf;
  mpfr_free_str(buf);
}

std::string cache_key(const std::vector<SeriesLevel>& levels, const EvalConfig& cfg) {
  std::string key;
  key.reserve(64 * levels.size());
  key += std::to_string(static_cast<int>(cfg.method)) + ';' + std::to_string(cfg.cutoff) + ';' +
         std::to_string(cfg.tail_order) + ';' + std::to_string(cfg.richardson_levels) + ';' +
         (cfg.period_block ? "b" : "n") + ';' + std::to_string(working_precision()) + '|';
  for (const auto& lv : levels) {
    key += lv.x.to_string();
    for (const auto& t : lv.terms) {
      key += '[' + std::to_string(t.k) + ',';
      append_exact(key, t.weight.re());
      key += ',';
      append_exact(key, t.weight.im());
      key += ',';
      append_exact(key, t.c.re());
      key += ',';
      append_exact(key, t.c.im());
      key += ']';
    }
    key += '|';
  }
  return key;
}

void require_target(const HPComplex& v, const EvalConfig& cfg, const char* what) {
  double bound = cfg.target_err * std::max(1.0, v.abs_d());
  if (!(v.err() <= bound)) {
    throw PrecisionError(std::string(what) + ": error bound " + std::to_string(v.err()) +
                             " exceeds target " + std::to_string(bound),
                         v.err());
  }
}

HPComplex one_at_working() { return HPComplex(Complex(Real::with_prec(1.0, working_precision()))); }

bool near_nonpositive_integer(const HPComplex& s) {
  double tiny = std::ldexp(1.0, -40);
  if (std::fabs(s.im().to_double()) > tiny) return false;
  Real n = round_nearest(s.re());
  return n.sign() <= 0 && std::fabs((s.re() - n).to_double()) <= tiny;
}

bool near_integer(const HPComplex& s) {
  double tiny = std::ldexp(1.0, -40);
  if (std::fabs(s.im().to_double()) > tiny) return false;
  Real n = round_nearest(s.re());
  return std::fabs((s.re() - n).to_double()) <= tiny;
}

// Extra error from uncertainty in the parameters c (first-order sensitivity bound).
double parameter_err(const std::vector<SeriesLevel>& levels, double value_mag) {
  double e = 0.0;
  for (const auto& lv : levels) {
    for (const auto& t : lv.terms) e += t.c.err() * t.k * (1.0 + value_mag) * 4.0;
  }
  return e;
}

}  // namespace

std::int64_t EvalConfig::effective_cutoff() const {
  if (cutoff > 0) return cutoff;
  return method == Method::kBlockRichardson ? kRichardsonDefaultCutoff : 0;
}

void EvalConfig::validate(std::int64_t max_root_order) const {
  if (target_err <= 0) throw ConfigError("target_err must be positive");
  if (richardson_levels < 0 || richardson_levels > 20) throw ConfigError("richardson_levels out of range");
  if (tail_order < 0) throw ConfigError("tail_order must be nonnegative");
  if (method == Method::kBlockRichardson) {
    std::int64_t M = effective_cutoff();
    std::int64_t need = 10 * max_root_order * (std::int64_t{1} << richardson_levels);
    if (M < need) {
      throw ConfigError("cutoff " + std::to_string(M) + " below 10 * order * 2^levels = " +
                        std::to_string(need));
    }
  }
}

ZetaIndex::ZetaIndex(std::vector<int> k, std::vector<RootOfUnity> x, std::vector<HPComplex> c)
    : k_(std::move(k)), x_(std::move(x)), c_(std::move(c)) {
  if (k_.empty()) throw DomainError("ZetaIndex needs depth >= 1");
  if (k_.size() != x_.size() || k_.size() != c_.size()) {
    throw DomainError("ZetaIndex arrays must have equal length");
  }
  for (int v : k_) {
    if (v < 1) throw DomainError("ZetaIndex exponents must be positive");
  }
}

ZetaIndex::ZetaIndex(std::vector<int> k, std::vector<RootOfUnity> x)
    : ZetaIndex(k, x, std::vector<HPComplex>(k.size(), HPComplex(1))) {}

int ZetaIndex::weight() const {
  int w = 0;
  for (int v : k_) w += v;
  return w;
}

bool ZetaIndex::convergent() const { return !(k_.back() == 1 && x_.back().is_one()); }

bool ZetaIndex::pole_free() const {
  double tiny = std::ldexp(1.0, -40);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (std::fabs(c_[i].im().to_double()) > tiny) continue;
    Real shift = c_[i].re() - 1L;
    Real n = round_nearest(shift);
    if (std::fabs((shift - n).to_double()) <= tiny && -n.to_long() >= static_cast<long>(i + 1)) {
      return false;
    }
  }
  return true;
}

ZetaIndex ZetaIndex::reversed() const {
  return ZetaIndex(std::vector<int>(k_.rbegin(), k_.rend()),
                   std::vector<RootOfUnity>(x_.rbegin(), x_.rend()),
                   std::vector<HPComplex>(c_.rbegin(), c_.rend()));
}

ZetaIndex ZetaIndex::inverted_x() const {
  std::vector<RootOfUnity> inv_x;
  for (const auto& v : x_) inv_x.push_back(v.inverse());
  return ZetaIndex(k_, inv_x, c_);
}

std::string ZetaIndex::to_string() const {
  std::ostringstream os;
  os << "k=(";
  for (std::size_t i = 0; i < k_.size(); ++i) os << (i ? "," : "") << k_[i];
  os << ") x=(";
  for (std::size_t i = 0; i < x_.size(); ++i) os << (i ? "," : "") << x_[i].to_string();
  os << ") c=(";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    os << (i ? "," : "") << c_[i].re().to_string(12);
    if (!c_[i].im().is_zero()) os << (c_[i].im().sign() < 0 ? "" : "+") << c_[i].im().to_string(12) << "i";
  }
  os << ")";
  return os.str();
}

HPComplex nested_sum(const std::vector<SeriesLevel>& levels, const EvalConfig& cfg) {
  if (levels.empty()) return one_at_working();
  std::string key;
  if (cfg.use_cache) {
    key = cache_key(levels, cfg);
    SeriesCache& c = cache();
    std::lock_guard<std::mutex> lock(c.mu);
    auto it = c.map.find(key);
    if (it != c.map.end()) {
      c.hits.fetch_add(1, std::memory_order_relaxed);
      return HPComplex(it->second.value, it->second.err);
    }
  }
  auto res = detail::evaluate_levels(levels, cfg);
  double err = res.err + parameter_err(levels, abs_d(res.value));
  if (cfg.use_cache) {
    SeriesCache& c = cache();
    c.misses.fetch_add(1, std::memory_order_relaxed);
    std::lock_guard<std::mutex> lock(c.mu);
    if (c.map.size() >= kCacheLimit) c.map.clear();
    c.map.emplace(key, CacheEntry{res.value, err});
  }
  return HPComplex(std::move(res.value), err);
}

HPComplex cmhzv(const ZetaIndex& idx, const EvalConfig& cfg) {
  if (!idx.convergent()) throw DivergenceError("cmhzv: (k_r, x_r) = (1, 1) diverges");
  if (!idx.pole_free()) throw PoleError("cmhzv: a denominator n_i + c_i - 1 vanishes");
  std::vector<SeriesLevel> levels;
  levels.reserve(idx.depth());
  for (std::size_t i = 0; i < idx.depth(); ++i) {
    levels.push_back(SeriesLevel{idx.x()[i], {SeriesTerm{HPComplex(1), idx.k()[i], idx.c()[i]}}});
  }
  HPComplex v = nested_sum(levels, cfg);
  require_target(v, cfg, "cmhzv");
  return v;
}

HPComplex cmzv(const std::vector<int>& k, const std::vector<RootOfUnity>& x, const EvalConfig& cfg) {
  if (k.empty() && x.empty()) return one_at_working();
  return cmhzv(ZetaIndex(k, x), cfg);
}

HPComplex mtv(const std::vector<int>& k, const std::vector<RootOfUnity>& x, const EvalConfig& cfg) {
  if (k.empty() && x.empty()) return one_at_working();
  return cmhzv(ZetaIndex(k, x, std::vector<HPComplex>(k.size(), HPComplex::rational(1, 2))), cfg);
}

HPComplex mtv_T(const std::vector<int>& k, const EvalConfig& cfg) {
  if (k.empty()) return one_at_working();
  if (k.back() == 1) throw DivergenceError("mtv_T: k_r = 1 diverges");
  // 2^r times the sum over m_i = i (mod 2); the parity filter
  // (1 + (-1)^i (-1)^(m_i)) / 2 expands into 2^r alternating values.
  std::size_t r = k.size();
  HPComplex total(Complex::zero(working_precision()));
  for (std::uint32_t mask = 0; mask < (1u << r); ++mask) {
    std::vector<RootOfUnity> x(r);
    int sign = 0;
    for (std::size_t i = 0; i < r; ++i) {
      if (mask & (1u << i)) {
        x[i] = RootOfUnity::minus_one();
        sign += static_cast<int>(i + 1);
      }
    }
    HPComplex v = cmzv(k, x, cfg);
    if (sign % 2) total -= v; else total += v;
  }
  return total;
}

HPComplex li_single(int k, const RootOfUnity& x, const HPComplex& c, const EvalConfig& cfg) {
  if (k < 1) throw DomainError("li_single needs k >= 1");
  if (k == 1 && x.is_one()) throw DivergenceError("li_single: (k, x) = (1, 1) diverges");
  return cmhzv(ZetaIndex({k}, {x}, {c}), cfg);
}

HPComplex phi(const HPComplex& s, const RootOfUnity& x, const EvalConfig& cfg) {
  if (near_nonpositive_integer(s)) throw PoleError("phi: s is a nonpositive integer");
  if (x.is_one()) throw DivergenceError("phi: x = 1 diverges");
  // sum_{k>=0} x^k/(k+s) = x^(-1) sum_{n>=1} x^n/(n + s - 1).
  HPComplex v = nested_sum({SeriesLevel{x, {SeriesTerm{HPComplex(1), 1, s}}}}, cfg);
  HPComplex out = v * HPComplex(x.inverse().value());
  require_target(out, cfg, "phi");
  return out;
}

HPComplex phi(const HPComplex& s, const HPComplex& x, const EvalConfig& cfg) {
  if (near_nonpositive_integer(s)) throw PoleError("phi: s is a nonpositive integer");
  if (abs_d(x.value() - Complex(1)) < 1e-30) throw DivergenceError("phi: x = 1 diverges");
  auto res = detail::evaluate_general_phase(x.value(), {SeriesTerm{HPComplex(1), 1, s}}, cfg);
  HPComplex v(std::move(res.value), res.err);
  HPComplex out = v / x;
  require_target(out, cfg, "phi");
  return out;
}

HPComplex phi_ext(const HPComplex& s, const RootOfUnity& x, const EvalConfig& cfg) {
  if (near_integer(s)) throw PoleError("phi_ext: s is an integer");
  HPComplex one = one_at_working();
  HPComplex inv_s = one / s;
  HPComplex out;
  if (x.is_one()) {
    // 1/s + sum_{n>=1} [1/(n+s) - 1/(n-s)]
    HPComplex paired = nested_sum(
        {SeriesLevel{x, {SeriesTerm{HPComplex(1), 1, s + one}, SeriesTerm{HPComplex(-1), 1, one - s}}}},
        cfg);
    out = paired + inv_s;
  } else {
    out = phi(s, x, cfg) - phi(-s, x.inverse(), cfg) - inv_s;
  }
  require_target(out, cfg, "phi_ext");
  return out;
}

HPComplex mhs_hurwitz(std::int64_t n, const std::vector<int>& k, const std::vector<RootOfUnity>& x,
                      const std::vector<HPComplex>& a) {
  if (k.size() != x.size() || k.size() != a.size()) throw DomainError("mhs: array lengths differ");
  if (n < 0) throw DomainError("mhs: n must be nonnegative");
  prec_t prec = working_precision();
  if (k.empty()) return one_at_working();
  if (n < static_cast<std::int64_t>(k.size())) return HPComplex(Complex::zero(prec));
  std::vector<SeriesLevel> levels;
  for (std::size_t i = 0; i < k.size(); ++i) {
    levels.push_back(SeriesLevel{x[i], {SeriesTerm{HPComplex(1), k[i], a[i] + HPComplex(1)}}});
  }
  Complex v = detail::prefix_sum(levels, n);
  double mag = abs_d(v);
  return HPComplex(v, (mag + 1.0) * static_cast<double>(n * static_cast<std::int64_t>(k.size()) + 1) *
                          4.0 * unit_roundoff(prec));
}

HPComplex mhs(std::int64_t n, const std::vector<int>& k, const std::vector<RootOfUnity>& x) {
  return mhs_hurwitz(n, k, x, std::vector<HPComplex>(k.size(), HPComplex(0)));
}

CacheStats series_cache_stats() {
  SeriesCache& c = cache();
  std::lock_guard<std::mutex> lock(c.mu);
  return CacheStats{c.map.size(), c.hits.load(), c.misses.load()};
}

void clear_series_cache() {
  SeriesCache& c = cache();
  std::lock_guard<std::mutex> lock(c.mu);
  c.map.clear();
}

}  // namespace czeta
