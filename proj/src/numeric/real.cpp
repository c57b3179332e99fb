#include "czeta/real.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "czeta/errors.hpp"

namespace czeta {

namespace {

prec_t read_env_precision() {
  const char* env = std::getenv("CZETA_PREC_BITS");
  if (env == nullptr || *env == '\0') return 192;
  char* end = nullptr;
  long bits = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || bits < 64 || bits > 100000) {
    throw ConfigError("CZETA_PREC_BITS must be an integer in [64, 100000], got '" +
                      std::string(env) + "'");
  }
  return static_cast<prec_t>(bits);
}

prec_t& thread_precision() {
  thread_local prec_t bits = default_precision();
  return bits;
}

prec_t resolve(prec_t prec) { return prec > 0 ? prec : working_precision(); }

}  // namespace

prec_t default_precision() {
  static const prec_t bits = read_env_precision();
  return bits;
}

prec_t working_precision() { return thread_precision(); }

void set_working_precision(prec_t bits) {
  if (bits < 16 || bits > 100000) {
    throw ConfigError("working precision out of range: " + std::to_string(bits));
  }
  thread_precision() = bits;
}

PrecisionScope::PrecisionScope(prec_t bits) : saved_(working_precision()) {
  set_working_precision(bits);
}

PrecisionScope::~PrecisionScope() { thread_precision() = saved_; }

Real::Real(prec_t prec, bool) { mpfr_init2(v_, prec); }

Real::Real() : Real(working_precision(), true) { mpfr_set_zero(v_, 1); }
Real::Real(int v) : Real(working_precision(), true) { mpfr_set_si(v_, v, MPFR_RNDN); }
Real::Real(long v) : Real(working_precision(), true) { mpfr_set_si(v_, v, MPFR_RNDN); }
Real::Real(long long v) : Real(working_precision(), true) {
  mpfr_set_si(v_, static_cast<long>(v), MPFR_RNDN);
}
Real::Real(double v) : Real(working_precision(), true) { mpfr_set_d(v_, v, MPFR_RNDN); }

Real::Real(const Real& other) : Real(other.prec(), true) { mpfr_set(v_, other.v_, MPFR_RNDN); }

Real::Real(Real&& other) noexcept {
  // Steal the limbs; leave the source as an empty shell the destructor skips.
  v_[0] = other.v_[0];
  other.v_[0]._mpfr_d = nullptr;
}

Real::~Real() {
  if (v_[0]._mpfr_d != nullptr) mpfr_clear(v_);
}

Real& Real::operator=(const Real& other) {
  if (this == &other) return *this;
  if (v_[0]._mpfr_d == nullptr) {
    mpfr_init2(v_, other.prec());
  } else if (prec() != other.prec()) {
    mpfr_set_prec(v_, other.prec());
  }
  mpfr_set(v_, other.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this == &other) return *this;
  if (v_[0]._mpfr_d != nullptr) mpfr_clear(v_);
  v_[0] = other.v_[0];
  other.v_[0]._mpfr_d = nullptr;
  return *this;
}

Real& Real::operator=(double v) {
  if (v_[0]._mpfr_d == nullptr) mpfr_init2(v_, working_precision());
  mpfr_set_d(v_, v, MPFR_RNDN);
  return *this;
}

Real& Real::operator=(long v) {
  if (v_[0]._mpfr_d == nullptr) mpfr_init2(v_, working_precision());
  mpfr_set_si(v_, v, MPFR_RNDN);
  return *this;
}

Real Real::zero(prec_t prec) {
  Real r(resolve(prec), true);
  mpfr_set_zero(r.v_, 1);
  return r;
}

Real Real::with_prec(double v, prec_t prec) {
  Real r(resolve(prec), true);
  mpfr_set_d(r.v_, v, MPFR_RNDN);
  return r;
}

Real Real::from_string(std::string_view text, prec_t prec) {
  std::string s(text);
  Real r(resolve(prec), true);
  char* end = nullptr;
  if (!s.empty()) mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
  if (s.empty() || end == s.c_str() || *end != '\0') {
    throw ParseError("not a real number: '" + s + "'");
  }
  return r;
}

Real Real::rational(long long num, long long den, prec_t prec) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Real r(resolve(prec), true);
  mpfr_set_si(r.v_, static_cast<long>(num), MPFR_RNDN);
  mpfr_div_si(r.v_, r.v_, static_cast<long>(den), MPFR_RNDN);
  return r;
}

Real Real::pi(prec_t prec) {
  Real r(resolve(prec), true);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

Real Real::ln2(prec_t prec) {
  Real r(resolve(prec), true);
  mpfr_const_log2(r.v_, MPFR_RNDN);
  return r;
}

void Real::set_prec(prec_t prec) {
  if (prec != this->prec()) mpfr_prec_round(v_, prec, MPFR_RNDN);
}

std::string Real::to_string(int digits) const {
  if (digits <= 0) digits = static_cast<int>(std::ceil(static_cast<double>(prec()) * 0.30102999566398120)) + 1;
  if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, v_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

void Real::adopt_min_prec(const Real& o) {
  if (o.prec() < prec()) mpfr_prec_round(v_, o.prec(), MPFR_RNDN);
}

Real& Real::operator+=(const Real& o) {
  adopt_min_prec(o);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  adopt_min_prec(o);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  adopt_min_prec(o);
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  adopt_min_prec(o);
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(long o) {
  mpfr_mul_si(v_, v_, o, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(long o) {
  mpfr_div_si(v_, v_, o, MPFR_RNDN);
  return *this;
}

Real Real::operator-() const {
  Real r(prec(), true);
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

namespace {
inline prec_t pmin(const Real& a, const Real& b) { return a.prec() < b.prec() ? a.prec() : b.prec(); }
}  // namespace

Real operator+(const Real& a, const Real& b) {
  Real r = Real::zero(pmin(a, b));
  mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
Real operator-(const Real& a, const Real& b) {
  Real r = Real::zero(pmin(a, b));
  mpfr_sub(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, const Real& b) {
  Real r = Real::zero(pmin(a, b));
  mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
Real operator/(const Real& a, const Real& b) {
  Real r = Real::zero(pmin(a, b));
  mpfr_div(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, long b) {
  Real r = Real::zero(a.prec());
  mpfr_mul_si(r.raw(), a.raw(), b, MPFR_RNDN);
  return r;
}
Real operator*(long a, const Real& b) { return b * a; }
Real operator/(const Real& a, long b) {
  Real r = Real::zero(a.prec());
  mpfr_div_si(r.raw(), a.raw(), b, MPFR_RNDN);
  return r;
}
Real operator+(const Real& a, long b) {
  Real r = Real::zero(a.prec());
  mpfr_add_si(r.raw(), a.raw(), b, MPFR_RNDN);
  return r;
}
Real operator-(const Real& a, long b) {
  Real r = Real::zero(a.prec());
  mpfr_sub_si(r.raw(), a.raw(), b, MPFR_RNDN);
  return r;
}
Real operator-(long a, const Real& b) {
  Real r = Real::zero(b.prec());
  mpfr_si_sub(r.raw(), a, b.raw(), MPFR_RNDN);
  return r;
}

bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }
bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.raw(), b.raw()) != 0; }
bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.raw(), b.raw()) != 0; }
bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.raw(), b.raw()) != 0; }
bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.raw(), b.raw()) != 0; }
bool operator==(const Real& a, double b) { return mpfr_cmp_d(a.raw(), b) == 0; }
bool operator<(const Real& a, double b) { return mpfr_cmp_d(a.raw(), b) < 0; }
bool operator>(const Real& a, double b) { return mpfr_cmp_d(a.raw(), b) > 0; }

#define CZETA_UNARY(name, fn)                  \
  Real name(const Real& a) {                   \
    Real r = Real::zero(a.prec());             \
    fn(r.raw(), a.raw(), MPFR_RNDN);           \
    return r;                                  \
  }
CZETA_UNARY(abs, mpfr_abs)
CZETA_UNARY(sqrt, mpfr_sqrt)
CZETA_UNARY(exp, mpfr_exp)
CZETA_UNARY(log, mpfr_log)
CZETA_UNARY(sin, mpfr_sin)
CZETA_UNARY(cos, mpfr_cos)
#undef CZETA_UNARY

void sin_cos(Real& s, Real& c, const Real& a) {
  s.set_prec(a.prec());
  c.set_prec(a.prec());
  mpfr_sin_cos(s.raw(), c.raw(), a.raw(), MPFR_RNDN);
}

void sinh_cosh(Real& s, Real& c, const Real& a) {
  s.set_prec(a.prec());
  c.set_prec(a.prec());
  mpfr_sinh_cosh(s.raw(), c.raw(), a.raw(), MPFR_RNDN);
}

Real atan2(const Real& y, const Real& x) {
  Real r = Real::zero(pmin(y, x));
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real pow(const Real& a, long n) {
  Real r = Real::zero(a.prec());
  mpfr_pow_si(r.raw(), a.raw(), n, MPFR_RNDN);
  return r;
}

Real ldexp(const Real& a, long e) {
  Real r = Real::zero(a.prec());
  mpfr_mul_2si(r.raw(), a.raw(), e, MPFR_RNDN);
  return r;
}

Real floor(const Real& a) {
  Real r = Real::zero(a.prec());
  mpfr_floor(r.raw(), a.raw());
  return r;
}

Real round_nearest(const Real& a) {
  Real r = Real::zero(a.prec());
  mpfr_round(r.raw(), a.raw());
  return r;
}

Real hypot(const Real& a, const Real& b) {
  Real r = Real::zero(pmin(a, b));
  mpfr_hypot(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

double unit_roundoff(prec_t prec) { return std::ldexp(1.0, static_cast<int>(1 - prec)); }

}  // namespace czeta
