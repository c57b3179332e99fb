#pragma once

#include <mpfr.h>

#include <climits>
#include <string>
#include <string_view>
#include <utility>

namespace czeta {

using prec_t = mpfr_prec_t;

// Precision used when no explicit precision is given: 192 bits unless the
// CZETA_PREC_BITS environment variable says otherwise.
prec_t default_precision();

// Thread-local working precision; starts at default_precision().
prec_t working_precision();
void set_working_precision(prec_t bits);

class PrecisionScope {
 public:
  explicit PrecisionScope(prec_t bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  prec_t saved_;
};

// Arbitrary-precision real backed by an mpfr_t. A binary operation yields a
// result at the smaller of the two operand precisions.
class Real {
 public:
  Real();
  Real(int v);
  Real(long v);
  Real(long long v);
  Real(double v);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  ~Real();

  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  Real& operator=(double v);
  Real& operator=(long v);

  static Real zero(prec_t prec);
  static Real with_prec(double v, prec_t prec);
  static Real from_string(std::string_view text, prec_t prec = 0);
  static Real rational(long long num, long long den, prec_t prec = 0);
  static Real pi(prec_t prec = 0);
  static Real ln2(prec_t prec = 0);

  prec_t prec() const { return mpfr_get_prec(v_); }
  void set_prec(prec_t prec);  // rounds the value to the new precision

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  std::string to_string(int digits = 0) const;

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_integer() const { return mpfr_integer_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  long exponent() const { return is_zero() ? LONG_MIN / 2 : mpfr_get_exp(v_); }

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real& operator*=(long o);
  Real& operator/=(long o);
  Real operator-() const;

  void swap(Real& other) noexcept { mpfr_swap(v_, other.v_); }

 private:
  explicit Real(prec_t prec, bool);
  void adopt_min_prec(const Real& o);
  mpfr_t v_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator*(const Real& a, long b);
Real operator*(long a, const Real& b);
Real operator/(const Real& a, long b);
Real operator+(const Real& a, long b);
Real operator-(const Real& a, long b);
Real operator-(long a, const Real& b);

bool operator==(const Real& a, const Real& b);
bool operator<(const Real& a, const Real& b);
bool operator<=(const Real& a, const Real& b);
bool operator>(const Real& a, const Real& b);
bool operator>=(const Real& a, const Real& b);
bool operator==(const Real& a, double b);
bool operator<(const Real& a, double b);
bool operator>(const Real& a, double b);

Real abs(const Real& a);
Real sqrt(const Real& a);
Real exp(const Real& a);
Real log(const Real& a);
Real sin(const Real& a);
Real cos(const Real& a);
void sin_cos(Real& s, Real& c, const Real& a);
void sinh_cosh(Real& s, Real& c, const Real& a);
Real atan2(const Real& y, const Real& x);
Real pow(const Real& a, long n);
Real ldexp(const Real& a, long e);
Real floor(const Real& a);
Real round_nearest(const Real& a);
Real hypot(const Real& a, const Real& b);

// Relative unit roundoff 2^(1 - prec) as a double.
double unit_roundoff(prec_t prec);

}  // namespace czeta
