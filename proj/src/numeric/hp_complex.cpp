#include "czeta/hp_complex.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace czeta {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Rounding contribution of one operation on a result of magnitude `mag`.
inline double rounding(double mag, prec_t p) { return 2.0 * mag * unit_roundoff(p); }

// Slight upward bias on double-precision error arithmetic.
inline double up(double e) { return e * (1.0 + 1e-14); }

}  // namespace

HPComplex HPComplex::rational(long long num, long long den) {
  Real re = Real::rational(num, den);
  double mag = std::fabs(re.to_double());
  return HPComplex(Complex(re), rounding(mag, re.prec()));
}

std::string HPComplex::to_string(int digits) const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", err_);
  return value_.to_string(digits) + " +- " + buf;
}

HPComplex& HPComplex::operator+=(const HPComplex& o) {
  value_ += o.value_;
  err_ = up(err_ + o.err_ + rounding(abs_d(), prec_bits()));
  return *this;
}

HPComplex& HPComplex::operator-=(const HPComplex& o) {
  value_ -= o.value_;
  err_ = up(err_ + o.err_ + rounding(abs_d(), prec_bits()));
  return *this;
}

HPComplex& HPComplex::operator*=(const HPComplex& o) {
  double ma = abs_d(), mb = o.abs_d();
  double e = ma * o.err_ + mb * err_ + err_ * o.err_;
  value_ *= o.value_;
  err_ = up(e + rounding(abs_d(), prec_bits()));
  return *this;
}

HPComplex& HPComplex::operator/=(const HPComplex& o) {
  double mb = o.abs_d();
  double ea = err_;
  value_ /= o.value_;
  double q = abs_d();
  if (o.err_ >= mb) {
    err_ = kInf;
  } else {
    err_ = up((ea + q * o.err_) / (mb - o.err_) + rounding(q, prec_bits()));
  }
  return *this;
}

HPComplex operator+(const HPComplex& a, const HPComplex& b) {
  HPComplex r = a;
  r += b;
  return r;
}
HPComplex operator-(const HPComplex& a, const HPComplex& b) {
  HPComplex r = a;
  r -= b;
  return r;
}
HPComplex operator*(const HPComplex& a, const HPComplex& b) {
  HPComplex r = a;
  r *= b;
  return r;
}
HPComplex operator/(const HPComplex& a, const HPComplex& b) {
  HPComplex r = a;
  r /= b;
  return r;
}

HPComplex operator*(const HPComplex& a, long b) {
  Complex v = a.value() * b;
  double mag = abs_d(v);
  return HPComplex(std::move(v), up(a.err() * std::fabs(static_cast<double>(b)) +
                                    rounding(mag, a.prec_bits())));
}
HPComplex operator*(long a, const HPComplex& b) { return b * a; }

HPComplex conj(const HPComplex& z) { return HPComplex(conj(z.value()), z.err()); }

HPComplex inv(const HPComplex& z) {
  HPComplex one(Complex(Real::with_prec(1.0, z.prec_bits()), Real::zero(z.prec_bits())));
  return one / z;
}

bool agrees(const HPComplex& a, const HPComplex& b, double tol) {
  return abs_d(a.value() - b.value()) <= tol + a.err() + b.err();
}

}  // namespace czeta
