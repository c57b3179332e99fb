#pragma once

#include <string>

#include "czeta/complex.hpp"

namespace czeta {

// Complex value with a tracked absolute error bound. Arithmetic propagates the
// bound to first order plus the second-order cross term and the rounding of
// the result, so the reported bound never undercuts the propagated one.
class HPComplex {
 public:
  HPComplex() : value_(Complex::zero(working_precision())) {}
  HPComplex(const Complex& v, double err = 0.0) : value_(v), err_(err) {}
  HPComplex(Complex&& v, double err = 0.0) : value_(std::move(v)), err_(err) {}
  HPComplex(const Real& re, const Real& im, double err = 0.0) : value_(re, im), err_(err) {}
  HPComplex(double re, double im = 0.0) : value_(re, im) {}
  HPComplex(int v) : value_(v) {}
  HPComplex(long v) : value_(v) {}

  // p/q rounded to working precision, with its rounding error recorded.
  static HPComplex rational(long long num, long long den);

  const Complex& value() const { return value_; }
  const Real& re() const { return value_.re; }
  const Real& im() const { return value_.im; }
  double err() const { return err_; }
  prec_t prec_bits() const { return value_.prec(); }
  double abs_d() const { return czeta::abs_d(value_); }
  std::string to_string(int digits = 17) const;

  HPComplex with_err(double e) const { return HPComplex(value_, e); }
  void add_err(double e) { err_ += e; }

  HPComplex operator-() const { return HPComplex(-value_, err_); }
  HPComplex& operator+=(const HPComplex& o);
  HPComplex& operator-=(const HPComplex& o);
  HPComplex& operator*=(const HPComplex& o);
  HPComplex& operator/=(const HPComplex& o);

 private:
  Complex value_;
  double err_ = 0.0;
};

HPComplex operator+(const HPComplex& a, const HPComplex& b);
HPComplex operator-(const HPComplex& a, const HPComplex& b);
HPComplex operator*(const HPComplex& a, const HPComplex& b);
HPComplex operator/(const HPComplex& a, const HPComplex& b);
// Exact integer scaling.
HPComplex operator*(const HPComplex& a, long b);
HPComplex operator*(long a, const HPComplex& b);

HPComplex conj(const HPComplex& z);
HPComplex inv(const HPComplex& z);

// |a - b| <= tol + a.err + b.err, the "agree within combined error" test.
bool agrees(const HPComplex& a, const HPComplex& b, double tol = 0.0);

}  // namespace czeta
