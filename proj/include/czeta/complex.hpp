#pragma once

#include <string>

#include "czeta/real.hpp"

namespace czeta {

// Complex number over Real with no error tracking; the fast internal carrier.
struct Complex {
  Real re;
  Real im;

  Complex() = default;
  Complex(const Real& r) : re(r), im(Real::zero(r.prec())) {}
  Complex(const Real& r, const Real& i) : re(r), im(i) {}
  Complex(double r, double i = 0.0) : re(r), im(i) {}
  Complex(int r) : re(r), im(0) {}
  Complex(long r) : re(r), im(0L) {}

  static Complex zero(prec_t prec);
  static Complex with_prec(double r, double i, prec_t prec);

  prec_t prec() const { return re.prec() < im.prec() ? re.prec() : im.prec(); }
  void set_prec(prec_t p) {
    re.set_prec(p);
    im.set_prec(p);
  }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_finite() const { return re.is_finite() && im.is_finite(); }

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
  Complex& operator*=(const Real& o);
  Complex& operator/=(const Real& o);
  Complex& operator*=(long o);
  Complex& operator/=(long o);
  Complex operator-() const { return Complex(-re, -im); }

  std::string to_string(int digits = 0) const;
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Real& b);
Complex operator*(const Real& a, const Complex& b);
Complex operator/(const Complex& a, const Real& b);
Complex operator*(const Complex& a, long b);
Complex operator*(long a, const Complex& b);
Complex operator/(const Complex& a, long b);
Complex operator+(const Complex& a, long b);
Complex operator-(long a, const Complex& b);

Complex conj(const Complex& z);
Real norm(const Complex& z);  // |z|^2
Real abs(const Complex& z);
double abs_d(const Complex& z);
Complex mul_i(const Complex& z);
Complex inv(const Complex& z);
Complex pow(const Complex& z, long n);
Complex exp(const Complex& z);
Complex log(const Complex& z);  // principal branch
Complex sin(const Complex& z);
Complex cos(const Complex& z);
Complex expi(const Real& theta);  // e^{i theta}

// acc += a * b, without allocating.
void fma_into(Complex& acc, const Complex& a, const Complex& b);
// out = a * b; out may alias a or b.
void mul_into(Complex& out, const Complex& a, const Complex& b);

}  // namespace czeta
