#include "czeta/complex.hpp"

namespace czeta {

namespace {

struct Scratch {
  Real a, b, c;
  void fit(prec_t p) {
    a.set_prec(p);
    b.set_prec(p);
    c.set_prec(p);
  }
};

Scratch& scratch(prec_t p) {
  thread_local Scratch s;
  if (s.a.prec() != p) s.fit(p);
  return s;
}

}  // namespace

Complex Complex::zero(prec_t prec) { return Complex(Real::zero(prec), Real::zero(prec)); }

Complex Complex::with_prec(double r, double i, prec_t prec) {
  return Complex(Real::with_prec(r, prec), Real::with_prec(i, prec));
}

std::string Complex::to_string(int digits) const {
  return "(" + re.to_string(digits) + ", " + im.to_string(digits) + ")";
}

Complex& Complex::operator+=(const Complex& o) {
  re += o.re;
  im += o.im;
  return *this;
}
Complex& Complex::operator-=(const Complex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}
Complex& Complex::operator*=(const Complex& o) {
  mul_into(*this, *this, o);
  return *this;
}
Complex& Complex::operator/=(const Complex& o) {
  *this = *this / o;
  return *this;
}
Complex& Complex::operator*=(const Real& o) {
  re *= o;
  im *= o;
  return *this;
}
Complex& Complex::operator/=(const Real& o) {
  re /= o;
  im /= o;
  return *this;
}
Complex& Complex::operator*=(long o) {
  re *= o;
  im *= o;
  return *this;
}
Complex& Complex::operator/=(long o) {
  re /= o;
  im /= o;
  return *this;
}

void mul_into(Complex& out, const Complex& x, const Complex& y) {
  prec_t p = x.prec() < y.prec() ? x.prec() : y.prec();
  Scratch& s = scratch(p);
  mpfr_mul(s.a.raw(), x.re.raw(), y.re.raw(), MPFR_RNDN);
  mpfr_mul(s.b.raw(), x.im.raw(), y.im.raw(), MPFR_RNDN);
  mpfr_mul(s.c.raw(), x.re.raw(), y.im.raw(), MPFR_RNDN);
  mpfr_sub(s.a.raw(), s.a.raw(), s.b.raw(), MPFR_RNDN);
  mpfr_mul(s.b.raw(), x.im.raw(), y.re.raw(), MPFR_RNDN);
  mpfr_add(s.c.raw(), s.c.raw(), s.b.raw(), MPFR_RNDN);
  out.set_prec(p);
  mpfr_set(out.re.raw(), s.a.raw(), MPFR_RNDN);
  mpfr_set(out.im.raw(), s.c.raw(), MPFR_RNDN);
}

void fma_into(Complex& acc, const Complex& x, const Complex& y) {
  prec_t p = acc.prec();
  Scratch& s = scratch(p);
  mpfr_mul(s.a.raw(), x.re.raw(), y.re.raw(), MPFR_RNDN);
  mpfr_mul(s.b.raw(), x.im.raw(), y.im.raw(), MPFR_RNDN);
  mpfr_sub(s.a.raw(), s.a.raw(), s.b.raw(), MPFR_RNDN);
  mpfr_add(acc.re.raw(), acc.re.raw(), s.a.raw(), MPFR_RNDN);
  mpfr_mul(s.a.raw(), x.re.raw(), y.im.raw(), MPFR_RNDN);
  mpfr_mul(s.b.raw(), x.im.raw(), y.re.raw(), MPFR_RNDN);
  mpfr_add(s.a.raw(), s.a.raw(), s.b.raw(), MPFR_RNDN);
  mpfr_add(acc.im.raw(), acc.im.raw(), s.a.raw(), MPFR_RNDN);
}

Complex operator+(const Complex& a, const Complex& b) { return Complex(a.re + b.re, a.im + b.im); }
Complex operator-(const Complex& a, const Complex& b) { return Complex(a.re - b.re, a.im - b.im); }
Complex operator*(const Complex& a, const Complex& b) {
  Complex out = Complex::zero(a.prec() < b.prec() ? a.prec() : b.prec());
  mul_into(out, a, b);
  return out;
}
Complex operator/(const Complex& a, const Complex& b) {
  Real d = norm(b);
  Complex num = a * conj(b);
  return Complex(num.re / d, num.im / d);
}
Complex operator*(const Complex& a, const Real& b) { return Complex(a.re * b, a.im * b); }
Complex operator*(const Real& a, const Complex& b) { return b * a; }
Complex operator/(const Complex& a, const Real& b) { return Complex(a.re / b, a.im / b); }
Complex operator*(const Complex& a, long b) { return Complex(a.re * b, a.im * b); }
Complex operator*(long a, const Complex& b) { return b * a; }
Complex operator/(const Complex& a, long b) { return Complex(a.re / b, a.im / b); }
Complex operator+(const Complex& a, long b) { return Complex(a.re + b, a.im); }
Complex operator-(long a, const Complex& b) { return Complex(a - b.re, -b.im); }

Complex conj(const Complex& z) { return Complex(z.re, -z.im); }
Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
Real abs(const Complex& z) { return hypot(z.re, z.im); }
double abs_d(const Complex& z) {
  Scratch& s = scratch(z.prec());
  mpfr_hypot(s.a.raw(), z.re.raw(), z.im.raw(), MPFR_RNDU);
  return mpfr_get_d(s.a.raw(), MPFR_RNDU);
}
Complex mul_i(const Complex& z) { return Complex(-z.im, z.re); }

Complex inv(const Complex& z) {
  Real d = norm(z);
  return Complex(z.re / d, -z.im / d);
}

Complex pow(const Complex& z, long n) {
  if (n < 0) return inv(pow(z, -n));
  Complex result(Real::with_prec(1.0, z.prec()), Real::zero(z.prec()));
  Complex base = z;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

Complex exp(const Complex& z) {
  Real m = exp(z.re);
  return expi(z.im) * m;
}

Complex log(const Complex& z) {
  if (z.is_zero()) return Complex(-Real::with_prec(1.0 / 0.0, z.prec()), Real::zero(z.prec()));
  return Complex(log(abs(z)), atan2(z.im, z.re));
}

Complex sin(const Complex& z) {
  Real s = Real::zero(z.prec()), c = Real::zero(z.prec());
  Real sh = Real::zero(z.prec()), ch = Real::zero(z.prec());
  sin_cos(s, c, z.re);
  sinh_cosh(sh, ch, z.im);
  return Complex(s * ch, c * sh);
}

Complex cos(const Complex& z) {
  Real s = Real::zero(z.prec()), c = Real::zero(z.prec());
  Real sh = Real::zero(z.prec()), ch = Real::zero(z.prec());
  sin_cos(s, c, z.re);
  sinh_cosh(sh, ch, z.im);
  return Complex(c * ch, -(s * sh));
}

Complex expi(const Real& theta) {
  Real s = Real::zero(theta.prec()), c = Real::zero(theta.prec());
  sin_cos(s, c, theta);
  return Complex(c, s);
}

}  // namespace czeta
