#include "czeta/jet.hpp"

#include <algorithm>
#include <cmath>

#include "czeta/errors.hpp"

namespace czeta {

Jet::Jet(int order) {
  if (order < 0) throw DomainError("jet order must be nonnegative");
  c_.assign(static_cast<std::size_t>(order) + 1, HPComplex(Complex::zero(working_precision())));
}

Jet Jet::constant(const HPComplex& c, int order) {
  Jet j(order);
  j[0] = c;
  return j;
}

Jet Jet::variable(const HPComplex& a, int order) {
  Jet j(order);
  j[0] = a;
  if (order >= 1) j[1] = HPComplex(1);
  return j;
}

Jet Jet::exp_i_theta(const Real& theta, const HPComplex& a, int order) {
  Jet j(order);
  Complex i_theta(Real::zero(theta.prec()), theta);
  Complex base = exp(i_theta * a.value());
  // |d/da exp(i theta a)| = theta |exp(i theta a)|
  double base_err = std::fabs(theta.to_double()) * abs_d(base) * a.err();
  HPComplex term(base, base_err + 4.0 * abs_d(base) * unit_roundoff(base.prec()));
  HPComplex step(i_theta);
  j[0] = term;
  for (int n = 1; n <= order; ++n) {
    term = term * step;
    Complex v = term.value() / static_cast<long>(n);
    term = HPComplex(v, term.err() / n + 2.0 * abs_d(v) * unit_roundoff(v.prec()));
    j[n] = term;
  }
  return j;
}

Jet Jet::cot_pi(const HPComplex& a, int order) {
  prec_t p = a.prec_bits();
  Real pi = Real::pi(p);
  Complex z = a.value() * pi;
  Complex s = sin(z);
  if (abs_d(s) < std::ldexp(1.0, -40)) {
    throw PoleError("cot(pi a) requested too close to an integer a");
  }
  Complex g0 = cos(z) / s;
  // |d/da cot(pi a)| = pi |1 + cot^2|
  double deriv = pi.to_double() * abs_d(Complex(1) + g0 * g0);
  Jet j(order);
  j[0] = HPComplex(g0, deriv * a.err() + 8.0 * abs_d(g0) * unit_roundoff(p));
  HPComplex minus_pi(Complex(-pi));
  for (int n = 0; n < order; ++n) {
    HPComplex acc = (n == 0) ? HPComplex(1) : HPComplex(Complex::zero(p));
    for (int i = 0; i <= n; ++i) acc += j[i] * j[n - i];
    acc = acc * minus_pi;
    Complex v = acc.value() / static_cast<long>(n + 1);
    j[n + 1] = HPComplex(v, acc.err() / (n + 1) + 2.0 * abs_d(v) * unit_roundoff(p));
  }
  return j;
}

Jet Jet::derivative() const {
  int m = order();
  if (m == 0) return Jet(0);
  Jet d(m - 1);
  for (int n = 0; n < m; ++n) d[n] = c_[static_cast<std::size_t>(n) + 1] * static_cast<long>(n + 1);
  return d;
}

Jet Jet::truncated(int order) const {
  Jet t(order);
  for (int n = 0; n <= std::min(order, this->order()); ++n) t[n] = (*this)[n];
  return t;
}

Jet& Jet::operator+=(const Jet& o) {
  int m = std::min(order(), o.order());
  c_.resize(static_cast<std::size_t>(m) + 1);
  for (int n = 0; n <= m; ++n) c_[static_cast<std::size_t>(n)] += o[n];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  int m = std::min(order(), o.order());
  c_.resize(static_cast<std::size_t>(m) + 1);
  for (int n = 0; n <= m; ++n) c_[static_cast<std::size_t>(n)] -= o[n];
  return *this;
}

Jet& Jet::operator*=(const HPComplex& s) {
  for (auto& c : c_) c *= s;
  return *this;
}

Jet operator+(const Jet& a, const Jet& b) {
  Jet r = a;
  r += b;
  return r;
}

Jet operator-(const Jet& a, const Jet& b) {
  Jet r = a;
  r -= b;
  return r;
}

Jet operator*(const Jet& a, const Jet& b) {
  int m = std::min(a.order(), b.order());
  Jet r(m);
  for (int n = 0; n <= m; ++n) {
    HPComplex acc(Complex::zero(a[0].prec_bits()));
    for (int i = 0; i <= n; ++i) acc += a[i] * b[n - i];
    r[n] = acc;
  }
  return r;
}

Jet operator*(const Jet& a, const HPComplex& s) {
  Jet r = a;
  r *= s;
  return r;
}

HPComplex jet_rhs_closed_form(int m, const RootOfUnity& x, const HPComplex& a) {
  if (m < 0) throw DomainError("jet_rhs_closed_form needs m >= 0");
  if (x.is_one()) throw DomainError("jet_rhs_closed_form needs x != 1 (theta in (0, 2 pi))");
  prec_t p = working_precision();
  Real theta = x.angle();
  Jet cot = Jet::cot_pi(a, m);
  Jet e = Jet::exp_i_theta(theta, a, m);
  Jet lead = Jet::constant(HPComplex(Complex(Real::zero(p), Real::with_prec(1.0, p))), m) - cot;
  Jet g = lead * e;
  return g[m] * HPComplex(Complex(Real::pi(p)), 2.0 * Real::pi(p).to_double() * unit_roundoff(p));
}

}  // namespace czeta
