#pragma once

#include <vector>

#include "czeta/hp_complex.hpp"
#include "czeta/root_of_unity.hpp"

namespace czeta {

// Truncated Taylor expansion c_0 + c_1 t + ... + c_M t^M around a point a.
class Jet {
 public:
  explicit Jet(int order);

  static Jet constant(const HPComplex& c, int order);
  static Jet variable(const HPComplex& a, int order);  // a + t
  // exp(i theta (a + t)).
  static Jet exp_i_theta(const Real& theta, const HPComplex& a, int order);
  // cot(pi (a + t)); PoleError when |sin(pi a)| < 2^-40.
  static Jet cot_pi(const HPComplex& a, int order);

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const HPComplex& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  HPComplex& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  const std::vector<HPComplex>& coeffs() const { return c_; }

  // d/dt, order drops by one.
  Jet derivative() const;
  Jet truncated(int order) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const HPComplex& s);

 private:
  std::vector<HPComplex> c_;
};

Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
// Cauchy product truncated at min(order(a), order(b)).
Jet operator*(const Jet& a, const Jet& b);
Jet operator*(const Jet& a, const HPComplex& s);

// pi * [t^m] (i - cot(pi (a + t))) exp(i theta (a + t)), x = exp(i theta), theta in (0, 2 pi):
// the m-th Taylor coefficient (times pi) of i x^a - cot(pi a) x^a.
HPComplex jet_rhs_closed_form(int m, const RootOfUnity& x, const HPComplex& a);

}  // namespace czeta
