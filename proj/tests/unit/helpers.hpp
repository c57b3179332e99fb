#pragma once

#include "czeta/hp_complex.hpp"

namespace testing {

using czeta::Complex;
using czeta::HPComplex;
using czeta::Real;

inline Real pi() { return Real::pi(czeta::working_precision()); }

inline double dist(const HPComplex& a, const Complex& b) { return czeta::abs_d(a.value() - b); }
inline double dist(const HPComplex& a, const HPComplex& b) { return czeta::abs_d(a.value() - b.value()); }

inline Complex from_strings(const char* re, const char* im = "0") {
  return Complex(Real::from_string(re), Real::from_string(im));
}

}  // namespace testing
