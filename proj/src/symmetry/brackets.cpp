#include <cmath>

#include "czeta/errors.hpp"
#include "czeta/jet.hpp"
#include "czeta/symmetry.hpp"

namespace czeta::sym {

namespace {

bool near_integer(const HPComplex& a) {
  double tiny = std::ldexp(1.0, -40);
  if (std::fabs(a.im().to_double()) > tiny) return false;
  Real n = round_nearest(a.re());
  return std::fabs((a.re() - n).to_double()) <= tiny;
}

HPComplex unit() { return HPComplex(Complex(Real::with_prec(1.0, working_precision()))); }

// (-1)^j pi [t^j] (-cot(pi (a + t))): the x = 1 value from the cotangent jet.
HPComplex cot_closed_form(int j, const HPComplex& a) {
  Jet cot = Jet::cot_pi(a, j);
  prec_t p = working_precision();
  HPComplex pi(Complex(Real::pi(p)), 2.0 * 3.2 * unit_roundoff(p));
  HPComplex v = cot[j] * pi;
  return (j % 2 == 0) ? -v : v;
}

void cross_check(const HPComplex& series, const HPComplex& closed, const char* what) {
  double diff = abs_d(series.value() - closed.value());
  double scale = std::max(series.abs_d(), 1.0);
  double allowed = 1000.0 * (series.err() + closed.err()) + scale * std::ldexp(1.0, -100);
  if (diff > allowed) {
    throw ConsistencyError(std::string(what) + ": paired series and closed form differ by " +
                           std::to_string(diff));
  }
}

}  // namespace

HPComplex sym_li_bracket(int j, const RootOfUnity& x, const EvalConfig& cfg) {
  if (j < 0) throw DomainError("sym_li_bracket needs j >= 0");
  if (j == 0) return -unit();
  if (j == 1 && x.is_one()) return HPComplex(Complex::zero(working_precision()));
  HPComplex a = li_single(j, x.inverse(), HPComplex(1), cfg);
  HPComplex b = li_single(j, x, HPComplex(1), cfg);
  return (j % 2 == 0) ? a + b : b - a;
}

HPComplex hat_li(int jp1, const RootOfUnity& x, const HPComplex& a, const EvalConfig& cfg) {
  if (jp1 < 1) throw DomainError("hat_li needs jp1 >= 1");
  if (near_integer(a)) throw PoleError("hat_li: a is an integer");
  int j = jp1 - 1;
  HPComplex one = unit();
  HPComplex series;
  if (x.is_one() && jp1 == 1) {
    // sum_{n>=1} [1/(n - a) - 1/(n + a - 1)]
    series = nested_sum({SeriesLevel{x, {SeriesTerm{HPComplex(1), 1, one - a}, SeriesTerm{HPComplex(-1), 1, a}}}},
                        cfg);
  } else {
    HPComplex first = li_single(jp1, x.inverse(), one - a, cfg);
    HPComplex second = li_single(jp1, x, a, cfg) * HPComplex(x.inverse().value());
    series = (j % 2 == 0) ? first - second : -first - second;
  }
  HPComplex closed;
  if (x.is_one()) {
    closed = cot_closed_form(j, a);
  } else {
    HPComplex f = jet_rhs_closed_form(j, x.inverse(), a);
    closed = (j % 2 == 0) ? f : -f;
  }
  cross_check(series, closed, "hat_li");
  return series;
}

HPComplex hat_ti(int jp1, const RootOfUnity& x, const EvalConfig& cfg) {
  return hat_li(jp1, x, HPComplex::rational(1, 2), cfg);
}

}  // namespace czeta::sym
