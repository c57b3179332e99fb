#include <chrono>
#include <cmath>
#include <sstream>

#include "czeta/errors.hpp"
#include "czeta/jet.hpp"
#include "czeta/symmetry.hpp"

namespace czeta::sym {

namespace {

using Roots = std::vector<RootOfUnity>;
using Params = std::vector<HPComplex>;
using Ints = std::vector<int>;

struct NameEntry {
  IdentityId id;
  std::string_view name;
};

constexpr NameEntry kNames[] = {
    {IdentityId::kReflection, "thm2_1"},
    {IdentityId::kHurwitzReflection, "thm2_2"},
    {IdentityId::kTValueReflection, "cor2_3"},
    {IdentityId::kDoubleReflection, "cor4_1"},
    {IdentityId::kDoubleParity, "cor4_2"},
    {IdentityId::kDoubleParityAltSign, "cor4_2_alt_sign"},
    {IdentityId::kDoubleHurwitz, "cor5_1"},
    {IdentityId::kCscSquareExample, "ex5_2a"},
    {IdentityId::kCscCotExample, "ex5_2b"},
    {IdentityId::kDerivativeClosedForm, "eq2_11"},
    {IdentityId::kAlternatingFamily, "zhao_family"},
    {IdentityId::kTValueRelation, "T_relation"},
    {IdentityId::kStuffle, "stuffle_2"},
};

HPComplex unit() { return HPComplex(Complex(Real::with_prec(1.0, working_precision()))); }
HPComplex zero() { return HPComplex(Complex::zero(working_precision())); }
HPComplex root_value(const RootOfUnity& x) { return HPComplex(x.value()); }
HPComplex signed_(long sign_exp, const HPComplex& v) { return (sign_exp % 2 == 0) ? v : -v; }

template <class T>
std::vector<T> slice(const std::vector<T>& v, std::size_t from, std::size_t to) {
  if (from >= to) return {};
  return std::vector<T>(v.begin() + static_cast<long>(from), v.begin() + static_cast<long>(to));
}

template <class T>
std::vector<T> reversed(std::vector<T> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

Roots inverted(const Roots& xs) {
  Roots out;
  for (const auto& x : xs) out.push_back(x.inverse());
  return out;
}

long sum_of(const Ints& v) {
  long s = 0;
  for (int t : v) s += t;
  return s;
}

bool near_integer(const HPComplex& a) {
  double tiny = std::ldexp(1.0, -40);
  if (std::fabs(a.im().to_double()) > tiny) return false;
  Real n = round_nearest(a.re());
  return std::fabs((a.re() - n).to_double()) <= tiny;
}

// d in {-1, -2, ...}
bool in_negative_naturals(const HPComplex& d) {
  double tiny = std::ldexp(1.0, -40);
  if (std::fabs(d.im().to_double()) > tiny) return false;
  Real n = round_nearest(d.re());
  return std::fabs((d.re() - n).to_double()) <= tiny && n.sign() < 0;
}

// Nested-sum values with Li of the empty index equal to 1.
class Values {
 public:
  explicit Values(const EvalConfig& cfg) : cfg_(cfg) {}

  HPComplex Li(const Ints& k, const Roots& x) const {
    if (k.empty()) return unit();
    return cmzv(k, x, cfg_);
  }
  HPComplex Li(const Ints& k, const Roots& x, const Params& c) const {
    if (k.empty()) return unit();
    return cmhzv(ZetaIndex(k, x, c), cfg_);
  }
  HPComplex t(const Ints& k, const Roots& x) const {
    if (k.empty()) return unit();
    return mtv(k, x, cfg_);
  }
  HPComplex bracket(int j, const RootOfUnity& x) const { return sym_li_bracket(j, x, cfg_); }
  HPComplex hat(int jp1, const RootOfUnity& x, const HPComplex& a) const { return hat_li(jp1, x, a, cfg_); }
  HPComplex hat_t(int jp1, const RootOfUnity& x) const { return hat_ti(jp1, x, cfg_); }
  const EvalConfig& cfg() const { return cfg_; }

 private:
  const EvalConfig& cfg_;
};

Ints add(const Ints& k, const Composition& m) {
  Ints out(k);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += m.parts[i];
  return out;
}

// Extended arrays with index 0 holding (q, x0, a0).
struct Extended {
  Ints K;
  Roots X;
  Params A;
  RootOfUnity product;
};

Extended extend(const IdentityCase& c) {
  Extended e;
  e.K.push_back(c.q);
  e.K.insert(e.K.end(), c.k.begin(), c.k.end());
  e.X.push_back(c.x0);
  e.X.insert(e.X.end(), c.x.begin(), c.x.end());
  e.A.push_back(c.a0);
  e.A.insert(e.A.end(), c.a.begin(), c.a.end());
  e.product = product(e.X.begin(), e.X.end());
  return e;
}

// sum_{j=0}^{r} (-1)^{|K_{0,j}|} w_j Li(K_{j+1,r}; X_{j+1,r}) Li(rev K_{0,j}; rev X^{-1}_{0,j}),
// the product chain shared by the reflection identities. `outer` and `inner`
// evaluate the two factors for a slice boundary.
template <class Outer, class Inner>
HPComplex chain_sum(const Extended& e, Outer outer, Inner inner) {
  std::size_t r = e.K.size() - 1;
  HPComplex total = zero();
  for (std::size_t j = 0; j <= r; ++j) {
    long sgn = sum_of(slice(e.K, 0, j + 1));
    total += signed_(sgn, outer(j) * inner(j));
  }
  return total;
}

HPComplex reflection(const IdentityCase& c, const Values& V, const DebugHooks& hooks) {
  Extended e = extend(c);
  std::size_t r = c.k.size();
  int qc = c.q + hooks.q_shift_in_coefficient_sums;
  HPComplex total = V.Li(e.K, e.X);
  total += chain_sum(
      e, [&](std::size_t j) { return V.Li(slice(e.K, j + 1, r + 1), slice(e.X, j + 1, r + 1)); },
      [&](std::size_t j) { return V.Li(reversed(slice(e.K, 0, j + 1)), reversed(inverted(slice(e.X, 0, j + 1)))); });
  Roots tail_x = slice(e.X, 1, r + 1);
  for (int jj = 0; jj <= qc; ++jj) {
    HPComplex br = V.bracket(jj, e.product);
    for (const auto& mv : weak_compositions(qc - jj, static_cast<int>(r))) {
      std::int64_t B = coeff_B(c.k, mv);
      if (B == 0) continue;
      total -= br * V.Li(add(c.k, mv), tail_x) * static_cast<long>(B);
    }
  }
  Ints k_ext = c.k;
  k_ext.insert(k_ext.begin(), qc);
  for (std::size_t j = 1; j <= r; ++j) {
    int kj = c.k[j - 1];
    for (int i = 0; i <= kj; ++i) {
      HPComplex br = V.bracket(i, e.product);
      for (int m = 0; i + m <= kj; ++m) {
        for (const auto& mv : weak_compositions_fixed_slot(m, static_cast<int>(r), static_cast<int>(j))) {
          std::int64_t C = coeff_C(qc, m, i, static_cast<int>(j), k_ext, mv);
          if (C == 0) continue;
          Ints km = add(c.k, mv);
          HPComplex up = V.Li(slice(km, j, r), slice(e.X, j + 1, r + 1));
          Ints kb = reversed(slice(km, 0, j - 1));
          kb.push_back(qc + kj - i - m);
          HPComplex down = V.Li(kb, reversed(inverted(slice(e.X, 0, j))));
          total -= br * up * down * static_cast<long>(C);
        }
      }
    }
  }
  return total;
}

HPComplex hurwitz_reflection(const IdentityCase& c, const Values& V, const DebugHooks& hooks) {
  Extended e = extend(c);
  std::size_t r = c.k.size();
  int qc = c.q + hooks.q_shift_in_coefficient_sums;
  HPComplex one = unit();
  auto one_minus = [&](const Params& ps) {
    Params out;
    for (const auto& p : ps) out.push_back(one - p);
    return out;
  };
  HPComplex total = root_value(e.product.inverse()) * V.Li(e.K, e.X, e.A);
  total += chain_sum(
      e,
      [&](std::size_t j) {
        Roots xs = slice(e.X, j + 1, r + 1);
        RootOfUnity pr = product(xs.begin(), xs.end());
        return root_value(pr.inverse()) * V.Li(slice(e.K, j + 1, r + 1), xs, slice(e.A, j + 1, r + 1));
      },
      [&](std::size_t j) {
        return V.Li(reversed(slice(e.K, 0, j + 1)), reversed(inverted(slice(e.X, 0, j + 1))),
                    reversed(one_minus(slice(e.A, 0, j + 1))));
      });
  Roots tail_x = slice(e.X, 1, r + 1);
  const HPComplex& a = e.A[0];
  Params shifted;
  for (std::size_t l = 1; l <= r; ++l) shifted.push_back(one - a + e.A[l]);
  for (int jj = 0; jj <= qc - 1; ++jj) {
    HPComplex h = V.hat(jj + 1, e.product, a);
    for (const auto& mv : weak_compositions(qc - 1 - jj, static_cast<int>(r))) {
      std::int64_t B = coeff_B(c.k, mv);
      if (B == 0) continue;
      total += h * V.Li(add(c.k, mv), tail_x, shifted) * static_cast<long>(B);
    }
  }
  Ints k_ext = c.k;
  k_ext.insert(k_ext.begin(), qc);
  for (std::size_t j = 1; j <= r; ++j) {
    int kj = c.k[j - 1];
    const HPComplex& aj = e.A[j];
    Params up_c, down_c;
    for (std::size_t l = j + 1; l <= r; ++l) up_c.push_back(one - aj + e.A[l]);
    for (std::size_t l = 0; l < j; ++l) down_c.push_back(one + aj - e.A[l]);
    down_c = reversed(down_c);
    for (int i = 0; i <= kj - 1; ++i) {
      HPComplex h = V.hat(i + 1, e.product, aj);
      for (int m = 0; i + m <= kj - 1; ++m) {
        for (const auto& mv : weak_compositions_fixed_slot(m, static_cast<int>(r), static_cast<int>(j))) {
          std::int64_t D = coeff_D(qc, m, i, static_cast<int>(j), k_ext, mv);
          if (D == 0) continue;
          Ints km = add(c.k, mv);
          HPComplex up = V.Li(slice(km, j, r), slice(e.X, j + 1, r + 1), up_c);
          Ints kb = reversed(slice(km, 0, j - 1));
          kb.push_back(qc + kj - i - m - 1);
          HPComplex down = V.Li(kb, reversed(inverted(slice(e.X, 0, j))), down_c);
          total += h * up * down * static_cast<long>(D);
        }
      }
    }
  }
  return total;
}

// Written out directly from the t-value statement, not via hurwitz_reflection.
HPComplex tvalue_reflection(const IdentityCase& c, const Values& V, const DebugHooks& hooks) {
  Extended e = extend(c);
  std::size_t r = c.k.size();
  int qc = c.q + hooks.q_shift_in_coefficient_sums;
  HPComplex total = root_value(e.product.inverse()) * V.t(e.K, e.X);
  for (std::size_t j = 0; j <= r; ++j) {
    Roots xs = slice(e.X, j + 1, r + 1);
    RootOfUnity pr = product(xs.begin(), xs.end());
    HPComplex term = root_value(pr.inverse()) * V.t(slice(e.K, j + 1, r + 1), xs) *
                     V.t(reversed(slice(e.K, 0, j + 1)), reversed(inverted(slice(e.X, 0, j + 1))));
    total += signed_(sum_of(slice(e.K, 0, j + 1)), term);
  }
  Roots tail_x = slice(e.X, 1, r + 1);
  for (int jj = 0, m = qc - 1; m >= 0; ++jj, --m) {
    HPComplex h = V.hat_t(jj + 1, e.product);
    for (const auto& mv : weak_compositions(m, static_cast<int>(r))) {
      std::int64_t B = coeff_B(c.k, mv);
      if (B != 0) total += h * V.Li(add(c.k, mv), tail_x) * static_cast<long>(B);
    }
  }
  Ints k_ext = c.k;
  k_ext.insert(k_ext.begin(), qc);
  for (std::size_t j = 1; j <= r; ++j) {
    int kj = c.k[j - 1];
    for (int i = 0; i <= kj - 1; ++i) {
      HPComplex h = V.hat_t(i + 1, e.product);
      for (int m = 0; i + m <= kj - 1; ++m) {
        for (const auto& mv : weak_compositions_fixed_slot(m, static_cast<int>(r), static_cast<int>(j))) {
          std::int64_t D = coeff_D(qc, m, i, static_cast<int>(j), k_ext, mv);
          if (D == 0) continue;
          Ints km = add(c.k, mv);
          Ints kb = reversed(slice(km, 0, j - 1));
          kb.push_back(qc + kj - i - m - 1);
          total += h * V.Li(slice(km, j, r), slice(e.X, j + 1, r + 1)) *
                   V.Li(kb, reversed(inverted(slice(e.X, 0, j)))) * static_cast<long>(D);
        }
      }
    }
  }
  return total;
}

DoubleParams double_params(const IdentityCase& c) {
  DoubleParams p;
  p.q = c.q;
  p.k = c.k.empty() ? 0 : c.k[0];
  p.x = c.x0;
  p.y = c.x.empty() ? RootOfUnity() : c.x[0];
  p.a = c.a0;
  p.b = c.a.empty() ? HPComplex(0.5) : c.a[0];
  return p;
}

HPComplex Li1(const Values& V, int k, const RootOfUnity& x) { return V.Li({k}, {x}); }

// Shared by the depth-two reflection and parity relations:
// (-1)^q sum_{l=0}^{k} C(q+k-l-1, q-1) br_l Li_{q+k-l}(1/x).
HPComplex first_bracket_sum(const DoubleParams& p, const Values& V, const RootOfUnity& xy) {
  HPComplex s = zero();
  for (int l = 0; l <= p.k; ++l) {
    std::int64_t b = binomial(p.q + p.k - l - 1, p.q - 1);
    if (b != 0) s += V.bracket(l, xy) * Li1(V, p.q + p.k - l, p.x.inverse()) * static_cast<long>(b);
  }
  return signed_(p.q, s);
}

HPComplex double_reflection(const DoubleParams& p, const Values& V) {
  RootOfUnity xy = p.x * p.y;
  HPComplex t = V.Li({p.q, p.k}, {p.x, p.y});
  t += signed_(p.q, Li1(V, p.k, p.y) * Li1(V, p.q, p.x.inverse()));
  t += signed_(p.q + p.k, V.Li({p.k, p.q}, {p.y.inverse(), p.x.inverse()}));
  t -= first_bracket_sum(p, V, xy);
  for (int l = 0; l <= p.q; ++l) {
    int m = p.q - l;
    std::int64_t b = binomial(m + p.k - 1, p.k - 1);
    if (b != 0) t -= signed_(m, V.bracket(l, xy) * Li1(V, p.k + m, p.y) * static_cast<long>(b));
  }
  return t;
}

HPComplex double_parity(const DoubleParams& p, const Values& V, bool alt_sign) {
  RootOfUnity xy = p.x * p.y;
  HPComplex lhs = V.Li({p.k, p.q}, {p.y, p.x}) -
                  signed_(p.q + p.k, V.Li({p.k, p.q}, {p.y.inverse(), p.x.inverse()}));
  HPComplex rhs = Li1(V, p.q, p.x) * Li1(V, p.k, p.y) +
                  signed_(p.q, Li1(V, p.k, p.y) * Li1(V, p.q, p.x.inverse())) - Li1(V, p.k + p.q, xy);
  rhs -= first_bracket_sum(p, V, xy);
  for (int l = 0; l <= p.q; ++l) {
    std::int64_t b = binomial(p.q + p.k - l - 1, p.k - 1);
    if (b == 0) continue;
    long sign_exp = alt_sign ? p.q : p.q - l;
    rhs -= signed_(sign_exp, V.bracket(l, xy) * Li1(V, p.q + p.k - l, p.y) * static_cast<long>(b));
  }
  return lhs - rhs;
}

HPComplex double_hurwitz(const DoubleParams& p, const Values& V) {
  RootOfUnity xy = p.x * p.y;
  HPComplex one = unit();
  const HPComplex& a = p.a;
  const HPComplex& b = p.b;
  HPComplex shift = one + b - a;
  HPComplex t = root_value(xy.inverse()) * V.Li({p.q, p.k}, {p.x, p.y}, {a, b});
  t += signed_(p.q, root_value(p.y.inverse()) * V.Li({p.k}, {p.y}, {b}) * V.Li({p.q}, {p.x.inverse()}, {one - a}));
  t += signed_(p.q + p.k, V.Li({p.k, p.q}, {p.y.inverse(), p.x.inverse()}, {one - b, one - a}));
  for (int j = 0; j <= p.q - 1; ++j) {
    int m = p.q - 1 - j;
    std::int64_t c = binomial(m + p.k - 1, p.k - 1);
    if (c == 0) continue;
    t += signed_(m, V.Li({p.k + m}, {p.y}, {shift}) * V.hat(j + 1, xy, a) * static_cast<long>(c));
  }
  HPComplex s = zero();
  for (int i = 0; i <= p.k - 1; ++i) {
    std::int64_t c = binomial(p.k + p.q - i - 2, p.q - 1);
    if (c == 0) continue;
    s += V.Li({p.k + p.q - i - 1}, {p.x.inverse()}, {shift}) * V.hat(i + 1, xy, b) * static_cast<long>(c);
  }
  t += signed_(p.q, s);
  return t;
}

struct Trig {
  HPComplex pi, cot_a, cot_b, csc_a, csc_b;
};

Trig trig(const HPComplex& a, const HPComplex& b) {
  prec_t p = working_precision();
  Real pir = Real::pi(p);
  auto cot_csc = [&](const HPComplex& v, HPComplex& cot, HPComplex& csc) {
    Complex z = v.value() * pir;
    Complex s = sin(z), c = cos(z);
    double amp = 1.0 / abs_d(s);
    double e = 16.0 * amp * amp * unit_roundoff(p) + v.err() * 8.0 * amp * amp;
    cot = HPComplex(c / s, e);
    csc = HPComplex(inv(s), e);
  };
  Trig t;
  t.pi = HPComplex(Complex(pir), 4.0 * unit_roundoff(p));
  cot_csc(a, t.cot_a, t.csc_a);
  cot_csc(b, t.cot_b, t.csc_b);
  return t;
}

HPComplex csc_square_example(const IdentityCase& c, const Values& V) {
  const RootOfUnity& x = c.x0;
  HPComplex one = unit();
  const HPComplex& a = c.a0;
  const HPComplex& b = c.a.at(0);
  HPComplex shift = one + b - a;
  Trig T = trig(a, b);
  HPComplex lhs = V.Li({2, 2}, {x.inverse(), x}, {a, b}) + V.Li({2, 2}, {x.inverse(), x}, {one - b, one - a}) +
                  root_value(x.inverse()) * V.Li({2}, {x}, {b}) * V.Li({2}, {x}, {one - a});
  HPComplex rhs = T.pi * T.pi * (T.csc_a * T.csc_a + T.csc_b * T.csc_b) * V.Li({2}, {x}, {shift}) +
                  T.pi * (T.cot_b - T.cot_a) * V.Li({3}, {x}, {shift}) * 2L;
  return lhs - rhs;
}

HPComplex csc_cot_example(const IdentityCase& c, const Values& V) {
  const RootOfUnity& x = c.x0;
  RootOfUnity mx = x * RootOfUnity::minus_one();
  HPComplex one = unit();
  const HPComplex& a = c.a0;
  const HPComplex& b = c.a.at(0);
  HPComplex shift = one + b - a;
  Trig T = trig(a, b);
  HPComplex lhs = V.Li({2, 2}, {x.inverse(), mx}, {one - b, one - a}) - V.Li({2, 2}, {mx.inverse(), x}, {a, b}) +
                  root_value(x.inverse()) * V.Li({2}, {x}, {b}) * V.Li({2}, {mx}, {one - a});
  HPComplex pi2 = T.pi * T.pi;
  HPComplex rhs = pi2 * T.csc_a * T.cot_a * V.Li({2}, {x}, {shift}) +
                  pi2 * T.csc_b * T.cot_b * V.Li({2}, {mx}, {shift}) +
                  T.pi * T.csc_b * V.Li({3}, {mx}, {shift}) * 2L - T.pi * T.csc_a * V.Li({3}, {x}, {shift}) * 2L;
  return lhs - rhs;
}

HPComplex derivative_closed_form(int m, const RootOfUnity& x, const HPComplex& a, const Values& V) {
  HPComplex one = unit();
  HPComplex lhs = V.Li({m + 1}, {x}, {one - a}) -
                  signed_(m, root_value(x) * V.Li({m + 1}, {x.inverse()}, {a}));
  return lhs - jet_rhs_closed_form(m, x, a);
}

HPComplex alternating_family(int l, const Values& V) {
  Ints k, k3;
  Roots x, x3;
  for (int i = 0; i < l; ++i) {
    k.insert(k.end(), {1, 2});
    x.insert(x.end(), {RootOfUnity(), RootOfUnity::minus_one()});
    k3.push_back(3);
    x3.push_back(RootOfUnity());
  }
  HPComplex rhs = V.Li(k3, x3);
  Complex scaled(ldexp(rhs.re(), -3L * l), ldexp(rhs.im(), -3L * l));
  return V.Li(k, x) - HPComplex(scaled, std::ldexp(rhs.err(), -3 * l));
}

HPComplex t_relation(const Ints& k, const Values& V) {
  Params c;
  for (std::size_t j = 1; j <= k.size(); ++j) c.push_back(HPComplex::rational(2 - static_cast<long long>(j), 2));
  HPComplex lhs = V.Li(k, Roots(k.size()), c);
  HPComplex T = mtv_T(k, V.cfg());
  long e = sum_of(k) - static_cast<long>(k.size());
  Complex scaled(ldexp(T.re(), e), ldexp(T.im(), e));
  return lhs - HPComplex(scaled, std::ldexp(T.err(), static_cast<int>(e)));
}

HPComplex stuffle(const DoubleParams& p, const Values& V) {
  return Li1(V, p.q, p.x) * Li1(V, p.k, p.y) - V.Li({p.q, p.k}, {p.x, p.y}) - V.Li({p.k, p.q}, {p.y, p.x}) -
         Li1(V, p.q + p.k, p.x * p.y);
}

ResidualReport grade(const IdentityCase& c, const EvalConfig& cfg, double tol, const DebugHooks& hooks) {
  ResidualReport rep;
  rep.case_ = c;
  rep.tolerance = tol;
  auto t0 = std::chrono::steady_clock::now();
  try {
    rep.residual = residual(c, cfg, hooks);
    rep.eval_err = rep.residual.err();
    rep.passed = rep.residual.abs_d() <= std::max(tol, 100.0 * rep.eval_err);
  } catch (const std::exception& ex) {
    rep.residual = HPComplex(Complex::with_prec(NAN, NAN, working_precision()), INFINITY);
    rep.eval_err = INFINITY;
    rep.passed = false;
    rep.error = ex.what();
  }
  rep.wall_time = std::chrono::steady_clock::now() - t0;
  return rep;
}

std::string join_params(const Params& ps) {
  std::ostringstream os;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    os << (i ? "," : "") << ps[i].re().to_string(10);
    if (!ps[i].im().is_zero()) os << (ps[i].im().sign() < 0 ? "" : "+") << ps[i].im().to_string(10) << "i";
  }
  return os.str();
}

}  // namespace

std::string_view identity_name(IdentityId id) {
  for (const auto& e : kNames) {
    if (e.id == id) return e.name;
  }
  return "unknown";
}

std::optional<IdentityId> identity_from_name(std::string_view name) {
  for (const auto& e : kNames) {
    if (e.name == name) return e.id;
  }
  return std::nullopt;
}

std::vector<IdentityId> all_identities() {
  std::vector<IdentityId> out;
  for (const auto& e : kNames) out.push_back(e.id);
  return out;
}

std::string IdentityCase::describe() const {
  std::ostringstream os;
  os << identity_name(id) << " q=" << q << " x0=" << x0.to_string() << " k=(";
  for (std::size_t i = 0; i < k.size(); ++i) os << (i ? "," : "") << k[i];
  os << ") x=(";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i].to_string();
  os << ") a0=" << join_params({a0}) << " a=(" << join_params(a) << ") m=" << m << " l=" << l;
  return os.str();
}

std::optional<std::string> admissibility_violation(const IdentityCase& c) {
  auto pair_ok = [](int k, const RootOfUnity& x) { return !(k == 1 && x.is_one()); };
  auto params_ok = [&](const Params& all) -> std::optional<std::string> {
    for (std::size_t j = 0; j < all.size(); ++j) {
      if (near_integer(all[j])) return "parameter a_" + std::to_string(j) + " is an integer";
    }
    for (std::size_t j = 0; j < all.size(); ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        if (in_negative_naturals(all[j] - all[i])) {
          return "a_" + std::to_string(j) + " - a_" + std::to_string(i) + " is a negative integer";
        }
      }
    }
    return std::nullopt;
  };
  switch (c.id) {
    case IdentityId::kReflection:
    case IdentityId::kHurwitzReflection:
    case IdentityId::kTValueReflection: {
      if (c.k.empty()) return "depth r must be at least 1";
      if (c.k.size() != c.x.size()) return "k and x lengths differ";
      if (c.q < 1) return "q must be positive";
      for (int v : c.k) {
        if (v < 1) return "exponents must be positive";
      }
      if (!pair_ok(c.k.back(), c.x.back())) return "(k_r, x_r) = (1, 1)";
      if (!pair_ok(c.q, c.x0)) return "(k_0, x_0) = (1, 1)";
      if (c.id == IdentityId::kHurwitzReflection) {
        if (c.a.size() != c.k.size()) return "a must have r entries";
        Params all{c.a0};
        all.insert(all.end(), c.a.begin(), c.a.end());
        return params_ok(all);
      }
      return std::nullopt;
    }
    case IdentityId::kDoubleReflection:
    case IdentityId::kDoubleParity:
    case IdentityId::kDoubleParityAltSign:
    case IdentityId::kStuffle:
    case IdentityId::kDoubleHurwitz: {
      if (c.k.size() != 1 || c.x.size() != 1) return "depth-two identities need exactly one k and one y";
      if (c.q < 1 || c.k[0] < 1) return "exponents must be positive";
      if (!pair_ok(c.q, c.x0)) return "(q, x) = (1, 1)";
      if (!pair_ok(c.k[0], c.x[0])) return "(k, y) = (1, 1)";
      if (c.id == IdentityId::kDoubleHurwitz) {
        if (c.a.size() != 1) return "cor5_1 needs one b";
        return params_ok({c.a0, c.a[0]});
      }
      return std::nullopt;
    }
    case IdentityId::kCscSquareExample:
    case IdentityId::kCscCotExample:
      if (c.a.size() != 1) return "examples need one b";
      return params_ok({c.a0, c.a[0]});
    case IdentityId::kDerivativeClosedForm:
      if (c.m < 0) return "m must be nonnegative";
      if (c.x0.is_one()) return "x must differ from 1";
      if (near_integer(c.a0)) return "a is an integer";
      return std::nullopt;
    case IdentityId::kAlternatingFamily:
      if (c.l < 1) return "l must be positive";
      return std::nullopt;
    case IdentityId::kTValueRelation:
      if (c.k.empty()) return "k must be nonempty";
      for (int v : c.k) {
        if (v < 1) return "exponents must be positive";
      }
      if (c.k.back() < 2) return "k_r must exceed 1";
      return std::nullopt;
  }
  return "unknown identity";
}

HPComplex residual(const IdentityCase& c, const EvalConfig& cfg, const DebugHooks& hooks) {
  if (auto why = admissibility_violation(c)) {
    throw PreconditionError(std::string(identity_name(c.id)) + ": " + *why);
  }
  Values V(cfg);
  switch (c.id) {
    case IdentityId::kReflection:
      return reflection(c, V, hooks);
    case IdentityId::kHurwitzReflection:
      return hurwitz_reflection(c, V, hooks);
    case IdentityId::kTValueReflection:
      return tvalue_reflection(c, V, hooks);
    case IdentityId::kDoubleReflection:
      return double_reflection(double_params(c), V);
    case IdentityId::kDoubleParity:
      return double_parity(double_params(c), V, false);
    case IdentityId::kDoubleParityAltSign:
      return double_parity(double_params(c), V, true);
    case IdentityId::kDoubleHurwitz:
      return double_hurwitz(double_params(c), V);
    case IdentityId::kCscSquareExample:
      return csc_square_example(c, V);
    case IdentityId::kCscCotExample:
      return csc_cot_example(c, V);
    case IdentityId::kDerivativeClosedForm:
      return derivative_closed_form(c.m, c.x0, c.a0, V);
    case IdentityId::kAlternatingFamily:
      return alternating_family(c.l, V);
    case IdentityId::kTValueRelation:
      return t_relation(c.k, V);
    case IdentityId::kStuffle:
      return stuffle(double_params(c), V);
  }
  throw PreconditionError("unknown identity");
}

ResidualReport check(const IdentityCase& c, const EvalConfig& cfg, double tolerance, const DebugHooks& hooks) {
  return grade(c, cfg, tolerance, hooks);
}

namespace {
ResidualReport check_as(IdentityId id, IdentityCase c, const EvalConfig& cfg, double tol) {
  c.id = id;
  return grade(c, cfg, tol, {});
}
}  // namespace

ResidualReport residual_reflection(const IdentityCase& c, const EvalConfig& cfg, double tol) {
  return check_as(IdentityId::kReflection, c, cfg, tol);
}

ResidualReport residual_hurwitz_reflection(const IdentityCase& c, const EvalConfig& cfg, double tol) {
  return check_as(IdentityId::kHurwitzReflection, c, cfg, tol);
}

ResidualReport residual_tvalue_reflection(const IdentityCase& c, const EvalConfig& cfg, double tol) {
  return check_as(IdentityId::kTValueReflection, c, cfg, tol);
}

ResidualReport residual_corollary(IdentityId id, const DoubleParams& p, const EvalConfig& cfg, double tol) {
  IdentityCase c;
  c.id = id;
  c.q = p.q;
  c.x0 = p.x;
  c.a0 = p.a;
  c.a = {p.b};
  if (id == IdentityId::kCscSquareExample || id == IdentityId::kCscCotExample) {
    c.k.clear();
    c.x.clear();
  } else {
    c.k = {p.k};
    c.x = {p.y};
  }
  return grade(c, cfg, tol, {});
}

ResidualReport residual_derivative_closed_form(int m, const RootOfUnity& x, const HPComplex& a,
                                               const EvalConfig& cfg, double tol) {
  IdentityCase c;
  c.id = IdentityId::kDerivativeClosedForm;
  c.m = m;
  c.x0 = x;
  c.a0 = a;
  return grade(c, cfg, tol, {});
}

ResidualReport residual_alternating_family(int l, const EvalConfig& cfg, double tol) {
  IdentityCase c;
  c.id = IdentityId::kAlternatingFamily;
  c.l = l;
  return grade(c, cfg, tol, {});
}

ResidualReport residual_t_relation(const std::vector<int>& k, const EvalConfig& cfg, double tol) {
  IdentityCase c;
  c.id = IdentityId::kTValueRelation;
  c.k = k;
  return grade(c, cfg, tol, {});
}

}  // namespace czeta::sym
