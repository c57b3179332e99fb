#include <algorithm>
#include <cmath>

#include "czeta/errors.hpp"
#include "czeta/symmetry.hpp"

namespace czeta::sym {

namespace {

using Roots = std::vector<RootOfUnity>;
using Params = std::vector<HPComplex>;
using Ints = std::vector<int>;

struct NameEntry {
  ExpansionId id;
  std::string_view name;
};

constexpr NameEntry kNames[] = {
    {ExpansionId::kPhiAtInteger, "L3_2"},
    {ExpansionId::kUnitShiftTaylor, "L3_3"},
    {ExpansionId::kShiftedTaylor, "L3_4"},
    {ExpansionId::kNegativeIntegerTaylor, "L3_5"},
    {ExpansionId::kPrincipalPart, "L3_6_principal"},
    {ExpansionId::kPhiAtShiftedInteger, "L3_7"},
};

HPComplex zero() { return HPComplex(Complex::zero(working_precision())); }
HPComplex unit() { return HPComplex(Complex(Real::with_prec(1.0, working_precision()))); }

HPComplex power(const HPComplex& z, int m) {
  HPComplex out = unit();
  for (int i = 0; i < m; ++i) out *= z;
  return out;
}

HPComplex Li(const Ints& k, const Roots& x, const Params& c, const EvalConfig& cfg) {
  if (k.empty()) return unit();
  return cmhzv(ZetaIndex(k, x, c), cfg);
}

Ints add(const Ints& k, const Composition& m) {
  Ints out(k);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += m.parts[i];
  return out;
}

Roots inverted_reversed(const Roots& xs, std::size_t count) {
  Roots out;
  for (std::size_t i = count; i-- > 0;) out.push_back(xs[i].inverse());
  return out;
}

void require_shape(const ExpansionParams& p) {
  if (p.k.empty()) throw PreconditionError("expansion needs a nonempty k");
  if (p.xs.size() != p.k.size()) throw PreconditionError("expansion: k and xs lengths differ");
  for (int v : p.k) {
    if (v < 1) throw PreconditionError("expansion: exponents must be positive");
  }
}

void require_params(const ExpansionParams& p) {
  if (p.a.size() != p.k.size()) throw PreconditionError("expansion: a must have one entry per level");
}

HPComplex phi_at_integer(const ExpansionParams& p, int M, const HPComplex& d, const EvalConfig& cfg) {
  HPComplex lhs = phi_ext(HPComplex(p.n) + d, p.x, cfg);
  HPComplex poly = unit() / d;
  HPComplex dm = unit();
  RootOfUnity xinv = p.x.inverse();
  for (int m = 0; m <= M; ++m) {
    poly -= sym_li_bracket(m + 1, xinv, cfg) * dm;
    dm *= d;
  }
  return lhs - HPComplex(xinv.pow(p.n).value()) * poly;
}

// Taylor expansion in d of Li(k; xs; base + d) with every parameter shifted by d.
HPComplex shifted_taylor(const ExpansionParams& p, const Params& base, int M, const HPComplex& d,
                         const EvalConfig& cfg) {
  Params moved;
  for (const auto& b : base) moved.push_back(b + d);
  HPComplex lhs = Li(p.k, p.xs, moved, cfg);
  HPComplex poly = zero();
  HPComplex dm = unit();
  for (int m = 0; m <= M; ++m) {
    HPComplex coeff = zero();
    for (const auto& mv : weak_compositions(m, static_cast<int>(p.k.size()))) {
      std::int64_t B = coeff_B(p.k, mv);
      if (B != 0) coeff += Li(add(p.k, mv), p.xs, base, cfg) * static_cast<long>(B);
    }
    poly += coeff * dm;
    dm *= d;
  }
  return lhs - poly;
}

HPComplex negative_integer_taylor(const ExpansionParams& p, int M, const HPComplex& d, const EvalConfig& cfg) {
  require_params(p);
  std::size_t r = p.k.size();
  HPComplex one = unit();
  Params moved;
  for (const auto& a : p.a) moved.push_back(one + a - HPComplex(p.n) + d);
  HPComplex lhs = Li(p.k, p.xs, moved, cfg);
  RootOfUnity total = product(p.xs.begin(), p.xs.end());
  HPComplex xs_n(total.pow(p.n).value());
  HPComplex poly = zero();
  HPComplex dm = unit();
  for (int m = 0; m <= M; ++m) {
    HPComplex coeff = zero();
    for (const auto& mv : weak_compositions(m, static_cast<int>(r))) {
      std::int64_t B = coeff_B(p.k, mv);
      if (B == 0) continue;
      Ints km = add(p.k, mv);
      for (std::size_t j = 0; j <= r; ++j) {
        long sgn = 0;
        for (std::size_t l = 0; l < j; ++l) sgn += p.k[l] + mv.parts[l];
        Roots up_x(p.xs.begin() + static_cast<long>(j), p.xs.end());
        RootOfUnity up_prod = product(up_x.begin(), up_x.end());
        HPComplex up = Li(Ints(km.begin() + static_cast<long>(j), km.end()), up_x,
                          Params(p.a.begin() + static_cast<long>(j), p.a.end()), cfg) *
                       HPComplex(up_prod.inverse().value());
        Ints kb(km.begin(), km.begin() + static_cast<long>(j));
        std::reverse(kb.begin(), kb.end());
        Params ab;
        for (std::size_t l = j; l-- > 0;) ab.push_back(-p.a[l]);
        HPComplex down = mhs_hurwitz(p.n - 1, kb, inverted_reversed(p.xs, j), ab);
        HPComplex term = up * down * static_cast<long>(B);
        if (sgn % 2) coeff -= term; else coeff += term;
      }
    }
    poly += coeff * dm;
    dm *= d;
  }
  return lhs - xs_n * poly;
}

HPComplex principal_part(const ExpansionParams& p, const HPComplex& d, const EvalConfig& cfg) {
  require_params(p);
  std::size_t r = p.k.size();
  if (p.j < 1 || static_cast<std::size_t>(p.j) > r) throw PreconditionError("principal part: slot j out of range");
  std::size_t j = static_cast<std::size_t>(p.j);
  HPComplex one = unit();
  const HPComplex& aj = p.a[j - 1];
  Params moved;
  for (const auto& a : p.a) moved.push_back(one + a - HPComplex(p.n) - aj + d);
  int kj = p.k[j - 1];
  HPComplex lhs = Li(p.k, p.xs, moved, cfg) * power(d, kj);
  RootOfUnity total = product(p.xs.begin(), p.xs.end());
  HPComplex xs_n(total.pow(p.n).value());
  Roots up_x(p.xs.begin() + static_cast<long>(j), p.xs.end());
  Params up_c;
  for (std::size_t l = j; l < r; ++l) up_c.push_back(one - aj + p.a[l]);
  Params down_a;
  for (std::size_t l = j - 1; l-- > 0;) down_a.push_back(aj - p.a[l]);
  Roots down_x = inverted_reversed(p.xs, j - 1);
  HPComplex poly = zero();
  HPComplex dm = unit();
  for (int m = 0; m < kj; ++m) {
    HPComplex coeff = zero();
    for (const auto& mv : weak_compositions_fixed_slot(m, static_cast<int>(r), p.j)) {
      long sgn = 0;
      std::int64_t c = 1;
      for (std::size_t l = 0; l + 1 < j; ++l) sgn += p.k[l];
      for (std::size_t l = j; l < r; ++l) sgn += mv.parts[l];
      for (std::size_t l = 0; l < r; ++l) {
        if (l != j - 1) c *= binomial(mv.parts[l] + p.k[l] - 1, p.k[l] - 1);
      }
      if (c == 0) continue;
      Ints km = add(p.k, mv);
      Ints kb(km.begin(), km.begin() + static_cast<long>(j - 1));
      std::reverse(kb.begin(), kb.end());
      HPComplex term = mhs_hurwitz(p.n - 1, kb, down_x, down_a) *
                       Li(Ints(km.begin() + static_cast<long>(j), km.end()), up_x, up_c, cfg) * static_cast<long>(c);
      if (sgn % 2) coeff -= term; else coeff += term;
    }
    poly += coeff * dm;
    dm *= d;
  }
  return lhs - xs_n * poly;
}

HPComplex phi_at_shifted_integer(const ExpansionParams& p, int M, const HPComplex& d, const EvalConfig& cfg) {
  HPComplex lhs = phi_ext(d - HPComplex(p.n) - p.a0, p.x, cfg);
  HPComplex poly = zero();
  HPComplex dm = unit();
  RootOfUnity xinv = p.x.inverse();
  for (int m = 0; m <= M; ++m) {
    poly += hat_li(m + 1, xinv, p.a0, cfg) * dm;
    dm *= d;
  }
  return lhs - HPComplex(p.x.pow(p.n).value()) * poly;
}

}  // namespace

std::string_view expansion_name(ExpansionId id) {
  for (const auto& e : kNames) {
    if (e.id == id) return e.name;
  }
  return "unknown";
}

std::optional<ExpansionId> expansion_from_name(std::string_view name) {
  for (const auto& e : kNames) {
    if (e.name == name) return e.id;
  }
  return std::nullopt;
}

std::vector<ExpansionId> all_expansions() {
  std::vector<ExpansionId> out;
  for (const auto& e : kNames) out.push_back(e.id);
  return out;
}

HPComplex expansion_residual(ExpansionId id, const ExpansionParams& p, int M, const HPComplex& delta,
                             const EvalConfig& cfg) {
  if (M < 0) throw PreconditionError("expansion order M must be nonnegative");
  switch (id) {
    case ExpansionId::kPhiAtInteger:
      return phi_at_integer(p, M, delta, cfg);
    case ExpansionId::kUnitShiftTaylor: {
      require_shape(p);
      return shifted_taylor(p, Params(p.k.size(), unit()), M, delta, cfg);
    }
    case ExpansionId::kShiftedTaylor: {
      require_shape(p);
      require_params(p);
      Params base;
      for (const auto& a : p.a) base.push_back(unit() + a - p.a0);
      return shifted_taylor(p, base, M, delta, cfg);
    }
    case ExpansionId::kNegativeIntegerTaylor:
      require_shape(p);
      if (p.n < 1) throw PreconditionError("expansion point n must be positive");
      return negative_integer_taylor(p, M, delta, cfg);
    case ExpansionId::kPrincipalPart:
      require_shape(p);
      if (p.n < 1) throw PreconditionError("expansion point n must be positive");
      return principal_part(p, delta, cfg);
    case ExpansionId::kPhiAtShiftedInteger:
      return phi_at_shifted_integer(p, M, delta, cfg);
  }
  throw PreconditionError("unknown expansion");
}

ScalingReport expansion_scaling(ExpansionId id, const ExpansionParams& p, int M, const HPComplex& delta,
                                const EvalConfig& cfg) {
  ScalingReport rep;
  rep.at_delta = expansion_residual(id, p, M, delta, cfg);
  rep.at_half = expansion_residual(id, p, M, delta * HPComplex::rational(1, 2), cfg);
  rep.ratio = rep.at_delta.abs_d() / rep.at_half.abs_d();
  int order = (id == ExpansionId::kPrincipalPart) ? p.k.at(static_cast<std::size_t>(p.j - 1)) : M + 1;
  rep.expected = std::ldexp(1.0, order);
  rep.passed = std::isfinite(rep.ratio) && rep.ratio >= rep.expected / 2 && rep.ratio <= rep.expected * 2;
  return rep;
}

}  // namespace czeta::sym
