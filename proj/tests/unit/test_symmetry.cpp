#include <doctest.h>

#include <random>

#include "czeta/errors.hpp"
#include "czeta/jet.hpp"
#include "czeta/symmetry.hpp"
#include "helpers.hpp"
#include "oracle.hpp"

using namespace czeta;
using namespace czeta::sym;
using testing::dist;
using testing::pi;

namespace {

RootOfUnity root(std::int64_t p, std::int64_t q) { return RootOfUnity(p, q); }

HPComplex cplx(double re, double im = 0.0) { return HPComplex(re, im); }

IdentityCase reflection(IdentityId id, int q, RootOfUnity x0, std::vector<int> k, std::vector<RootOfUnity> x,
                        HPComplex a0 = HPComplex(0.5), std::vector<HPComplex> a = {}) {
  IdentityCase c;
  c.id = id;
  c.q = q;
  c.x0 = x0;
  c.k = std::move(k);
  c.x = std::move(x);
  c.a0 = a0;
  c.a = std::move(a);
  return c;
}

void require_pass(const IdentityCase& c, double tol = 1e-10) {
  CAPTURE(c.describe());
  ResidualReport r = check(c, {}, tol);
  CAPTURE(r.error);
  CHECK(r.error.empty());
  CHECK(r.passed);
  CHECK(r.magnitude() <= std::max(tol, 100 * r.eval_err));
  // The passes here are real zeros, not a wide error bar.
  CHECK(r.eval_err < 1e-30);
  CHECK(r.magnitude() < 1e-30);
}

// Second transcription of the D coefficients, straight from the defining product.
std::int64_t choose(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  std::int64_t v = 1;
  for (std::int64_t i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return v;
}

std::int64_t reference_D(int q, int m, int i, int j, const std::vector<int>& kext, const std::vector<int>& mv) {
  int r = static_cast<int>(mv.size());
  int e = 0;
  for (int l = 0; l <= j - 1; ++l) e += kext[static_cast<std::size_t>(l)];
  for (int l = j + 1; l <= r; ++l) e += mv[static_cast<std::size_t>(l - 1)];
  std::int64_t v = (e % 2 == 0) ? 1 : -1;
  v *= choose(q + kext[static_cast<std::size_t>(j)] - m - i - 2, q - 1);
  for (int l = 1; l <= r; ++l) {
    if (l == j) continue;
    int kl = kext[static_cast<std::size_t>(l)];
    v *= choose(mv[static_cast<std::size_t>(l - 1)] + kl - 1, kl - 1);
  }
  return v;
}

Composition comp(std::vector<int> parts) {
  Composition c;
  c.parts = std::move(parts);
  for (int v : c.parts) c.total += v;
  return c;
}

}  // namespace

TEST_SUITE("coefficients") {
  TEST_CASE("B examples") {
    CHECK(coeff_B({2}, comp({2})) == 3);
    CHECK(coeff_B({3, 1, 2}, comp({0, 0, 0})) == 1);
    CHECK(coeff_B({1, 2}, comp({0, 1})) == -2);
  }

  TEST_CASE("C and D examples") {
    CHECK(coeff_C(2, 0, 0, 1, {2, 2}, comp({0})) == 3);
    CHECK(coeff_C(2, 0, 1, 1, {2, 2}, comp({0})) == 2);
    CHECK(coeff_D(2, 0, 0, 1, {2, 2}, comp({0})) == 2);
    // q = 1: the inner binomial is the indicator of k_j - m - i - 1 >= 0.
    for (int kj = 1; kj <= 4; ++kj) {
      for (int m = 0; m <= 3; ++m) {
        for (int i = 0; i <= 3; ++i) {
          std::int64_t d = coeff_D(1, m, i, 1, {1, kj}, comp({0}));
          CHECK(d == (kj - m - i - 1 >= 0 ? -1 : 0));
        }
      }
    }
    std::int64_t lit = coeff_D(1, 1, 0, 2, {1, 1, 1}, comp({1, 0}));
    CHECK(lit == reference_D(1, 1, 0, 2, {1, 1, 1}, {1, 0}));
  }

  TEST_CASE("C_{q,m,i,j} = D_{q,m,i-1,j} and D matches a second transcription, exhaustively") {
    std::size_t checked = 0;
    for (int q = 1; q <= 4; ++q) {
      for (int r = 1; r <= 3; ++r) {
        std::vector<int> kk(static_cast<std::size_t>(r), 1);
        for (;;) {
          std::vector<int> kext{q};
          kext.insert(kext.end(), kk.begin(), kk.end());
          for (int j = 1; j <= r; ++j) {
            for (int m = 0; m <= 4; ++m) {
              for (const auto& mv : weak_compositions_fixed_slot(m, r, j)) {
                for (int i = 0; i <= 4; ++i) {
                  if (i >= 1) CHECK(coeff_C(q, m, i, j, kext, mv) == coeff_D(q, m, i - 1, j, kext, mv));
                  CHECK(coeff_D(q, m, i, j, kext, mv) == reference_D(q, m, i, j, kext, mv.parts));
                  ++checked;
                }
              }
            }
          }
          int pos = 0;
          while (pos < r && kk[static_cast<std::size_t>(pos)] == 3) kk[static_cast<std::size_t>(pos++)] = 1;
          if (pos == r) break;
          ++kk[static_cast<std::size_t>(pos)];
        }
      }
    }
    CHECK(checked > 10000);
  }
}

TEST_SUITE("brackets") {
  TEST_CASE("sym_li_bracket") {
    for (auto x : {RootOfUnity(), root(1, 2), root(1, 3), root(5, 6)}) CHECK(dist(sym_li_bracket(0, x), Complex(-1L)) == 0.0);
    CHECK(dist(sym_li_bracket(2, RootOfUnity()), Complex(pi() * pi() / 3L)) < 1e-40);
    CHECK(sym_li_bracket(1, RootOfUnity()).abs_d() == 0.0);
    HPComplex v = sym_li_bracket(3, root(1, 4));
    HPComplex ref = li_single(3, root(1, 4), HPComplex(1)) - li_single(3, root(3, 4), HPComplex(1));
    CHECK(dist(v, ref) < 1e-40);
  }

  TEST_CASE("hat_li against the definition and the closed form") {
    RootOfUnity x = RootOfUnity::minus_one();
    HPComplex a = HPComplex::rational(1, 3);
    HPComplex v = hat_li(1, x, a);
    HPComplex def = li_single(1, x, HPComplex(1) - a) + li_single(1, x, a);
    CHECK(dist(v, def) < 1e-40);
    CHECK(dist(v, jet_rhs_closed_form(0, x.inverse(), a)) < 1e-40);
    for (int jp1 = 1; jp1 <= 4; ++jp1) {
      for (auto y : {root(1, 3), root(1, 4), root(5, 6)}) {
        HPComplex b(0.3, 0.2);
        HPComplex lhs = hat_li(jp1, y, b);
        HPComplex rhs = jet_rhs_closed_form(jp1 - 1, y.inverse(), b);
        if ((jp1 - 1) % 2 == 1) rhs = -rhs;
        CHECK(dist(lhs, rhs) < 1e-38);
      }
    }
    CHECK_THROWS_AS(hat_li(1, x, HPComplex(2)), PoleError);
  }

  TEST_CASE("hat_li at x = 1 is the principal value") {
    CHECK(hat_li(1, RootOfUnity(), HPComplex(0.5)).abs_d() < 1e-45);
    // Bilateral paired sum sum_n [1/(n - a) - 1/(n - 1 + a)]: both partial sums by direct
    // summation, differenced, then extrapolated.
    Complex a(Real::rational(1, 3));
    std::vector<std::int64_t> n;
    for (std::int64_t m = 2000; m <= 40000; m = m * 5 / 4) n.push_back(m);
    auto s1 = oracle::partial_sums({{1, {0, 1}, Complex(1L) - a}}, n);
    auto s2 = oracle::partial_sums({{1, {0, 1}, a}}, n);
    std::vector<Complex> d;
    for (std::size_t i = 0; i < n.size(); ++i) d.push_back(s1[i] - s2[i]);
    auto lim = oracle::fit_limit(n, d, 0, static_cast<int>(n.size()) - 2);
    CHECK(dist(hat_li(1, RootOfUnity(), HPComplex::rational(1, 3)), lim.value) < std::max(1e-20, 10 * lim.spread));
    HPComplex h = hat_li(1, RootOfUnity(), HPComplex::rational(1, 3));
    Real th = pi() / 3L;
    CHECK(dist(h, Complex(-pi() * cos(th) / sin(th))) < 1e-40);
  }

  TEST_CASE("hat_li at x = 1, jp1 = 2 is minus the a-derivative of jp1 = 1") {
    HPComplex a = HPComplex::rational(1, 3);
    Real h = Real::from_string("1e-8");
    HPComplex ah{Complex(h)};
    Complex fp = hat_li(1, RootOfUnity(), a + ah).value();
    Complex fm = hat_li(1, RootOfUnity(), a - ah).value();
    Complex deriv = (fp - fm) / (h * 2L);
    HPComplex v = hat_li(2, RootOfUnity(), a);
    CHECK(dist(v, -deriv) < 1e-6 * v.abs_d());
  }

  TEST_CASE("hat_ti equals hat_li at a = 1/2") {
    CHECK(hat_ti(1, RootOfUnity()).abs_d() < 1e-45);
    for (auto x : {root(1, 2), root(1, 4), root(1, 3), RootOfUnity()}) {
      for (int jp1 = 1; jp1 <= 3; ++jp1) {
        CHECK(dist(hat_ti(jp1, x), hat_li(jp1, x, HPComplex(0.5))) < 1e-45);
      }
    }
    HPComplex lit = mtv({1}, {root(1, 2)}) * 2L;
    CHECK(dist(hat_ti(1, root(1, 2)), lit) < 1e-40);
  }
}

TEST_SUITE("reflections") {
  TEST_CASE("cyclotomic reflection examples") {
    require_pass(reflection(IdentityId::kReflection, 2, RootOfUnity(), {2}, {RootOfUnity()}));
    require_pass(reflection(IdentityId::kReflection, 2, root(1, 2), {1, 2}, {RootOfUnity(), root(1, 2)}));
    require_pass(reflection(IdentityId::kReflection, 1, root(1, 3), {2, 1}, {root(1, 4), root(1, 6)}));
  }

  TEST_CASE("shifting q inside the coefficient sums breaks the identity") {
    IdentityCase c = reflection(IdentityId::kReflection, 2, RootOfUnity(), {2}, {RootOfUnity()});
    DebugHooks hooks;
    hooks.q_shift_in_coefficient_sums = 1;
    ResidualReport r = check(c, {}, 1e-10, hooks);
    CHECK_FALSE(r.passed);
    CHECK(r.magnitude() > 1e-3);
  }

  TEST_CASE("Hurwitz reflection examples") {
    require_pass(reflection(IdentityId::kHurwitzReflection, 2, RootOfUnity(), {2}, {RootOfUnity()},
                            HPComplex::rational(1, 3), {HPComplex(0.2, 1.0 / 7.0)}));
    require_pass(reflection(IdentityId::kHurwitzReflection, 1, root(1, 2), {2}, {root(1, 4)}, cplx(0.3),
                            {cplx(0.3, 0.25)}));
    require_pass(reflection(IdentityId::kHurwitzReflection, 2, RootOfUnity(), {1, 2}, {RootOfUnity(), RootOfUnity()},
                            HPComplex::rational(1, 3), {HPComplex::rational(2, 5), cplx(0.5, 1.0 / 3.0)}));
  }

  TEST_CASE("t-value reflection examples") {
    require_pass(reflection(IdentityId::kTValueReflection, 2, RootOfUnity(), {2}, {RootOfUnity()}));
    require_pass(reflection(IdentityId::kTValueReflection, 1, root(1, 2), {1}, {root(1, 2)}));
  }

  TEST_CASE("Hurwitz reflection at a = 1/2 agrees with the t-value form") {
    std::mt19937_64 rng(5);
    std::vector<RootOfUnity> pool{RootOfUnity(), root(1, 2), root(1, 3), root(2, 3), root(1, 4), root(3, 4)};
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> kd(1, 3), depth(1, 2);
    int done = 0;
    while (done < 10) {
      int r = depth(rng);
      int q = kd(rng);
      RootOfUnity x0 = pool[pick(rng)];
      std::vector<int> k;
      std::vector<RootOfUnity> x;
      for (int i = 0; i < r; ++i) {
        k.push_back(kd(rng));
        x.push_back(pool[pick(rng)]);
      }
      IdentityCase t = reflection(IdentityId::kTValueReflection, q, x0, k, x);
      if (!admissible(t)) continue;
      ++done;
      IdentityCase h = reflection(IdentityId::kHurwitzReflection, q, x0, k, x, HPComplex(0.5),
                                  std::vector<HPComplex>(static_cast<std::size_t>(r), HPComplex(0.5)));
      REQUIRE(admissible(h));
      ResidualReport rt = check(t), rh = check(h);
      CAPTURE(t.describe());
      CHECK(rt.passed);
      CHECK(rh.passed);
      CHECK(dist(rt.residual, rh.residual) <= std::max(1e-12, rt.eval_err + rh.eval_err));
    }
  }

  TEST_CASE("admissibility") {
    auto bad = reflection(IdentityId::kReflection, 2, RootOfUnity(), {1}, {RootOfUnity()});
    CHECK(admissibility_violation(bad).has_value());
    CHECK_THROWS_AS(residual(bad), PreconditionError);
    ResidualReport r = check(bad);
    CHECK_FALSE(r.passed);
    CHECK_FALSE(r.error.empty());
    CHECK(std::isinf(r.eval_err));
    CHECK_FALSE(admissible(reflection(IdentityId::kReflection, 1, RootOfUnity(), {2}, {RootOfUnity()})));
    CHECK(admissible(reflection(IdentityId::kReflection, 1, root(1, 2), {2}, {RootOfUnity()})));
    CHECK_FALSE(admissible(reflection(IdentityId::kHurwitzReflection, 2, RootOfUnity(), {2}, {RootOfUnity()},
                                      HPComplex(1), {cplx(0.3)})));
    // a_1 - a_0 = -1 is excluded.
    CHECK_FALSE(admissible(reflection(IdentityId::kHurwitzReflection, 2, RootOfUnity(), {2}, {RootOfUnity()},
                                      cplx(0.5), {cplx(-0.5)})));
    CHECK(admissible(reflection(IdentityId::kHurwitzReflection, 2, RootOfUnity(), {2}, {RootOfUnity()}, cplx(0.5),
                                {cplx(1.5)})));
    CHECK_FALSE(admissible(reflection(IdentityId::kHurwitzReflection, 2, RootOfUnity(), {2, 2},
                                      {RootOfUnity(), RootOfUnity()}, cplx(0.5), {cplx(0.3)})));
  }
}

TEST_SUITE("corollaries") {
  TEST_CASE("examples") {
    DoubleParams p;
    p.q = 2;
    p.k = 2;
    p.x = root(1, 2);
    p.y = root(1, 2);
    ResidualReport a = residual_corollary(IdentityId::kDoubleReflection, p);
    CHECK(a.passed);
    CHECK(a.magnitude() < 1e-30);

    DoubleParams h;
    h.q = 2;
    h.k = 2;
    h.x = root(1, 4);
    h.y = root(3, 4);
    h.a = HPComplex::rational(1, 3);
    h.b = HPComplex::rational(1, 4);
    ResidualReport b = residual_corollary(IdentityId::kDoubleHurwitz, h);
    CHECK(b.passed);
    CHECK(b.magnitude() < 1e-30);

    DoubleParams e;
    e.x = root(1, 4);
    e.a = HPComplex::rational(1, 3);
    e.b = HPComplex::rational(2, 7);
    for (auto id : {IdentityId::kCscSquareExample, IdentityId::kCscCotExample}) {
      ResidualReport r = residual_corollary(id, e);
      CHECK(r.passed);
      CHECK(r.magnitude() < 1e-30);
    }
  }

  TEST_CASE("parity relation, and the variant with sign (-1)^q fails off xy = +-1") {
    DoubleParams p;
    p.q = 2;
    p.k = 1;
    p.x = root(1, 3);
    p.y = root(1, 4);
    ResidualReport good = residual_corollary(IdentityId::kDoubleParity, p);
    CHECK(good.passed);
    CHECK(good.magnitude() < 1e-30);
    ResidualReport alt = residual_corollary(IdentityId::kDoubleParityAltSign, p);
    CHECK_FALSE(alt.passed);
    CHECK(alt.magnitude() > 1e-3);
    DoubleParams one;
    one.q = 2;
    one.k = 3;
    CHECK(residual_corollary(IdentityId::kDoubleParityAltSign, one).passed);
  }

  TEST_CASE("depth-two Hurwitz admissibility") {
    DoubleParams h;
    h.q = 2;
    h.k = 2;
    h.x = root(1, 4);
    h.y = root(1, 3);
    h.a = cplx(0.5);
    h.b = cplx(-0.5);
    ResidualReport r = residual_corollary(IdentityId::kDoubleHurwitz, h);
    CHECK_FALSE(r.passed);
    CHECK(r.error.find("negative integer") != std::string::npos);
  }
}

TEST_SUITE("closed_forms") {
  TEST_CASE("derivative closed form examples") {
    CHECK(residual_derivative_closed_form(0, root(1, 2), cplx(0.5)).passed);
    CHECK(residual_derivative_closed_form(3, root(1, 4), cplx(0.3, 0.2)).passed);
    ResidualReport r = residual_derivative_closed_form(0, root(1, 3), HPComplex::rational(1, 4));
    CHECK(r.passed);
    CHECK(r.magnitude() < 1e-30);
    CHECK_FALSE(residual_derivative_closed_form(0, RootOfUnity(), cplx(0.5)).passed);
  }

  TEST_CASE("alternating family") {
    ResidualReport l1 = residual_alternating_family(1);
    CHECK(l1.passed);
    CHECK(l1.magnitude() < 1e-30);
    ResidualReport l2 = residual_alternating_family(2);
    CHECK(l2.passed);
    CHECK(l2.magnitude() < 1e-30);
    // Frozen direct-summation value of zeta(1, 2bar).
    HPComplex lhs = cmzv({1, 2}, {RootOfUnity(), root(1, 2)});
    CHECK(std::fabs(lhs.re().to_double() - 0.150257112894949) < 1e-14);
  }

  TEST_CASE("T relation") {
    for (auto k : {std::vector<int>{2}, std::vector<int>{1, 2}, std::vector<int>{1, 3}}) {
      ResidualReport r = residual_t_relation(k);
      CHECK(r.passed);
      CHECK(r.magnitude() < 1e-30);
    }
    CHECK_FALSE(residual_t_relation({2, 1}).passed);
  }

  TEST_CASE("names round-trip") {
    for (auto id : all_identities()) CHECK(identity_from_name(identity_name(id)) == id);
    CHECK(all_identities().size() == 13);
    CHECK_FALSE(identity_from_name("thm9_9").has_value());
    CHECK(identity_name(IdentityId::kReflection) == "thm2_1");
    for (auto id : all_expansions()) CHECK(expansion_from_name(expansion_name(id)) == id);
  }
}

TEST_SUITE("expansions") {
  TEST_CASE("scaling examples") {
    ExpansionParams p;
    p.n = 2;
    p.x = root(1, 4);
    ScalingReport s = expansion_scaling(ExpansionId::kPhiAtInteger, p, 3, cplx(1e-2));
    CHECK(s.expected == 16.0);
    CHECK(s.passed);
    CHECK(s.ratio == doctest::Approx(16.0).epsilon(0.25));

    ExpansionParams q;
    q.k = {2};
    q.xs = {root(1, 2)};
    q.a0 = HPComplex::rational(1, 3);
    q.a = {HPComplex::rational(2, 5)};
    ScalingReport t = expansion_scaling(ExpansionId::kShiftedTaylor, q, 2, cplx(1e-2));
    CHECK(t.expected == 8.0);
    CHECK(t.passed);
  }

  TEST_CASE("unit-shift Taylor series has no error at zero offset") {
    ExpansionParams p;
    p.k = {1, 2};
    p.xs = {root(1, 3), RootOfUnity()};
    for (int M : {0, 2, 3}) CHECK(expansion_residual(ExpansionId::kUnitShiftTaylor, p, M, HPComplex(0)).abs_d() == 0.0);
  }

  TEST_CASE("every expansion has its truncation order") {
    ExpansionParams base;
    base.n = 1;
    base.x = root(1, 3);
    base.k = {2, 1};
    base.xs = {root(1, 4), root(1, 2)};
    base.a0 = cplx(0.35, 0.1);
    base.a = {cplx(0.25), cplx(0.6, -0.2)};
    for (auto id : all_expansions()) {
      for (int M : {2, 3}) {
        ExpansionParams p = base;
        if (id == ExpansionId::kPrincipalPart) {
          p.j = M - 1;
          p.k = {2, 3};
        }
        ScalingReport s = expansion_scaling(id, p, M, cplx(1e-2, 3e-3));
        CAPTURE(expansion_name(id));
        CAPTURE(M);
        CAPTURE(s.ratio);
        CHECK(s.passed);
        if (id == ExpansionId::kPrincipalPart) {
          CHECK(s.expected == static_cast<double>(1 << p.k[static_cast<std::size_t>(p.j - 1)]));
        } else {
          CHECK(s.expected == static_cast<double>(1 << (M + 1)));
        }
      }
    }
  }

  TEST_CASE("preconditions") {
    ExpansionParams p;
    CHECK_THROWS_AS(expansion_residual(ExpansionId::kUnitShiftTaylor, p, 2, cplx(0.01)), PreconditionError);
    p.k = {2};
    p.xs = {RootOfUnity()};
    CHECK_THROWS_AS(expansion_residual(ExpansionId::kUnitShiftTaylor, p, -1, cplx(0.01)), PreconditionError);
    p.a = {};
    CHECK_THROWS_AS(expansion_residual(ExpansionId::kNegativeIntegerTaylor, p, 2, cplx(0.01)), PreconditionError);
  }
}
