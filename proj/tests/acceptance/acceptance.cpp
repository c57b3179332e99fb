// One line per acceptance criterion; exit status 1 if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "czeta/harness.hpp"
#include "oracle.hpp"

using namespace czeta;
using namespace czeta::sym;
using harness::GenerationBlock;
using harness::SuiteSpec;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

struct Battery {
  std::size_t total = 0;
  std::size_t passed = 0;
  double max_residual = 0.0;
  std::string first_failure;

  void add(const ResidualReport& r, double tol) {
    ++total;
    double m = r.magnitude();
    bool ok = r.error.empty() && r.passed && m <= tol;
    if (ok) {
      ++passed;
    } else if (first_failure.empty()) {
      first_failure = r.case_.describe() + (r.error.empty() ? "" : " (" + r.error + ")");
    }
    if (std::isfinite(m)) max_residual = std::max(max_residual, m);
  }
  bool ok() const { return total > 0 && passed == total; }
  std::string summary() const {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu/%zu cases, max |residual| %.2e", passed, total, max_residual);
    std::string s = buf;
    if (!first_failure.empty()) s += "; first failure: " + first_failure;
    return s;
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

GenerationBlock block(IdentityId id, int count) {
  GenerationBlock b;
  b.id = id;
  b.count = count;
  b.depth_min = 1;
  b.depth_max = 2;
  b.q_max = 3;
  b.k_max = 3;
  b.weight_cap = 7;
  b.root_orders = {1, 2, 3, 4, 6};
  return b;
}

std::vector<IdentityCase> generate(std::uint64_t seed, std::vector<GenerationBlock> blocks) {
  SuiteSpec s;
  s.seed = seed;
  s.generate = std::move(blocks);
  return harness::generate_cases(s);
}

Battery run_battery(const std::vector<IdentityCase>& cases, double tol) {
  harness::RunOptions opts;
  opts.tolerance = tol;
  harness::SuiteReport rep = harness::run_suite(cases, EvalConfig{}, opts);
  Battery b;
  for (const auto& r : rep.cases) b.add(r, tol);
  return b;
}

Outcome reflection_battery() {
  auto cases = generate(1001, {block(IdentityId::kReflection, 300)});
  Battery b = run_battery(cases, 1e-10);
  return {b.ok() && cases.size() >= 250, b.summary() + ", tol 1e-10"};
}

Outcome hurwitz_battery() {
  GenerationBlock mixed = block(IdentityId::kHurwitzReflection, 40);
  mixed.params_per_shape = 5;
  GenerationBlock pure = mixed;
  pure.count = 10;
  pure.root_orders = {1};
  auto a = generate(1002, {mixed});
  auto p = generate(1003, {pure});
  Battery ba = run_battery(a, 1e-10);
  Battery bp = run_battery(p, 1e-10);
  return {ba.ok() && bp.ok(), "roots of order <= 6: " + ba.summary() + "; all x_j = 1: " + bp.summary() + ", tol 1e-10"};
}

Outcome tvalue_battery() {
  auto cases = generate(1004, {block(IdentityId::kTValueReflection, 50)});
  std::vector<IdentityCase> hurwitz;
  for (auto c : cases) {
    c.id = IdentityId::kHurwitzReflection;
    c.a0 = HPComplex(0.5);
    c.a.assign(c.k.size(), HPComplex(0.5));
    hurwitz.push_back(c);
  }
  harness::RunOptions opts;
  opts.tolerance = 1e-10;
  auto rt = harness::run_suite(cases, EvalConfig{}, opts);
  auto rh = harness::run_suite(hurwitz, EvalConfig{}, opts);
  Battery bt, bh;
  double max_gap = 0.0;
  bool match = true;
  for (std::size_t i = 0; i < rt.cases.size(); ++i) {
    bt.add(rt.cases[i], 1e-10);
    bh.add(rh.cases[i], 1e-10);
    double gap = abs_d(rt.cases[i].residual.value() - rh.cases[i].residual.value());
    if (!(gap <= 1e-10)) match = false;
    max_gap = std::max(max_gap, gap);
  }
  return {bt.ok() && bh.ok() && match,
          "t-values: " + bt.summary() + "; Hurwitz form at a = 1/2: " + bh.summary() + "; max residual gap " +
              fmt("%.2e", max_gap) + " (tol 1e-10)"};
}

Outcome derivative_closed_form() {
  std::vector<RootOfUnity> roots{{1, 2}, {1, 3}, {2, 3}, {1, 4}, {3, 4}, {1, 6}, {5, 6}};
  std::mt19937_64 rng(1005);
  std::uniform_real_distribution<double> re(0.1, 0.9), im(-1.0, 1.0);
  std::vector<HPComplex> as;
  for (int i = 0; i < 10; ++i) as.emplace_back(re(rng), im(rng));
  Battery b;
  for (int m = 0; m <= 5; ++m) {
    for (const auto& x : roots) {
      for (const auto& a : as) b.add(residual_derivative_closed_form(m, x, a, {}, 1e-12), 1e-12);
    }
  }
  return {b.ok() && b.total == 6 * 7 * 10, b.summary() + ", tol 1e-12"};
}

Outcome alternating_family() {
  ResidualReport l1 = residual_alternating_family(1, {}, 1e-12);
  ResidualReport l2 = residual_alternating_family(2, {}, 1e-10);
  bool ok = l1.error.empty() && l2.error.empty() && l1.magnitude() <= 1e-12 && l2.magnitude() <= 1e-10;
  return {ok, "l = 1: |residual| " + fmt("%.2e", l1.magnitude()) + " (tol 1e-12); l = 2: |residual| " +
                  fmt("%.2e", l2.magnitude()) + " (tol 1e-10)"};
}

Outcome depth_two_batteries() {
  std::vector<std::pair<IdentityId, std::uint64_t>> ids{{IdentityId::kDoubleReflection, 1006},
                                                        {IdentityId::kDoubleParity, 1007},
                                                        {IdentityId::kDoubleHurwitz, 1008},
                                                        {IdentityId::kCscSquareExample, 1009},
                                                        {IdentityId::kCscCotExample, 1010}};
  bool ok = true;
  std::string detail;
  for (const auto& [id, seed] : ids) {
    GenerationBlock g = block(id, 50);
    g.q_max = 3;
    g.k_max = 3;
    auto cases = generate(seed, {g});
    Battery b = run_battery(cases, 1e-10);
    ok = ok && b.ok() && b.total == 50;
    if (!detail.empty()) detail += "; ";
    detail += std::string(identity_name(id)) + ": " + b.summary();
  }
  return {ok, detail + ", tol 1e-10"};
}

oracle::Root oroot(const RootOfUnity& x) { return {x.num(), x.den()}; }

Outcome harmonic_sums() {
  std::vector<RootOfUnity> pool{{0, 1}, {1, 2}, {1, 3}, {2, 3}, {1, 4}, {3, 4}, {1, 6}, {5, 6}};
  std::vector<std::vector<int>> shapes;
  for (int r = 1; r <= 3; ++r) {
    for (int w = r; w <= 6; ++w) {
      for (const auto& c : weak_compositions(w - r, r)) {
        std::vector<int> k;
        for (int v : c.parts) k.push_back(v + 1);
        shapes.push_back(k);
      }
    }
  }
  std::mt19937_64 rng(1011);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_real_distribution<double> are(-0.9, 0.9), aim(-0.5, 0.5);
  std::size_t total = 0, good = 0;
  double worst = 0.0;
  std::size_t variant = 0;
  for (const auto& k : shapes) {
    for (int rep = 0; rep < 2; ++rep, ++variant) {
      std::vector<RootOfUnity> x;
      std::vector<oracle::Root> ox;
      std::vector<HPComplex> a;
      std::vector<Complex> oa;
      for (std::size_t i = 0; i < k.size(); ++i) {
        x.push_back(pool[(variant + 3 * i) % pool.size()]);
        if (rep == 1) x.back() = pool[pick(rng)];
        ox.push_back(oroot(x.back()));
        a.emplace_back(rep == 1 ? are(rng) : 0.0, rep == 1 ? aim(rng) : 0.0);
        oa.push_back(a.back().value());
      }
      std::vector<std::int64_t> ns{0, 1, 2, 17};
      ns.push_back(k.size() == 3 ? 200 : (rep == 0 ? 200 : 120));
      for (std::int64_t n : ns) {
        HPComplex dp = rep == 1 ? mhs_hurwitz(n, k, x, a) : mhs(n, k, x);
        Complex ref = oracle::naive_mhs(n, k, ox, oa);
        double scale = std::max(1.0, abs_d(ref));
        double rel = abs_d(dp.value() - ref) / scale;
        worst = std::max(worst, rel);
        ++total;
        if (rel <= 1e-30) ++good;
      }
    }
  }
  return {good == total, std::to_string(good) + "/" + std::to_string(total) + " (shape, n) pairs over " +
                             std::to_string(shapes.size()) + " exponent shapes, n <= 200, max relative gap " +
                             fmt("%.2e", worst) + " (tol 1e-30)"};
}

Outcome expansions() {
  std::vector<ExpansionParams> sets;
  ExpansionParams p;
  p.n = 2;
  p.x = RootOfUnity(1, 4);
  p.k = {2};
  p.xs = {RootOfUnity(1, 2)};
  p.a0 = HPComplex::rational(1, 3);
  p.a = {HPComplex::rational(2, 5)};
  sets.push_back(p);
  ExpansionParams q;
  q.n = 1;
  q.x = RootOfUnity(1, 3);
  q.k = {1, 2};
  q.xs = {RootOfUnity(1, 6), RootOfUnity()};
  q.a0 = HPComplex(0.35, 0.2);
  q.a = {HPComplex(0.25, 0.1), HPComplex(0.6, -0.3)};
  sets.push_back(q);
  std::size_t total = 0, good = 0;
  double lo = 1e300, hi = 0.0;
  std::string fail;
  HPComplex delta(1e-2);
  for (auto id : {ExpansionId::kPhiAtInteger, ExpansionId::kUnitShiftTaylor, ExpansionId::kShiftedTaylor,
                  ExpansionId::kNegativeIntegerTaylor, ExpansionId::kPhiAtShiftedInteger}) {
    for (const auto& s : sets) {
      for (int M : {2, 3}) {
        ScalingReport r = expansion_scaling(id, s, M, delta);
        ++total;
        double norm = r.ratio / r.expected;
        lo = std::min(lo, norm);
        hi = std::max(hi, norm);
        bool ok = r.passed && r.expected == static_cast<double>(1 << (M + 1));
        if (ok) {
          ++good;
        } else if (fail.empty()) {
          fail = std::string(expansion_name(id)) + " M=" + std::to_string(M) + " ratio " + fmt("%.3g", r.ratio);
        }
      }
    }
  }
  std::size_t ptotal = 0, pgood = 0;
  for (int j : {1, 2}) {
    ExpansionParams s = sets[1];
    s.k = {2, 3};
    s.j = j;
    ScalingReport r = expansion_scaling(ExpansionId::kPrincipalPart, s, 0, delta);
    ++ptotal;
    if (r.passed) {
      ++pgood;
    } else if (fail.empty()) {
      fail = "L3_6_principal j=" + std::to_string(j) + " ratio " + fmt("%.3g", r.ratio);
    }
  }
  std::string d = std::to_string(good) + "/" + std::to_string(total) + " order checks, ratio / 2^(M+1) in [" +
                  fmt("%.3f", lo) + ", " + fmt("%.3f", hi) + "] (allowed [0.5, 2]); principal part " +
                  std::to_string(pgood) + "/" + std::to_string(ptotal);
  if (!fail.empty()) d += "; first failure: " + fail;
  return {good == total && pgood == ptotal, d};
}

Outcome constants() {
  prec_t prec = working_precision();
  Real pi = Real::pi(prec);
  struct Item {
    const char* name;
    HPComplex value;
    Complex closed;
    Complex brute;
  };
  Complex one(Real::with_prec(1.0, prec));
  Complex half(Real::rational(1, 2, prec));
  std::vector<Item> items;
  items.push_back({"li_single(2,1,1)", li_single(2, RootOfUnity(), HPComplex(1)), Complex(pi * pi / 6L),
                   oracle::nested_limit({{2, {0, 1}, one}}, 0).value});
  items.push_back({"mtv(2;1)", mtv({2}, {RootOfUnity()}), Complex(pi * pi / 2L),
                   oracle::nested_limit({{2, {0, 1}, half}}, 0).value});
  // T(2) = 2 sum 1/(2n - 1)^2 = (1/2) sum 1/(n - 1/2)^2
  items.push_back({"mtv_T(2)", mtv_T({2}), Complex(pi * pi / 4L),
                   oracle::nested_limit({{2, {0, 1}, half}}, 0).value / 2L});
  // phi(1; -1) = sum_k (-1)^k/(k + 1) = -sum_n (-1)^n / n
  items.push_back({"phi(1,-1)", phi(HPComplex(1), RootOfUnity::minus_one()), Complex(Real::ln2(prec)),
                   -oracle::nested_limit({{1, {1, 2}, one}}, 0).value});
  // With S = sum_n (-1)^n/(n - 1/2): phi(1/2; -1) = -S and phi(-1/2; -1) = S - 2, so Phi(1/2; -1) = -2 S.
  items.push_back({"Phi(1/2,-1)", phi_ext(HPComplex(0.5), RootOfUnity::minus_one()), Complex(pi),
                   oracle::nested_limit({{1, {1, 2}, half}}, 0).value * -2L});
  bool ok = true;
  std::string detail;
  for (const auto& it : items) {
    double dc = abs_d(it.value.value() - it.closed);
    double db = abs_d(it.value.value() - it.brute);
    ok = ok && dc <= 1e-12 && db <= 1e-12;
    if (!detail.empty()) detail += "; ";
    detail += std::string(it.name) + " " + fmt("%.1e", std::max(dc, db));
  }
  return {ok, detail + " (max gap to closed form and direct summation, tol 1e-12)"};
}

Outcome coefficient_shift() {
  std::size_t total = 0, good = 0;
  for (int q = 1; q <= 4; ++q) {
    for (int r = 1; r <= 3; ++r) {
      std::vector<int> kk(static_cast<std::size_t>(r), 1);
      for (;;) {
        std::vector<int> kext{q};
        kext.insert(kext.end(), kk.begin(), kk.end());
        for (int j = 1; j <= r; ++j) {
          for (int m = 0; m <= 4; ++m) {
            for (const auto& mv : weak_compositions_fixed_slot(m, r, j)) {
              for (int i = 1; i <= 4; ++i) {
                ++total;
                if (coeff_C(q, m, i, j, kext, mv) == coeff_D(q, m, i - 1, j, kext, mv)) ++good;
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
  return {good == total, std::to_string(good) + "/" + std::to_string(total) +
                             " tuples (q <= 4, k_l <= 3, r <= 3, 1 <= i <= 4, m <= 4), exact"};
}

}  // namespace

int main() {
  struct Criterion {
    int n;
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> all{
      {1, "thm2_1 reflection battery", reflection_battery},
      {2, "thm2_2 Hurwitz reflection battery", hurwitz_battery},
      {3, "cor2_3 t-value battery and a = 1/2 match", tvalue_battery},
      {4, "eq2_11 derivative closed form", derivative_closed_form},
      {5, "zhao_family alternating identity", alternating_family},
      {6, "depth-two corollaries and examples", depth_two_batteries},
      {7, "harmonic sums: prefix recursion vs nested loops", harmonic_sums},
      {8, "local expansion truncation orders", expansions},
      {9, "known constants", constants},
      {10, "coefficient shift C = D", coefficient_shift},
  };
  std::printf("precision %ld bits\n", static_cast<long>(working_precision()));
  bool all_ok = true;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all_ok = all_ok && o.passed;
    std::printf("%s criterion %2d  %s: %s [%.1f s]\n", o.passed ? "PASS" : "FAIL", c.n, c.name, o.detail.c_str(), dt);
    std::fflush(stdout);
  }
  std::printf("%s\n", all_ok ? "all criteria pass" : "some criteria FAIL");
  return all_ok ? 0 : 1;
}
