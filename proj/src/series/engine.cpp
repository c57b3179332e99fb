#include "engine.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <tuple>

#include "czeta/errors.hpp"

namespace czeta::detail {

namespace {

constexpr double kKappa = 3.5;
constexpr double kTwoPi = 6.283185307179586;
constexpr std::int64_t kTableMax = 64;
constexpr std::int64_t kMaxCutoff = 50'000'000;

struct Term {
  Complex w;
  bool unit_weight = false;
  int k = 1;
  Complex shift;  // c - 1
  bool real_shift = false;
};

struct Level {
  RootOfUnity x;
  std::vector<Term> terms;
};

using Series = std::vector<Complex>;  // coefficient p multiplies u^(-p)

bool is_exact_real(const Complex& z) { return z.im.is_zero(); }

// Tail operator for one phase: beta_{p+j} += alpha_p * mat[p][j]; for the unit
// phase additionally beta_{p-1} += alpha_p * integral[p].
struct Kernel {
  bool unit = false;
  std::vector<std::vector<Complex>> mat;
  std::vector<Complex> integral;
};

// (-1)^j (p)_j for p, j <= P.
std::vector<std::vector<Real>> pochhammer_table(int P, prec_t prec) {
  std::vector<std::vector<Real>> t(static_cast<std::size_t>(P) + 1);
  for (int p = 0; p <= P; ++p) {
    auto& row = t[static_cast<std::size_t>(p)];
    row.reserve(static_cast<std::size_t>(P + 1));
    Real acc = Real::with_prec(1.0, prec);
    row.push_back(acc);
    for (int j = 1; j <= P; ++j) {
      acc *= static_cast<long>(-(p + j - 1));
      row.push_back(acc);
    }
  }
  return t;
}

// Coefficients of y e^t / (1 - y e^t), j = 0..P.
std::vector<Complex> boole_coefficients(const Complex& y, int P) {
  prec_t prec = y.prec();
  std::vector<Complex> num, den, out;
  Real fact = Real::with_prec(1.0, prec);
  for (int j = 0; j <= P; ++j) {
    if (j > 0) fact *= static_cast<long>(j);
    Complex yj = y / fact;
    num.push_back(yj);
    den.push_back(j == 0 ? Complex(1) - y : -yj);
  }
  Complex d0inv = inv(den[0]);
  for (int n = 0; n <= P; ++n) {
    Complex s = num[static_cast<std::size_t>(n)];
    for (int i = 0; i < n; ++i) {
      s -= out[static_cast<std::size_t>(i)] * den[static_cast<std::size_t>(n - i)];
    }
    out.push_back(s * d0inv);
  }
  return out;
}

// Coefficients g_j of e^t / ((1 - e^t)/t), j = 0..P+1; g_j multiplies D^(j-1).
std::vector<Real> euler_maclaurin_coefficients(int P, prec_t prec) {
  std::vector<Real> num, den, out;
  Real fact = Real::with_prec(1.0, prec);
  for (int j = 0; j <= P + 1; ++j) {
    if (j > 0) fact *= static_cast<long>(j);
    num.push_back(Real::with_prec(1.0, prec) / fact);
    den.push_back(-(Real::with_prec(1.0, prec) / (fact * static_cast<long>(j + 1))));
  }
  for (int n = 0; n <= P + 1; ++n) {
    Real s = num[static_cast<std::size_t>(n)];
    for (int i = 0; i < n; ++i) {
      s -= out[static_cast<std::size_t>(i)] * den[static_cast<std::size_t>(n - i)];
    }
    out.push_back(s / den[0]);
  }
  return out;
}

std::shared_ptr<const Kernel> build_kernel(const Complex* y, int P, prec_t prec) {
  auto poch = pochhammer_table(P, prec);
  auto k = std::make_shared<Kernel>();
  k->mat.resize(static_cast<std::size_t>(P) + 1);
  if (y == nullptr) {
    k->unit = true;
    auto g = euler_maclaurin_coefficients(P, prec);
    k->integral.resize(static_cast<std::size_t>(P) + 1, Complex::zero(prec));
    for (int p = 2; p <= P; ++p) {
      k->integral[static_cast<std::size_t>(p)] = Complex(g[0] / static_cast<long>(1 - p));
    }
    for (int p = 0; p <= P; ++p) {
      auto& row = k->mat[static_cast<std::size_t>(p)];
      for (int j = 0; p + j <= P; ++j) {
        row.emplace_back(g[static_cast<std::size_t>(j) + 1] *
                         poch[static_cast<std::size_t>(p)][static_cast<std::size_t>(j)]);
      }
    }
  } else {
    auto e = boole_coefficients(*y, P);
    for (int p = 0; p <= P; ++p) {
      auto& row = k->mat[static_cast<std::size_t>(p)];
      for (int j = 0; p + j <= P; ++j) {
        row.push_back(e[static_cast<std::size_t>(j)] *
                      poch[static_cast<std::size_t>(p)][static_cast<std::size_t>(j)]);
      }
    }
  }
  return k;
}

std::shared_ptr<const Kernel> kernel_for(const RootOfUnity& y, int P, prec_t prec) {
  static std::mutex mu;
  static std::map<std::tuple<std::int64_t, std::int64_t, int, prec_t>, std::shared_ptr<const Kernel>>
      cache;
  auto key = std::make_tuple(y.num(), y.den(), P, prec);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  std::shared_ptr<const Kernel> k;
  {
    PrecisionScope scope(prec);
    if (y.is_one()) {
      k = build_kernel(nullptr, P, prec);
    } else {
      Complex yv = y.value();
      k = build_kernel(&yv, P, prec);
    }
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, k).first->second;
}

// Applies the tail operator sum_{m>n} Y^m h(m) = Y^n beta(n + b).
Series apply_kernel(const Kernel& K, const Series& alpha, double alpha_scale) {
  int P = static_cast<int>(alpha.size()) - 1;
  prec_t prec = alpha[0].prec();
  Series beta(alpha.size(), Complex::zero(prec));
  if (K.unit && P >= 1 && !alpha[1].is_zero()) {
    if (abs_d(alpha[1]) > alpha_scale * std::ldexp(1.0, static_cast<int>(16 - prec))) {
      throw DivergenceError("nested sum diverges: a 1/n tail with unit phase");
    }
  }
  for (int p = 0; p <= P; ++p) {
    const Complex& a = alpha[static_cast<std::size_t>(p)];
    if (a.is_zero()) continue;
    if (K.unit && p >= 2) fma_into(beta[static_cast<std::size_t>(p - 1)], a, K.integral[static_cast<std::size_t>(p)]);
    if (K.unit && p < 2) continue;
    const auto& row = K.mat[static_cast<std::size_t>(p)];
    for (int j = 0; p + j <= P; ++j) {
      fma_into(beta[static_cast<std::size_t>(p + j)], a, row[static_cast<std::size_t>(j)]);
    }
  }
  return beta;
}

// (u + delta)^(-k) as a series in 1/u, times w, accumulated into h after multiplying by S.
void accumulate_shift_product(Series& h, const Term& t, const Complex& delta, const Series& S) {
  int P = static_cast<int>(h.size()) - 1;
  if (t.k > P) return;
  prec_t prec = h[0].prec();
  Series a;
  a.reserve(static_cast<std::size_t>(P - t.k) + 1);
  Complex c = t.unit_weight ? Complex(Real::with_prec(1.0, prec)) : t.w;
  Complex minus_delta = -delta;
  bool zero_delta = delta.is_zero();
  for (int i = 0; t.k + i <= P; ++i) {
    if (i > 0) {
      if (zero_delta) break;
      c *= minus_delta;
      c *= static_cast<long>(t.k + i - 1);
      c /= static_cast<long>(i);
    }
    a.push_back(c);
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (int q = 0; t.k + static_cast<int>(i) + q <= P; ++q) {
      const Complex& s = S[static_cast<std::size_t>(q)];
      if (s.is_zero()) continue;
      fma_into(h[static_cast<std::size_t>(t.k) + i + static_cast<std::size_t>(q)], a[i], s);
    }
  }
}

// sum_p beta_p w^p by Horner, plus a size estimate of the last retained terms.
Complex horner(const Series& beta, const Complex& w, double& last_terms) {
  int P = static_cast<int>(beta.size()) - 1;
  Complex acc = beta[static_cast<std::size_t>(P)];
  for (int p = P - 1; p >= 0; --p) {
    acc *= w;
    acc += beta[static_cast<std::size_t>(p)];
  }
  double wabs = abs_d(w);
  last_terms = 0.0;
  for (int p = std::max(0, P - 2); p <= P; ++p) {
    double v = abs_d(beta[static_cast<std::size_t>(p)]);
    if (v > 0) last_terms += v * std::pow(wabs, p);
  }
  return acc;
}

double rho_of(const RootOfUnity& y) {
  if (y.is_one()) return kTwoPi;
  double f = y.turn();
  return kTwoPi * std::min(f, 1.0 - f);
}

// Working state for the prefix DP; owns all temporaries.
class PrefixDP {
 public:
  PrefixDP(const std::vector<Level>& levels, prec_t prec)
      : levels_(levels), prec_(prec), d_(Real::zero(prec)), t_(Real::zero(prec)),
        zr_(Real::zero(prec)), zi_(Real::zero(prec)), nrm_(Real::zero(prec)),
        val_(Complex::zero(prec)), tmp_(Complex::zero(prec)), pw_(Complex::zero(prec)),
        z_(Complex::zero(prec)) {
    std::size_t r = levels.size();
    pref_.assign(r + 1, Complex::zero(prec));
    pref_[0] = Complex(Real::with_prec(1.0, prec), Real::zero(prec));
    tables_.resize(r);
    running_.resize(r, Complex::zero(prec));
    for (std::size_t j = 0; j < r; ++j) {
      const RootOfUnity& x = levels[j].x;
      if (!x.is_one() && !x.is_minus_one() && x.den() <= kTableMax) {
        PrecisionScope scope(prec);
        for (std::int64_t e = 0; e < x.den(); ++e) tables_[j].push_back(x.power_value(e));
      }
      running_[j] = Complex(Real::with_prec(1.0, prec), Real::zero(prec));
    }
  }

  // Advances every prefix from n-1 to n.
  void step(std::int64_t n) {
    std::size_t r = levels_.size();
    std::size_t top = static_cast<std::size_t>(std::min<std::int64_t>(n, static_cast<std::int64_t>(r)));
    for (std::size_t j = 0; j < r; ++j) advance_phase(j, n);
    for (std::size_t jj = top; jj >= 1; --jj) {
      std::size_t j = jj - 1;
      const Complex& below = pref_[j];
      if (below.is_zero()) continue;
      bool real_val = level_value(levels_[j], n);
      const RootOfUnity& x = levels_[j].x;
      if (x.is_one() || x.is_minus_one()) {
        bool neg = x.is_minus_one() && (n & 1);
        if (real_val) {
          if (neg) mpfr_neg(val_.re.raw(), val_.re.raw(), MPFR_RNDN);
          mpfr_mul(t_.raw(), val_.re.raw(), below.re.raw(), MPFR_RNDN);
          mpfr_add(pref_[jj].re.raw(), pref_[jj].re.raw(), t_.raw(), MPFR_RNDN);
          mpfr_mul(t_.raw(), val_.re.raw(), below.im.raw(), MPFR_RNDN);
          mpfr_add(pref_[jj].im.raw(), pref_[jj].im.raw(), t_.raw(), MPFR_RNDN);
        } else {
          if (neg) {
            mpfr_neg(val_.re.raw(), val_.re.raw(), MPFR_RNDN);
            mpfr_neg(val_.im.raw(), val_.im.raw(), MPFR_RNDN);
          }
          fma_into(pref_[jj], val_, below);
        }
      } else {
        const Complex& ph = phase(j, n);
        if (real_val) {
          mpfr_mul(tmp_.im.raw(), ph.im.raw(), val_.re.raw(), MPFR_RNDN);
          mpfr_mul(tmp_.re.raw(), ph.re.raw(), val_.re.raw(), MPFR_RNDN);
        } else {
          mul_into(tmp_, ph, val_);
        }
        fma_into(pref_[jj], tmp_, below);
      }
    }
  }

  const std::vector<Complex>& prefixes() const { return pref_; }

 private:
  void advance_phase(std::size_t j, std::int64_t n) {
    const RootOfUnity& x = levels_[j].x;
    if (x.is_one() || x.is_minus_one() || !tables_[j].empty()) return;
    if (n % 256 == 0) {
      PrecisionScope scope(prec_);
      running_[j] = x.power_value(n);
    } else {
      PrecisionScope scope(prec_);
      running_[j] *= x.value();
    }
  }

  const Complex& phase(std::size_t j, std::int64_t n) const {
    if (!tables_[j].empty()) {
      return tables_[j][static_cast<std::size_t>(n % levels_[j].x.den())];
    }
    return running_[j];
  }

  // val_ = sum_t w_t (n + shift_t)^(-k_t); returns true when val_ is real.
  bool level_value(const Level& lv, std::int64_t n) {
    bool real_val = true;
    mpfr_set_zero(val_.re.raw(), 1);
    mpfr_set_zero(val_.im.raw(), 1);
    for (const Term& t : lv.terms) {
      if (t.real_shift) {
        mpfr_add_si(d_.raw(), t.shift.re.raw(), static_cast<long>(n), MPFR_RNDN);
        mpfr_ui_div(d_.raw(), 1, d_.raw(), MPFR_RNDN);
        mpfr_set(t_.raw(), d_.raw(), MPFR_RNDN);
        for (int e = 1; e < t.k; ++e) mpfr_mul(t_.raw(), t_.raw(), d_.raw(), MPFR_RNDN);
        if (t.unit_weight) {
          mpfr_add(val_.re.raw(), val_.re.raw(), t_.raw(), MPFR_RNDN);
        } else {
          mpfr_mul(zr_.raw(), t.w.re.raw(), t_.raw(), MPFR_RNDN);
          mpfr_add(val_.re.raw(), val_.re.raw(), zr_.raw(), MPFR_RNDN);
          if (!t.w.im.is_zero()) {
            mpfr_mul(zr_.raw(), t.w.im.raw(), t_.raw(), MPFR_RNDN);
            mpfr_add(val_.im.raw(), val_.im.raw(), zr_.raw(), MPFR_RNDN);
            real_val = false;
          }
        }
      } else {
        real_val = false;
        mpfr_add_si(zr_.raw(), t.shift.re.raw(), static_cast<long>(n), MPFR_RNDN);
        mpfr_sqr(nrm_.raw(), zr_.raw(), MPFR_RNDN);
        mpfr_sqr(d_.raw(), t.shift.im.raw(), MPFR_RNDN);
        mpfr_add(nrm_.raw(), nrm_.raw(), d_.raw(), MPFR_RNDN);
        mpfr_div(z_.re.raw(), zr_.raw(), nrm_.raw(), MPFR_RNDN);
        mpfr_div(z_.im.raw(), t.shift.im.raw(), nrm_.raw(), MPFR_RNDN);
        mpfr_neg(z_.im.raw(), z_.im.raw(), MPFR_RNDN);
        mpfr_set(pw_.re.raw(), z_.re.raw(), MPFR_RNDN);
        mpfr_set(pw_.im.raw(), z_.im.raw(), MPFR_RNDN);
        for (int e = 1; e < t.k; ++e) mul_into(pw_, pw_, z_);
        if (t.unit_weight) {
          val_ += pw_;
        } else {
          fma_into(val_, t.w, pw_);
        }
      }
    }
    return real_val;
  }

  const std::vector<Level>& levels_;
  prec_t prec_;
  Real d_, t_, zr_, zi_, nrm_;
  Complex val_, tmp_, pw_, z_;
  std::vector<Complex> pref_;
  std::vector<std::vector<Complex>> tables_;
  std::vector<Complex> running_;
};

// Exact pole test: n + c - 1 = 0 for an integer n the level can reach
// (n_j >= j, and n_j <= last - (r - j) when the sum is truncated at last).
void check_poles(const std::vector<Level>& levels, std::int64_t last = INT64_MAX) {
  long r = static_cast<long>(levels.size());
  double tiny = std::ldexp(1.0, -40);
  for (std::size_t j = 0; j < levels.size(); ++j) {
    for (const Term& t : levels[j].terms) {
      double si = t.shift.im.to_double();
      if (std::fabs(si) > tiny) continue;
      Real nearest = round_nearest(t.shift.re);
      double gap = std::fabs((t.shift.re - nearest).to_double());
      long n = -nearest.to_long();
      long hi = last == INT64_MAX ? LONG_MAX : static_cast<long>(last) - (r - 1 - static_cast<long>(j));
      if (gap <= tiny && n >= static_cast<long>(j + 1) && n <= hi) {
        throw PoleError("denominator n + c - 1 vanishes at n = " + std::to_string(n) +
                        " (level " + std::to_string(j + 1) + ")");
      }
    }
  }
}

std::vector<Level> prepare(const std::vector<SeriesLevel>& levels, prec_t prec) {
  std::vector<Level> out;
  out.reserve(levels.size());
  for (const auto& lv : levels) {
    Level L;
    L.x = lv.x;
    for (const auto& st : lv.terms) {
      if (st.k < 1) throw DomainError("series exponents must be positive");
      Term t;
      t.w = st.weight.value();
      t.w.set_prec(prec);
      t.unit_weight = (t.w.re == 1.0) && t.w.im.is_zero();
      t.k = st.k;
      t.shift = st.c.value() - Complex(Real::with_prec(1.0, prec));
      t.shift.set_prec(prec);
      t.real_shift = is_exact_real(t.shift);
      L.terms.push_back(std::move(t));
    }
    if (L.terms.empty()) throw DomainError("series level without terms");
    out.push_back(std::move(L));
  }
  return out;
}

int default_tail_order(int goal_bits) { return goal_bits / 3 + 4; }

EngineResult asymptotic_tail(const std::vector<Level>& levels, const EvalConfig& cfg, prec_t prec) {
  std::size_t r = levels.size();
  int P = cfg.tail_order > 0 ? cfg.tail_order : default_tail_order(tail_goal_bits());

  // Expansion centre: mean shift, so every (u + delta)^(-k) expands with small delta.
  Complex b = Complex::zero(prec);
  long nterms = 0;
  for (const auto& L : levels) {
    for (const auto& t : L.terms) {
      b += t.shift;
      ++nterms;
    }
  }
  b /= nterms;
  double max_delta = 0.0;
  for (const auto& L : levels) {
    for (const auto& t : L.terms) max_delta = std::max(max_delta, abs_d(t.shift - b));
  }

  std::vector<RootOfUnity> Y(r);
  {
    RootOfUnity acc;
    for (std::size_t jj = r; jj >= 1; --jj) {
      acc = acc * levels[jj - 1].x;
      Y[jj - 1] = acc;
    }
  }
  double rho_min = kTwoPi;
  for (const auto& y : Y) rho_min = std::min(rho_min, rho_of(y));

  std::int64_t N = cfg.cutoff;
  if (N <= 0) {
    double need = std::max({kKappa * P / rho_min, 16.0 * max_delta, 20.0});
    N = static_cast<std::int64_t>(std::ceil(need + abs_d(b))) + static_cast<std::int64_t>(r);
  }
  if (N > kMaxCutoff) throw PrecisionError("required cutoff exceeds the engine limit", INFINITY);

  PrefixDP dp(levels, prec);
  for (std::int64_t n = 1; n <= N; ++n) dp.step(n);
  const auto& pref = dp.prefixes();

  Complex u = b + N;
  Complex w = inv(u);
  Series S(static_cast<std::size_t>(P) + 1, Complex::zero(prec));
  S[0] = Complex(Real::with_prec(1.0, prec));
  Complex total = pref[r];
  double err = 0.0;
  double mag = abs_d(total);
  for (std::size_t jj = r; jj >= 1; --jj) {
    const Level& L = levels[jj - 1];
    Series h(static_cast<std::size_t>(P) + 1, Complex::zero(prec));
    double scale = 0.0;
    for (const auto& t : L.terms) {
      accumulate_shift_product(h, t, t.shift - b, S);
      scale += abs_d(t.w);
    }
    auto K = kernel_for(Y[jj - 1], P, prec);
    S = apply_kernel(*K, h, scale);
    double last = 0.0;
    Complex R = horner(S, w, last);
    {
      PrecisionScope scope(prec);
      R *= Y[jj - 1].power_value(N);
    }
    const Complex& below = pref[jj - 1];
    double bmag = abs_d(below);
    fma_into(total, below, R);
    err += bmag * last;
    mag = std::max(mag, bmag * abs_d(R));
  }
  // Accumulated rounding of the DP and the tail assembly.
  err += mag * static_cast<double>(N * static_cast<std::int64_t>(r) + 4 * P * P) * unit_roundoff(prec);
  EngineResult res;
  res.value = std::move(total);
  res.err = err;
  res.cutoff = N;
  res.tail_order = P;
  return res;
}

EngineResult block_richardson(const std::vector<Level>& levels, const EvalConfig& cfg, prec_t prec) {
  std::size_t r = levels.size();
  std::int64_t period = 1;
  for (const auto& L : levels) period = std::lcm(period, L.x.den());
  int levels_R = cfg.richardson_levels;
  std::int64_t M = cfg.effective_cutoff();
  std::int64_t unit = cfg.period_block ? period << levels_R : (std::int64_t{1} << levels_R);
  M = (M / unit) * unit;
  if (M <= 0) throw ConfigError("cutoff too small for the requested Richardson levels");
  std::vector<std::int64_t> marks;
  for (int l = levels_R; l >= 0; --l) marks.push_back(M >> l);
  std::vector<Complex> samples(marks.size(), Complex::zero(prec));
  PrefixDP dp(levels, prec);
  std::size_t next = 0;
  for (std::int64_t n = 1; n <= M; ++n) {
    dp.step(n);
    if (next < marks.size() && n == marks[next]) samples[next++] = dp.prefixes()[r];
  }
  // samples are at M/2^L, ..., M/2, M; tableau row l uses cutoff M/2^l.
  int L = levels_R;
  std::vector<std::vector<Complex>> T(static_cast<std::size_t>(L) + 1);
  for (int l = 0; l <= L; ++l) T[static_cast<std::size_t>(l)].push_back(samples[static_cast<std::size_t>(L - l)]);
  for (int i = 1; i <= L; ++i) {
    long f = 1L << i;
    for (int l = 0; l + i <= L; ++l) {
      const Complex& a = T[static_cast<std::size_t>(l)][static_cast<std::size_t>(i - 1)];
      const Complex& c = T[static_cast<std::size_t>(l) + 1][static_cast<std::size_t>(i - 1)];
      T[static_cast<std::size_t>(l)].push_back((a * f - c) / (f - 1));
    }
  }
  EngineResult res;
  res.value = T[0][static_cast<std::size_t>(L)];
  double diff = L >= 1 ? abs_d(T[0][static_cast<std::size_t>(L)] - T[0][static_cast<std::size_t>(L - 1)])
                       : abs_d(samples.back() - samples.front());
  res.err = diff + abs_d(res.value) * static_cast<double>(M * static_cast<std::int64_t>(r)) * unit_roundoff(prec);
  res.cutoff = M;
  res.tail_order = 0;
  return res;
}

}  // namespace

int tail_goal_bits() {
  long p = static_cast<long>(working_precision());
  return static_cast<int>(std::clamp(p - 10L, 40L, 120L));
}

EngineResult evaluate_levels(const std::vector<SeriesLevel>& levels, const EvalConfig& cfg) {
  if (levels.empty()) {
    EngineResult res;
    res.value = Complex(Real::with_prec(1.0, working_precision()));
    return res;
  }
  prec_t prec = working_precision();
  auto prepared = prepare(levels, prec);
  check_poles(prepared);
  if (cfg.method == EvalConfig::Method::kBlockRichardson) {
    std::int64_t max_order = 1;
    for (const auto& L : prepared) max_order = std::max(max_order, L.x.den());
    cfg.validate(max_order);
    return block_richardson(prepared, cfg, prec);
  }
  return asymptotic_tail(prepared, cfg, prec);
}

Complex prefix_sum(const std::vector<SeriesLevel>& levels, std::int64_t n) {
  prec_t prec = working_precision();
  if (levels.empty()) return Complex(Real::with_prec(1.0, prec));
  auto prepared = prepare(levels, prec);
  check_poles(prepared, n);
  PrefixDP dp(prepared, prec);
  for (std::int64_t m = 1; m <= n; ++m) dp.step(m);
  return dp.prefixes().back();
}

EngineResult evaluate_general_phase(const Complex& x, const std::vector<SeriesTerm>& terms,
                                    const EvalConfig& cfg) {
  prec_t prec = working_precision();
  std::vector<SeriesLevel> one{SeriesLevel{RootOfUnity(), terms}};
  auto prepared = prepare(one, prec);
  check_poles(prepared);
  const auto& T = prepared[0].terms;
  int G = tail_goal_bits();
  double xabs = abs_d(x);
  if (xabs > 1.0 + 1e-15) throw DomainError("phi needs |x| <= 1");
  Complex lx = log(x);
  double rho = abs_d(lx);
  if (rho < 1e-12) throw DivergenceError("phi needs x != 1");

  Complex b = Complex::zero(prec);
  for (const auto& t : T) b += t.shift;
  b /= static_cast<long>(T.size());
  double max_delta = 0.0;
  for (const auto& t : T) max_delta = std::max(max_delta, abs_d(t.shift - b));

  int P = cfg.tail_order > 0 ? cfg.tail_order : default_tail_order(G);
  double decay = -std::log(xabs);
  std::int64_t direct_terms = decay > 0 ? static_cast<std::int64_t>(std::ceil((G + 8) * 0.6931471805599453 / decay)) : INT64_MAX;
  std::int64_t N = cfg.cutoff;
  bool use_tail = true;
  if (N <= 0) {
    double need = std::max({kKappa * P / rho, 16.0 * max_delta, 20.0});
    N = static_cast<std::int64_t>(std::ceil(need + abs_d(b))) + 1;
    if (direct_terms <= N) {
      N = direct_terms + static_cast<std::int64_t>(std::ceil(abs_d(b)));
      use_tail = false;
    }
  }
  if (N > kMaxCutoff) throw PrecisionError("phi: |x| too close to 1 for the engine", INFINITY);

  Complex total = Complex::zero(prec);
  Complex power = Complex(Real::with_prec(1.0, prec));
  Complex term = Complex::zero(prec);
  double mag = 0.0;
  for (std::int64_t n = 1; n <= N; ++n) {
    power *= x;
    Complex val = Complex::zero(prec);
    for (const auto& t : T) {
      Complex d = t.shift + n;
      val += t.w * pow(inv(d), t.k);
    }
    mul_into(term, power, val);
    total += term;
    mag = std::max(mag, abs_d(term));
  }
  double err = 0.0;
  if (use_tail) {
    Series h(static_cast<std::size_t>(P) + 1, Complex::zero(prec));
    Series S(static_cast<std::size_t>(P) + 1, Complex::zero(prec));
    S[0] = Complex(Real::with_prec(1.0, prec));
    for (const auto& t : T) accumulate_shift_product(h, t, t.shift - b, S);
    auto K = build_kernel(&x, P, prec);
    Series beta = apply_kernel(*K, h, 1.0);
    Complex u = b + N;
    double last = 0.0;
    Complex R = horner(beta, inv(u), last) * power;
    total += R;
    err += last * abs_d(power);
  } else {
    err += mag * std::pow(xabs, 1.0) * std::ldexp(1.0, -G);
  }
  err += std::max(mag, abs_d(total)) * static_cast<double>(N + 4 * P * P) * unit_roundoff(prec);
  EngineResult res;
  res.value = std::move(total);
  res.err = err;
  res.cutoff = N;
  res.tail_order = use_tail ? P : 0;
  return res;
}

}  // namespace czeta::detail
