#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "czeta/hp_complex.hpp"
#include "czeta/root_of_unity.hpp"

namespace czeta {

struct EvalConfig {
  enum class Method {
    // Prefix DP to a moderate cutoff plus an asymptotic expansion of every
    // upper tail in 1/(N + b) (periodized Euler-Maclaurin, level by level).
    kAsymptoticTail,
    // Prefix DP to a large cutoff, partial sums sampled on period blocks and
    // Richardson-extrapolated in 1/M.
    kBlockRichardson,
  };

  Method method = Method::kAsymptoticTail;
  // 0 selects the method default: automatic for kAsymptoticTail, 200000 for
  // kBlockRichardson.
  std::int64_t cutoff = 0;
  int richardson_levels = 4;
  bool period_block = true;
  double target_err = 1e-14;
  // Order of the tail expansion; 0 selects it from the working precision.
  int tail_order = 0;
  bool use_cache = true;

  static constexpr std::int64_t kRichardsonDefaultCutoff = 200000;

  std::int64_t effective_cutoff() const;
  // Throws ConfigError when the settings are inconsistent for the roots involved.
  void validate(std::int64_t max_root_order) const;
};

// (k, x, c) describing sum_{0<n_1<...<n_r} prod x_i^{n_i} / (n_i + c_i - 1)^{k_i}.
class ZetaIndex {
 public:
  ZetaIndex(std::vector<int> k, std::vector<RootOfUnity> x, std::vector<HPComplex> c);
  ZetaIndex(std::vector<int> k, std::vector<RootOfUnity> x);  // all c_i = 1

  std::size_t depth() const { return k_.size(); }
  int weight() const;
  const std::vector<int>& k() const { return k_; }
  const std::vector<RootOfUnity>& x() const { return x_; }
  const std::vector<HPComplex>& c() const { return c_; }

  bool convergent() const;
  // No denominator n_i + c_i - 1 vanishes for the admissible n_i >= i.
  bool pole_free() const;

  ZetaIndex reversed() const;
  ZetaIndex inverted_x() const;

  std::string to_string() const;

 private:
  std::vector<int> k_;
  std::vector<RootOfUnity> x_;
  std::vector<HPComplex> c_;
};

// One level of a generalized nested sum: the factor x^n * sum_t w_t (n + c_t - 1)^(-k_t).
struct SeriesTerm {
  HPComplex weight;
  int k;
  HPComplex c;
};

struct SeriesLevel {
  RootOfUnity x;
  std::vector<SeriesTerm> terms;
};

// sum_{0<n_1<...<n_r} prod_j f_j(n_j) for levels f_1..f_r.
HPComplex nested_sum(const std::vector<SeriesLevel>& levels, const EvalConfig& cfg = {});

// sum_{k>=0} x^k / (k + s).
HPComplex phi(const HPComplex& s, const RootOfUnity& x, const EvalConfig& cfg = {});
// Same for a general complex |x| <= 1, x != 1.
HPComplex phi(const HPComplex& s, const HPComplex& x, const EvalConfig& cfg = {});
// phi(s; x) - phi(-s; 1/x) - 1/s, paired termwise (so it is defined at x = 1).
HPComplex phi_ext(const HPComplex& s, const RootOfUnity& x, const EvalConfig& cfg = {});

HPComplex li_single(int k, const RootOfUnity& x, const HPComplex& c, const EvalConfig& cfg = {});
HPComplex cmhzv(const ZetaIndex& idx, const EvalConfig& cfg = {});
HPComplex cmzv(const std::vector<int>& k, const std::vector<RootOfUnity>& x,
               const EvalConfig& cfg = {});
// Multiple t-values: all c_i = 1/2.
HPComplex mtv(const std::vector<int>& k, const std::vector<RootOfUnity>& x,
              const EvalConfig& cfg = {});
// 2^r sum_{0<n_1<...<n_r} prod (2 n_i - i)^(-k_i).
HPComplex mtv_T(const std::vector<int>& k, const EvalConfig& cfg = {});

// Truncated sums over 0 < n_1 < ... < n_r <= n.
HPComplex mhs(std::int64_t n, const std::vector<int>& k, const std::vector<RootOfUnity>& x);
// Same with denominators (n_i + a_i)^(k_i).
HPComplex mhs_hurwitz(std::int64_t n, const std::vector<int>& k,
                      const std::vector<RootOfUnity>& x, const std::vector<HPComplex>& a);

struct CacheStats {
  std::size_t entries = 0;
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
};
CacheStats series_cache_stats();
void clear_series_cache();

}  // namespace czeta
