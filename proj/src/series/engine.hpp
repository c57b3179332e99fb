#pragma once

#include <cstdint>
#include <vector>

#include "czeta/series.hpp"

namespace czeta::detail {

// Result of one engine run, with the sizes it chose.
struct EngineResult {
  Complex value;
  double err = 0.0;
  std::int64_t cutoff = 0;
  int tail_order = 0;
};

// Evaluates the generalized nested sum. Levels must already be checked for
// convergence; pole checks happen here.
EngineResult evaluate_levels(const std::vector<SeriesLevel>& levels, const EvalConfig& cfg);

// sum_{n>=1} x^n * sum_t w_t (n + c_t - 1)^(-k_t) for a general complex phase |x| <= 1, x != 1.
EngineResult evaluate_general_phase(const Complex& x, const std::vector<SeriesTerm>& terms,
                                    const EvalConfig& cfg);

// DP prefix sum over 0 < n_1 < ... < n_r <= n (no tail).
Complex prefix_sum(const std::vector<SeriesLevel>& levels, std::int64_t n);

// Bits of accuracy the tail expansion aims for at working precision.
int tail_goal_bits();

}  // namespace czeta::detail
