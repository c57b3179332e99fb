#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "czeta/series.hpp"
#include "czeta/symmetry.hpp"

namespace czeta::harness {

// Rectangle in C that Hurwitz parameters are drawn from.
struct ParamRegion {
  double re_min = 0.1;
  double re_max = 0.9;
  double im_max = 1.0;
  // Minimum distance of Re(a) from the integers.
  double min_integer_distance = 0.1;
};

// Random draws of one identity's cases.
struct GenerationBlock {
  sym::IdentityId id = sym::IdentityId::kReflection;
  int count = 0;             // number of shapes drawn
  int params_per_shape = 1;  // Hurwitz parameter tuples per shape
  int depth_min = 1;         // r (extra indices beyond q for the reflections)
  int depth_max = 2;
  int q_max = 3;
  int k_max = 3;
  int weight_cap = 7;  // q + |k| for the reflections, q + k at depth two
  std::vector<int> root_orders{1, 2, 3, 4, 6};
  ParamRegion region;
  int m_max = 5;  // eq2_11
  int l_max = 2;  // zhao_family
  bool distinct = true;
};

struct SuiteSpec {
  std::uint64_t seed = 0;
  double tolerance = 1e-10;
  std::vector<sym::IdentityCase> cases;
  std::vector<GenerationBlock> generate;
  EvalConfig eval;
  std::optional<prec_t> precision_bits;
  int workers = 0;  // 0: hardware concurrency

  // FNV-1a over the canonical JSON form, as 16 hex digits.
  std::string hash() const;
};

// Parses a TOML suite description. Throws ConfigError / ParseError.
SuiteSpec parse_suite_toml(const std::string& text);
SuiteSpec load_suite_file(const std::string& path);

// Explicit cases followed by the generated ones; deterministic in spec.seed.
// Throws GenerationError naming the constraint that 10^4 consecutive draws violated.
std::vector<sym::IdentityCase> generate_cases(const SuiteSpec& spec);

struct Summary {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t errors = 0;  // failures caused by an exception
};

struct SuiteReport {
  std::string spec_hash;
  std::uint64_t seed = 0;
  prec_t precision_bits = 0;
  std::vector<sym::ResidualReport> cases;
  Summary summary;
  double wall_time = 0.0;

  bool passed() const { return summary.failed == 0; }
};

struct RunOptions {
  double tolerance = 1e-10;
  int workers = 0;
  prec_t precision_bits = 0;  // 0: current working precision
};

// Evaluates every case; a throwing case is recorded as a failure.
SuiteReport run_suite(const std::vector<sym::IdentityCase>& cases, const EvalConfig& cfg,
                      const RunOptions& opts = {});
// generate_cases + run_suite with the suite's own settings.
SuiteReport run_suite(const SuiteSpec& spec);

// JSON forms. Reports carry "schema": 1; values are {re, im, err, prec_bits}
// with re/im as round-trip decimal strings.
std::string report_to_json(const SuiteReport& report, int indent = 2);
SuiteReport report_from_json(const std::string& text);

std::string value_to_json(const HPComplex& v);
std::string case_to_json(const sym::IdentityCase& c);
sym::IdentityCase case_from_json(const std::string& text);
std::string residual_report_to_json(const sym::ResidualReport& r);

// Command-line entry: subcommands eval, check, suite, expand. Returns 0 on
// success or pass, 1 on identity failure, 2 on usage / config / input errors.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Parameter text: "0.3", "1/3", "0.3+0.25i", "-0.2i".
HPComplex parse_param(const std::string& text);

}  // namespace czeta::harness
