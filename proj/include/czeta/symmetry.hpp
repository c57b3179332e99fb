#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "czeta/combinatorics.hpp"
#include "czeta/hp_complex.hpp"
#include "czeta/root_of_unity.hpp"
#include "czeta/series.hpp"

namespace czeta::sym {

// ---- coefficient families ----------------------------------------------------

// (-1)^|m| prod_l C(m_l + k_l - 1, k_l - 1).
std::int64_t coeff_B(const std::vector<int>& k, const Composition& m);

// k_ext = (k_0 = q, k_1, ..., k_r); mvec has r parts; j is 1-based.
// (-1)^(|k_{0,j-1}| + |m_{j+1,r}|) C(q + k_j - m - i - 1, q - 1) prod_{l != j} C(m_l + k_l - 1, k_l - 1).
std::int64_t coeff_C(int q, int m, int i, int j, const std::vector<int>& k_ext, const Composition& mvec);
// As coeff_C with inner binomial C(q + k_j - m - i - 2, q - 1).
std::int64_t coeff_D(int q, int m, int i, int j, const std::vector<int>& k_ext, const Composition& mvec);

// ---- bracket functions -------------------------------------------------------

// (-1)^j Li_j(1/x) + Li_j(x); -1 at j = 0 and 0 at (j, x) = (1, 1).
HPComplex sym_li_bracket(int j, const RootOfUnity& x, const EvalConfig& cfg = {});

// (-1)^j Li_{j+1}(1/x; 1-a) - x^{-1} Li_{j+1}(x; a) with j = jp1 - 1, parameters
// entering as denominators (n + c - 1). At x = 1, jp1 = 1 the two divergent
// series are paired termwise. Every value is cross-checked against the
// cotangent-jet closed form; disagreement raises ConsistencyError.
HPComplex hat_li(int jp1, const RootOfUnity& x, const HPComplex& a, const EvalConfig& cfg = {});
// (-1)^j t_{j+1}(1/x) - x^{-1} t_{j+1}(x).
HPComplex hat_ti(int jp1, const RootOfUnity& x, const EvalConfig& cfg = {});

// ---- identity cases ----------------------------------------------------------

enum class IdentityId {
  kReflection,            // thm2_1: cyclotomic MZV reflection with q = k_0
  kHurwitzReflection,     // thm2_2: the same with Hurwitz parameters a_0..a_r
  kTValueReflection,      // cor2_3: t-value version
  kDoubleReflection,      // cor4_1: depth two, roots x, y
  kDoubleParity,          // cor4_2: depth-two parity relation
  kDoubleParityAltSign,   // cor4_2_alt_sign: parity relation with sign (-1)^q on the last sum
  kDoubleHurwitz,         // cor5_1: depth-two Hurwitz reflection
  kCscSquareExample,      // ex5_2a
  kCscCotExample,         // ex5_2b
  kDerivativeClosedForm,  // eq2_11
  kAlternatingFamily,     // zhao_family
  kTValueRelation,        // T_relation
  kStuffle,               // stuffle_2
};

// Wire name used in configs, reports and the CLI (e.g. "thm2_1").
std::string_view identity_name(IdentityId id);
std::optional<IdentityId> identity_from_name(std::string_view name);
std::vector<IdentityId> all_identities();

// One instance of an identity. Field use per identity:
//   reflections: q, x0, k, x, a0, a
//   depth-two (cor4_*, cor5_1, stuffle_2): q, x0 = x, k = {k}, x = {y}, a0 = a, a = {b}
//   ex5_2a/b: x0 = x, a0 = a, a = {b}
//   eq2_11: m, x0, a0;  zhao_family: l;  T_relation: k
struct IdentityCase {
  IdentityId id = IdentityId::kReflection;
  int q = 1;
  RootOfUnity x0;
  std::vector<int> k;
  std::vector<RootOfUnity> x;
  HPComplex a0 = HPComplex(0.5);
  std::vector<HPComplex> a;
  int m = 0;
  int l = 1;
  std::string label;       // stable key inside a suite
  std::string provenance;  // "explicit" or "generated seed=<s> draw=<n>"

  std::string describe() const;
};

// Reason the case violates its identity's hypotheses, or nullopt if admissible.
std::optional<std::string> admissibility_violation(const IdentityCase& c);
inline bool admissible(const IdentityCase& c) { return !admissibility_violation(c).has_value(); }

struct ResidualReport {
  IdentityCase case_;
  HPComplex residual;
  double eval_err = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::chrono::duration<double> wall_time{0};
  std::string error;  // set when evaluation threw; the case then fails

  double magnitude() const { return residual.abs_d(); }
};

// Test hooks that deliberately break an identity.
struct DebugHooks {
  // Added to q inside the coefficient sums only, leaving the other terms alone.
  int q_shift_in_coefficient_sums = 0;
};

// LHS - RHS of the identity. Throws PreconditionError for inadmissible cases.
HPComplex residual(const IdentityCase& c, const EvalConfig& cfg = {}, const DebugHooks& hooks = {});

// Evaluates and grades: passed iff |residual| <= max(tolerance, 100 eval_err).
ResidualReport check(const IdentityCase& c, const EvalConfig& cfg = {}, double tolerance = 1e-10,
                     const DebugHooks& hooks = {});

// Named residuals, one per identity family.
ResidualReport residual_reflection(const IdentityCase& c, const EvalConfig& cfg = {}, double tol = 1e-10);
ResidualReport residual_hurwitz_reflection(const IdentityCase& c, const EvalConfig& cfg = {}, double tol = 1e-10);
ResidualReport residual_tvalue_reflection(const IdentityCase& c, const EvalConfig& cfg = {}, double tol = 1e-10);
struct DoubleParams {
  int q = 1;
  int k = 1;
  RootOfUnity x;
  RootOfUnity y;
  HPComplex a = HPComplex(0.5);
  HPComplex b = HPComplex(0.5);
};
ResidualReport residual_corollary(IdentityId id, const DoubleParams& p, const EvalConfig& cfg = {},
                                  double tol = 1e-10);
ResidualReport residual_derivative_closed_form(int m, const RootOfUnity& x, const HPComplex& a,
                                               const EvalConfig& cfg = {}, double tol = 1e-10);
ResidualReport residual_alternating_family(int l, const EvalConfig& cfg = {}, double tol = 1e-10);
ResidualReport residual_t_relation(const std::vector<int>& k, const EvalConfig& cfg = {}, double tol = 1e-10);

// ---- local expansions --------------------------------------------------------

enum class ExpansionId {
  kPhiAtInteger,         // L3_2: Phi(n + d; x) Laurent expansion
  kUnitShiftTaylor,      // L3_3: Li(x; 1 + s) Taylor series at s = 0
  kShiftedTaylor,        // L3_4: Li(x; 1 + a + s) at s = -a_0
  kNegativeIntegerTaylor,// L3_5: Li(x; 1 + a + s) at s = -n, with truncated sums
  kPrincipalPart,        // L3_6_principal: singular part at s = -n - a_j
  kPhiAtShiftedInteger,  // L3_7: Phi(-n - a + d; x) Taylor expansion
};

std::string_view expansion_name(ExpansionId id);
std::optional<ExpansionId> expansion_from_name(std::string_view name);
std::vector<ExpansionId> all_expansions();

// n, x for the Phi expansions (plus a0 for kPhiAtShiftedInteger); k, xs, a for
// the nested ones (a0 is the shift point of kShiftedTaylor; j is the singular
// slot of kPrincipalPart, 1-based).
struct ExpansionParams {
  int n = 1;
  RootOfUnity x;
  std::vector<int> k;
  std::vector<RootOfUnity> xs;
  HPComplex a0 = HPComplex(0.5);
  std::vector<HPComplex> a;
  int j = 1;
};

// LHS at the expansion point + delta minus the order-M truncated expansion.
// For kPrincipalPart: delta^{k_j} LHS minus the principal-part polynomial.
HPComplex expansion_residual(ExpansionId id, const ExpansionParams& p, int M, const HPComplex& delta,
                             const EvalConfig& cfg = {});

struct ScalingReport {
  HPComplex at_delta;
  HPComplex at_half;
  double ratio = 0.0;     // |r(delta)| / |r(delta/2)|
  double expected = 0.0;  // 2^(M+1), or 2^(k_j) for the principal part
  bool passed = false;    // ratio within [expected/2, 2 expected]
};

ScalingReport expansion_scaling(ExpansionId id, const ExpansionParams& p, int M, const HPComplex& delta,
                                const EvalConfig& cfg = {});

}  // namespace czeta::sym
