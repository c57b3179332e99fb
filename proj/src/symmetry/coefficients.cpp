#include <numeric>

#include "czeta/errors.hpp"
#include "czeta/symmetry.hpp"

namespace czeta::sym {

namespace {

std::int64_t product_except(const std::vector<int>& k, const Composition& m, std::size_t skip) {
  std::int64_t v = 1;
  for (std::size_t l = 0; l < k.size(); ++l) {
    if (l == skip) continue;
    v *= binomial(m.parts[l] + k[l] - 1, k[l] - 1);
    if (v == 0) return 0;
  }
  return v;
}

std::int64_t coeff_CD(int q, int m, int i, int j, const std::vector<int>& k_ext, const Composition& mvec,
                      int drop) {
  if (k_ext.empty() || k_ext[0] != q) throw PreconditionError("k_ext must start with k_0 = q");
  std::size_t r = k_ext.size() - 1;
  if (mvec.size() != r) throw PreconditionError("mvec must have r parts");
  if (j < 1 || static_cast<std::size_t>(j) > r) throw PreconditionError("slot j out of range 1..r");
  std::vector<int> k(k_ext.begin() + 1, k_ext.end());
  int sign_exp = 0;
  for (int l = 0; l < j; ++l) sign_exp += k_ext[static_cast<std::size_t>(l)];
  for (std::size_t l = static_cast<std::size_t>(j); l < r; ++l) sign_exp += mvec.parts[l];
  std::int64_t inner = binomial(q + k[static_cast<std::size_t>(j - 1)] - m - i - 1 - drop, q - 1);
  std::int64_t v = inner * product_except(k, mvec, static_cast<std::size_t>(j - 1));
  return (sign_exp % 2 == 0) ? v : -v;
}

}  // namespace

std::int64_t coeff_B(const std::vector<int>& k, const Composition& m) {
  if (k.size() != m.size()) throw PreconditionError("coeff_B: k and m lengths differ");
  int total = std::accumulate(m.parts.begin(), m.parts.end(), 0);
  std::int64_t v = product_except(k, m, k.size());
  return (total % 2 == 0) ? v : -v;
}

std::int64_t coeff_C(int q, int m, int i, int j, const std::vector<int>& k_ext, const Composition& mvec) {
  return coeff_CD(q, m, i, j, k_ext, mvec, 0);
}

std::int64_t coeff_D(int q, int m, int i, int j, const std::vector<int>& k_ext, const Composition& mvec) {
  return coeff_CD(q, m, i, j, k_ext, mvec, 1);
}

}  // namespace czeta::sym
