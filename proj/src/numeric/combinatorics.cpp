#include "czeta/combinatorics.hpp"

#include <stdexcept>

#include "czeta/errors.hpp"

namespace czeta {

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  __int128 acc = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > static_cast<__int128>(INT64_MAX)) throw DomainError("binomial overflows int64");
  }
  return static_cast<std::int64_t>(acc);
}

std::vector<Composition> weak_compositions(int m, int r) {
  std::vector<Composition> out;
  if (m < 0) return out;
  for_each_weak_composition(m, r, [&](const Composition& c) { out.push_back(c); });
  return out;
}

std::vector<Composition> weak_compositions_fixed_slot(int m, int r, int j) {
  if (j < 1 || j > r) throw PreconditionError("fixed slot index out of range");
  std::vector<Composition> out;
  if (m < 0) return out;
  for_each_weak_composition(m, r - 1, [&](const Composition& c) {
    Composition full;
    full.total = m;
    full.parts.reserve(static_cast<std::size_t>(r));
    full.parts.insert(full.parts.end(), c.parts.begin(), c.parts.begin() + (j - 1));
    full.parts.push_back(0);
    full.parts.insert(full.parts.end(), c.parts.begin() + (j - 1), c.parts.end());
    out.push_back(std::move(full));
  });
  return out;
}

}  // namespace czeta
