#pragma once

#include <cstdint>
#include <vector>

namespace czeta {

// C(n, k); 0 unless 0 <= k <= n (so also 0 for negative n).
std::int64_t binomial(std::int64_t n, std::int64_t k);

struct Composition {
  std::vector<int> parts;
  int total = 0;

  std::size_t size() const { return parts.size(); }
  int operator[](std::size_t i) const { return parts[i]; }
  bool operator==(const Composition& o) const { return parts == o.parts; }
};

// All r-tuples of nonnegative integers summing to m, lexicographically.
std::vector<Composition> weak_compositions(int m, int r);

// Tuples with parts[j-1] = 0 (j is 1-based) and the other r-1 parts summing to m.
std::vector<Composition> weak_compositions_fixed_slot(int m, int r, int j);

// Visits the same sequence as weak_compositions without materializing it.
template <class F>
void for_each_weak_composition(int m, int r, F&& visit) {
  if (r <= 0) {
    if (m == 0) visit(Composition{});
    return;
  }
  Composition c;
  c.parts.assign(static_cast<std::size_t>(r), 0);
  c.parts.back() = m;
  c.total = m;
  for (;;) {
    visit(static_cast<const Composition&>(c));
    // Rightmost slot before the last whose suffix still carries mass.
    int tail = c.parts[static_cast<std::size_t>(r - 1)];
    int i = r - 2;
    while (i >= 0 && tail == 0) {
      tail += c.parts[static_cast<std::size_t>(i)];
      --i;
    }
    if (i < 0) return;
    c.parts[static_cast<std::size_t>(i)] += 1;
    for (int l = i + 1; l < r; ++l) c.parts[static_cast<std::size_t>(l)] = 0;
    c.parts[static_cast<std::size_t>(r - 1)] = tail - 1;
  }
}

}  // namespace czeta
