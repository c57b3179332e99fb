#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "czeta/complex.hpp"

namespace czeta {

// x = exp(2 pi i num/den), stored as a reduced fraction in [0, 1).
class RootOfUnity {
 public:
  RootOfUnity() = default;  // 1
  RootOfUnity(std::int64_t num, std::int64_t den);

  static RootOfUnity one() { return RootOfUnity(); }
  static RootOfUnity minus_one() { return RootOfUnity(1, 2); }
  // Accepts "p/q" and the shorthand integers "0" / "1" (both meaning x = 1).
  static RootOfUnity parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  std::int64_t order() const { return den_; }
  bool is_one() const { return num_ == 0; }
  bool is_minus_one() const { return num_ == 1 && den_ == 2; }

  RootOfUnity inverse() const;
  RootOfUnity pow(std::int64_t n) const;
  RootOfUnity operator*(const RootOfUnity& o) const;
  RootOfUnity operator/(const RootOfUnity& o) const { return *this * o.inverse(); }
  bool operator==(const RootOfUnity& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RootOfUnity& o) const { return !(*this == o); }
  bool operator<(const RootOfUnity& o) const;

  // The angle as a fraction of a full turn, in [0, 1).
  double turn() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  // 2 pi num/den in [0, 2 pi) at working precision.
  Real angle() const;
  Complex value() const;
  // x^n as a complex number; cached per (den, precision) for small orders.
  Complex power_value(std::int64_t n) const;

  std::string to_string() const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// Product of a list of roots; the empty product is 1.
template <class It>
RootOfUnity product(It first, It last) {
  RootOfUnity acc;
  for (; first != last; ++first) acc = acc * *first;
  return acc;
}

}  // namespace czeta
