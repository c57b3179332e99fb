#include "czeta/root_of_unity.hpp"

#include <charconv>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <vector>

#include "czeta/errors.hpp"

namespace czeta {

namespace {

constexpr std::int64_t kTableLimit = 4096;

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ParseError("malformed root of unity '" + std::string(whole) + "', expected p/q");
  }
  return v;
}

using Table = std::vector<Complex>;

std::shared_ptr<const Table> table_for(std::int64_t den, prec_t prec) {
  static std::mutex mu;
  static std::map<std::pair<std::int64_t, prec_t>, std::shared_ptr<const Table>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(den, prec);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto t = std::make_shared<Table>();
  t->reserve(static_cast<std::size_t>(den));
  PrecisionScope scope(prec);
  Real two_pi = Real::pi(prec) * 2L;
  for (std::int64_t j = 0; j < den; ++j) {
    t->push_back(expi(two_pi * Real::rational(j, den, prec)));
  }
  cache.emplace(key, t);
  return t;
}

}  // namespace

RootOfUnity::RootOfUnity(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw ParseError("root of unity needs a positive denominator");
  num = mod(num, den);
  std::int64_t g = std::gcd(num, den);
  if (num == 0) {
    num_ = 0;
    den_ = 1;
  } else {
    num_ = num / g;
    den_ = den / g;
  }
}

RootOfUnity RootOfUnity::parse(std::string_view text) {
  while (!text.empty() && (text.front() == ' ')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ')) text.remove_suffix(1);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    std::int64_t v = parse_int(text, text);
    if (v == 0 || v == 1) return RootOfUnity();
    throw ParseError("malformed root of unity '" + std::string(text) + "', expected p/q");
  }
  std::int64_t p = parse_int(text.substr(0, slash), text);
  std::int64_t q = parse_int(text.substr(slash + 1), text);
  if (q <= 0) throw ParseError("root of unity '" + std::string(text) + "' needs q > 0");
  return RootOfUnity(p, q);
}

RootOfUnity RootOfUnity::inverse() const { return RootOfUnity(-num_, den_); }

RootOfUnity RootOfUnity::pow(std::int64_t n) const {
  __int128 e = static_cast<__int128>(num_) * (n % den_);
  return RootOfUnity(static_cast<std::int64_t>(e % den_), den_);
}

RootOfUnity RootOfUnity::operator*(const RootOfUnity& o) const {
  std::int64_t l = std::lcm(den_, o.den_);
  __int128 n = static_cast<__int128>(num_) * (l / den_) + static_cast<__int128>(o.num_) * (l / o.den_);
  return RootOfUnity(static_cast<std::int64_t>(n % l), l);
}

bool RootOfUnity::operator<(const RootOfUnity& o) const {
  return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
}

Real RootOfUnity::angle() const {
  prec_t p = working_precision();
  return Real::pi(p) * Real::rational(2 * num_, den_, p);
}

Complex RootOfUnity::value() const { return power_value(1); }

Complex RootOfUnity::power_value(std::int64_t n) const {
  prec_t p = working_precision();
  std::int64_t e = static_cast<std::int64_t>((static_cast<__int128>(num_) * mod(n, den_)) % den_);
  if (e == 0) return Complex(Real::with_prec(1.0, p), Real::zero(p));
  if (den_ <= kTableLimit) return (*table_for(den_, p))[static_cast<std::size_t>(e)];
  return expi(Real::pi(p) * Real::rational(2 * e, den_, p));
}

std::string RootOfUnity::to_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace czeta
