#pragma once

#include <stdexcept>
#include <string>

namespace czeta {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A denominator or parameter hits a pole (integer a, n + c - 1 = 0, ...).
class PoleError : public Error {
 public:
  using Error::Error;
};

// The requested series does not converge, e.g. (k_r, x_r) = (1, 1).
class DivergenceError : public Error {
 public:
  using Error::Error;
};

// An argument lies outside the operation's domain (x = 1 where x != 1 is required).
class DomainError : public Error {
 public:
  using Error::Error;
};

// The evaluation finished but its error bound exceeds the configured target.
class PrecisionError : public Error {
 public:
  PrecisionError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

// An identity case does not satisfy its theorem's hypotheses.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Two independent evaluation routes disagree beyond their combined error.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// Malformed text input: root strings, numbers, config files.
class ParseError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

}  // namespace czeta
