#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace netcomp {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (algebra specs, function specs, network and code files).
class ParseError : public Error {
 public:
  using Error::Error;
};

// An input is well-formed but violates a model invariant.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An exhaustive computation would exceed its configured budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t required,
                 std::uint64_t budget)
      : Error(what + " (needs " + std::to_string(required) + ", budget " +
              std::to_string(budget) + ")"),
        required_(required),
        budget_(budget) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

// Multiplies with saturation at UINT64_MAX; used for candidate-space sizes.
inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > UINT64_MAX / b) return UINT64_MAX;
  return a * b;
}

inline std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  if (base == 1 || exp == 0) return 1;
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    r = saturating_mul(r, base);
    if (r == UINT64_MAX) break;
  }
  return r;
}

}  // namespace netcomp
