#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include <boost/rational.hpp>

namespace netcomp {

using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& r);
double to_double(const Rational& r);

// The real number coeff * log_base(arg), kept symbolic so that bounds such as
// 2 / log_2(3) can be compared exactly. arg, base >= 2 and coeff >= 0.
struct LogRatio {
  Rational coeff{0};
  std::uint64_t arg = 2;
  std::uint64_t base = 2;

  static LogRatio from_rational(const Rational& r) { return {r, 2, 2}; }

  double value() const;
  // Exact value when log_base(arg) is rational.
  std::optional<Rational> exact() const;
  // "2/log_2(3)" style rendering, or the rational when exact.
  std::string to_string() const;
};

// Three-way comparisons. The exact flag reports whether integer power
// comparison decided the result; otherwise the long double values were used.
struct Comparison {
  std::strong_ordering order = std::strong_ordering::equal;
  bool exact = true;
};

Comparison compare(const LogRatio& a, const LogRatio& b);
Comparison compare(const Rational& a, const LogRatio& b);

// log_b(a) as a rational when a and b are powers of a common integer.
std::optional<Rational> exact_log(std::uint64_t a, std::uint64_t b);

}  // namespace netcomp
