#include "netcomp/rational.hpp"

#include <cmath>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

namespace netcomp {

using boost::multiprecision::cpp_int;

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

namespace {

long double value_ld(const LogRatio& x) {
  return static_cast<long double>(x.coeff.numerator()) / x.coeff.denominator() *
         std::log(static_cast<long double>(x.arg)) / std::log(static_cast<long double>(x.base));
}

// Largest exponent with a perfect-power decomposition a = root^exp.
std::pair<std::uint64_t, unsigned> perfect_power(std::uint64_t a) {
  for (unsigned e = 63; e >= 2; --e) {
    const auto guess = static_cast<std::uint64_t>(std::llround(std::pow(static_cast<long double>(a), 1.0L / e)));
    for (std::uint64_t r = guess > 1 ? guess - 1 : 1; r <= guess + 1; ++r) {
      if (r < 2) continue;
      cpp_int p = 1;
      for (unsigned i = 0; i < e && p <= a; ++i) p *= r;
      if (p == a) return {r, e};
    }
  }
  return {a, 1};
}

// Compares x^ex against y^ey (x, y >= 2, exponents >= 0) with big integers
// when the operands stay below a size cap.
std::optional<std::strong_ordering> compare_powers(std::uint64_t x, cpp_int ex,
                                                   std::uint64_t y, cpp_int ey) {
  constexpr double kMaxBits = 1 << 20;
  const double bx = static_cast<double>(ex) * std::log2(static_cast<double>(x));
  const double by = static_cast<double>(ey) * std::log2(static_cast<double>(y));
  if (bx > kMaxBits || by > kMaxBits) return std::nullopt;
  const cpp_int lhs = boost::multiprecision::pow(cpp_int(x), static_cast<unsigned>(ex));
  const cpp_int rhs = boost::multiprecision::pow(cpp_int(y), static_cast<unsigned>(ey));
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::strong_ordering order_of(const Rational& a, const Rational& b) {
  if (a < b) return std::strong_ordering::less;
  if (b < a) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Comparison fallback(long double a, long double b) {
  if (a < b) return {std::strong_ordering::less, false};
  if (a > b) return {std::strong_ordering::greater, false};
  return {std::strong_ordering::equal, false};
}

}  // namespace

std::optional<Rational> exact_log(std::uint64_t a, std::uint64_t b) {
  if (a < 2 || b < 2) return std::nullopt;
  const auto [ra, ea] = perfect_power(a);
  const auto [rb, eb] = perfect_power(b);
  if (ra != rb) return std::nullopt;
  return Rational(ea, eb);
}

double LogRatio::value() const { return static_cast<double>(value_ld(*this)); }

std::optional<Rational> LogRatio::exact() const {
  if (coeff.numerator() == 0) return Rational(0);
  if (auto l = exact_log(arg, base)) return coeff * *l;
  return std::nullopt;
}

std::string LogRatio::to_string() const {
  if (auto e = exact()) return netcomp::to_string(*e);
  // coeff * log_base(arg) == coeff / log_arg(base)
  std::ostringstream out;
  out << coeff.numerator() << "/";
  if (coeff.denominator() != 1) out << "(" << coeff.denominator() << "*";
  out << "log_" << arg << "(" << base << ")";
  if (coeff.denominator() != 1) out << ")";
  return out.str();
}

Comparison compare(const Rational& a, const LogRatio& b) {
  if (auto e = b.exact()) return {order_of(a, *e), true};
  if (a.numerator() < 0) return {std::strong_ordering::less, true};
  // b is inexact, hence strictly positive.
  if (a.numerator() == 0) return {std::strong_ordering::less, true};
  // a vs c * ln(arg) / ln(base)  <=>  base^a vs arg^c
  const auto p = a.numerator(), q = a.denominator();
  const auto u = b.coeff.numerator(), v = b.coeff.denominator();
  if (auto ord = compare_powers(b.base, cpp_int(p) * v, b.arg, cpp_int(u) * q)) return {*ord, true};
  return fallback(static_cast<long double>(p) / q, value_ld(b));
}

Comparison compare(const LogRatio& a, const LogRatio& b) {
  if (auto ea = a.exact()) {
    return compare(*ea, b);
  }
  if (auto eb = b.exact()) {
    const Comparison c = compare(*eb, a);
    return {0 <=> c.order, c.exact};
  }
  const auto p1 = a.coeff.numerator(), q1 = a.coeff.denominator();
  const auto p2 = b.coeff.numerator(), q2 = b.coeff.denominator();
  if (a.base == b.base) {
    // c1 ln a1 vs c2 ln a2  <=>  a1^c1 vs a2^c2
    if (auto ord = compare_powers(a.arg, cpp_int(p1) * q2, b.arg, cpp_int(p2) * q1)) return {*ord, true};
  } else if (a.arg == b.arg) {
    // c1 / ln b1 vs c2 / ln b2  <=>  b2^c1 vs b1^c2
    if (auto ord = compare_powers(b.base, cpp_int(p1) * q2, a.base, cpp_int(p2) * q1)) return {*ord, true};
  }
  return fallback(value_ld(a), value_ld(b));
}

}  // namespace netcomp
