#ifndef MOMENTBC_NUMERIC_HPP
#define MOMENTBC_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <type_traits>

#include "momentbc/error.hpp"

namespace momentbc {

// Exact scalar backend: arbitrary-precision rationals.  All operator assembly
// is templated over the scalar type, so the same formulas run in double and in
// exact arithmetic.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool is_exact = false;
  static double from_double(double x) { return x; }
  static double to_double(double x) { return x; }
  static double from_int(long long n) { return static_cast<double>(n); }
  static bool finite(double x) { return std::isfinite(x); }
  static const char* name() { return "f64"; }
};

template <>
struct scalar_traits<long double> {
  static constexpr bool is_exact = false;
  static long double from_double(double x) { return static_cast<long double>(x); }
  static double to_double(long double x) { return static_cast<double>(x); }
  static long double from_int(long long n) { return static_cast<long double>(n); }
  static bool finite(long double x) { return std::isfinite(x); }
  static const char* name() { return "f80"; }
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool is_exact = true;
  // double -> rational is exact (binary fractions are rational).
  static Rational from_double(double x) {
    if (!std::isfinite(x)) raise(ErrorCode::invalid_argument, "cannot convert non-finite value to rational");
    return Rational(x);
  }
  static double to_double(const Rational& x) { return x.template convert_to<double>(); }
  static Rational from_int(long long n) { return Rational(n); }
  static bool finite(const Rational&) { return true; }
  static const char* name() { return "rational"; }
};

template <class T>
double to_double(const T& x) {
  return scalar_traits<T>::to_double(x);
}

// Parse "p/q" or "p" with optional sign; q must be positive and nonzero.
// Whole-number and fraction forms are both accepted; whitespace is not.
inline Rational parse_rational(const std::string& text) {
  const auto bad = [&]() -> Rational {
    raise(ErrorCode::parse_error, "invalid rational literal '" + text + "'");
  };
  if (text.empty()) return bad();
  const auto slash = text.find('/');
  const auto is_int = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  try {
    if (slash == std::string::npos) {
      if (!is_int(text)) return bad();
      return Rational(BigInt(text));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) return bad();
    BigInt q(den);
    if (q <= 0) return bad();
    return Rational(BigInt(num), q);
  } catch (const std::exception&) {
    return bad();
  }
}

// Canonical "p/q" (or "p" for integers) rendering in lowest terms.
inline std::string format_rational(const Rational& x) {
  std::string s = numerator(x).str();
  if (denominator(x) != 1) {
    s += '/';
    s += denominator(x).str();
  }
  return s;
}

// Shortest-round-trip decimal rendering: every finite double formatted this
// way parses back to the identical bits, and the output is locale independent.
inline std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::scientific, 16);
  if (ec != std::errc()) raise(ErrorCode::invalid_argument, "cannot format non-finite value");
  return std::string(buf, ptr);
}

template <class T>
std::string format_scalar(const T& x) {
  if constexpr (scalar_traits<T>::is_exact)
    return format_rational(x);
  else
    return format_double(static_cast<double>(x));
}

// abs() usable from templated code for double, long double and Rational alike
// (boost provides abs via ADL; this wrapper keeps call sites uniform).
template <class T>
T abs_value(const T& x) {
  using std::abs;
  return abs(x);
}

}  // namespace momentbc

#endif  // MOMENTBC_NUMERIC_HPP
