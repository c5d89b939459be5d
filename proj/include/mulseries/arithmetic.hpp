#pragma once

// Exact integer and rational arithmetic used throughout the library.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mulseries {

using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

inline Integer numerator(const Rational& x) { return boost::multiprecision::numerator(x); }
inline Integer denominator(const Rational& x) { return boost::multiprecision::denominator(x); }

inline bool is_integral(const Rational& x) { return denominator(x) == 1; }

/// Largest integer not exceeding x.
inline Integer floor(const Rational& x) {
  Integer num = numerator(x);
  Integer den = denominator(x);
  Integer q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) --q;
  return q;
}

inline Integer ceil(const Rational& x) { return -floor(-x); }

inline Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }
inline Integer lcm(const Integer& a, const Integer& b) { return boost::multiprecision::lcm(a, b); }

/// Non-negative remainder of a modulo m (m > 0).
inline Integer mod(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

/// Inverse of a modulo m; requires gcd(a, m) = 1.
inline Integer mod_inverse(const Integer& a, const Integer& m) {
  if (m == 1) return 0;
  Integer old_r = mod(a, m), r = m;
  Integer old_s = 1, s = 0;
  while (r != 0) {
    Integer q = old_r / r;
    Integer t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw std::domain_error("mod_inverse: arguments are not coprime");
  return mod(old_s, m);
}

inline std::size_t to_size(const Integer& x) { return x.convert_to<std::size_t>(); }

/// Renders as "num/den", or just "num" when integral.
inline std::string to_string(const Rational& x) {
  if (is_integral(x)) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

inline std::string to_string(const Integer& x) { return x.str(); }

namespace detail {
inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}
}  // namespace detail

/// Parses "num/den" or an integer literal. Floating-point literals are rejected.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] { return std::invalid_argument("not an exact rational: '" + std::string(text) + "'"); };
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!detail::all_digits(num) || !detail::all_digits(den)) throw fail();
  Integer n{std::string(num)}, d{std::string(den)};
  if (d == 0) throw fail();
  Rational r(n, d);
  return negative ? Rational(-r) : r;
}

}  // namespace mulseries
