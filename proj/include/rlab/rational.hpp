#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "rlab/errors.hpp"

namespace rlab {

/// Arbitrary precision rational, always normalized with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(long long num, long long den = 1) {
  if (den == 0) throw InvalidArgument("zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

/// Always "num/den", including "0/1" and "3/1".
inline std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Accepts "a/b", integers, and finite decimals ("0.4", "-1.25").
inline Rational parse_rational(std::string_view s) {
  auto fail = [&]() -> Rational { throw ParseError("bad rational '" + std::string(s) + "'"); };
  if (s.empty()) return fail();
  auto parse_int = [&](std::string_view t) -> BigInt {
    std::size_t i = 0;
    bool neg = false;
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) {
      neg = t[0] == '-';
      i = 1;
    }
    if (i == t.size()) fail();
    BigInt v = 0;
    for (; i < t.size(); ++i) {
      if (t[i] < '0' || t[i] > '9') fail();
      v = v * 10 + (t[i] - '0');
    }
    return neg ? BigInt(-v) : v;
  };
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_int(s.substr(0, slash));
    BigInt den = parse_int(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
    return Rational(num, den);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string_view::npos) return fail();
    bool neg = !whole.empty() && whole[0] == '-';
    std::string digits(whole);
    if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    BigInt w = parse_int(digits);
    BigInt f = parse_int(frac);
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    Rational mag = Rational(abs(w)) + Rational(f, scale);
    return neg ? Rational(-mag) : mag;
  }
  return Rational(parse_int(s));
}

/// Smallest integer >= a/b for positive b.
inline long long ceil_div(long long a, long long b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

}  // namespace rlab
