#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

#include "satdl/errors.hpp"

namespace satdl {

// Exact rationals for metrics and regularization weights; averages of small
// integers, so 64-bit components are ample.
using Rational = boost::rational<std::int64_t>;

inline std::int64_t ceil_rational(const Rational& r) {
  std::int64_t q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() > 0) ++q;
  return q;
}

// Parses a plain decimal like "0.05", "1", or ".5" into an exact rational.
inline Rational parse_decimal(const std::string& text) {
  std::string s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = s[0] == '-';
    s = s.substr(1);
  }
  auto dot = s.find('.');
  std::string whole = dot == std::string::npos ? s : s.substr(0, dot);
  std::string frac = dot == std::string::npos ? "" : s.substr(dot + 1);
  if ((whole.empty() && frac.empty()) ||
      whole.find_first_not_of("0123456789") != std::string::npos ||
      frac.find_first_not_of("0123456789") != std::string::npos)
    throw Error("not a decimal number: '" + text + "'");
  std::int64_t num = whole.empty() ? 0 : std::stoll(whole);
  std::int64_t den = 1;
  for (char c : frac) {
    num = num * 10 + (c - '0');
    den *= 10;
  }
  Rational r(num, den);
  return negative ? -r : r;
}

// Note: heterogeneous ==/!= between boost::rational and plain integers is
// avoided throughout (under C++20 operator rewriting, boost 1.74's reversed
// operator== template calls itself); compare numerators or whole Rationals.
inline std::string to_decimal_string(const Rational& r, int digits = 6) {
  std::int64_t whole = r.numerator() / r.denominator();
  Rational frac = r - whole;
  if (frac.numerator() < 0) frac = -frac;
  std::string out = (r.numerator() < 0 && whole == 0 ? "-" : "") + std::to_string(whole);
  if (frac.numerator() == 0) return out;
  out += '.';
  for (int i = 0; i < digits && frac.numerator() != 0; ++i) {
    frac *= 10;
    std::int64_t d = frac.numerator() / frac.denominator();
    out += static_cast<char>('0' + d);
    frac -= d;
  }
  return out;
}

}  // namespace satdl
