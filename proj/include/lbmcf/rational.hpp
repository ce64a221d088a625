#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>

#include "lbmcf/io.hpp"
#include "lbmcf/types.hpp"

namespace lbmcf {

// Arbitrary-precision rational, always kept in canonical form by GMP.
using Rational = mpq_class;

// Exact value of the shortest decimal representation of `value`. For inputs
// read from decimal text this recovers the number as written, not its binary
// approximation.
inline Rational decimal_to_rational(double value) {
  if (!std::isfinite(value)) throw ParameterError("cannot convert a non-finite value to a rational");
  const std::string text = format_double(value);
  std::string digits;
  long exponent = 0;
  bool negative = false;
  bool after_point = false;
  std::size_t i = 0;
  if (i < text.size() && text[i] == '-') {
    negative = true;
    ++i;
  }
  for (; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '.') {
      after_point = true;
    } else if (ch == 'e' || ch == 'E') {
      exponent += std::stol(text.substr(i + 1));
      break;
    } else {
      digits.push_back(ch);
      if (after_point) --exponent;
    }
  }
  mpz_class mantissa(digits.empty() ? std::string("0") : digits, 10);
  if (negative) mantissa = -mantissa;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  Rational result = exponent >= 0 ? Rational(mantissa * scale) : Rational(mantissa, scale);
  result.canonicalize();
  return result;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace lbmcf
