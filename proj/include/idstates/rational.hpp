#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace idstates {

using Rational = mpq_class;
using BigInt = mpz_class;

/// "num/den" in lowest terms, or plain decimal when the value is an integer.
std::string to_string(const Rational& value);

/// Parses "a/b", an integer, or a decimal literal (optional sign, fraction
/// and exponent) into an exact rational. Throws InputError on anything else.
Rational parse_rational(std::string_view text);

/// True when `text` has the form "a/b".
bool is_fraction_literal(std::string_view text);

/// True for "a/b" or a plain integer.
bool is_exact_literal(std::string_view text);

/// Conversions between the two numeric modes. Templates over the scalar type
/// use these to stay agnostic of Rational vs double.
inline double to_double(const Rational& value) { return value.get_d(); }
inline double to_double(double value) { return value; }

template <class Scalar>
Scalar from_integer(const BigInt& value);

template <>
inline Rational from_integer<Rational>(const BigInt& value) {
  return Rational(value);
}

template <>
inline double from_integer<double>(const BigInt& value) {
  return value.get_d();
}

template <class Scalar>
Scalar from_ratio(long numerator, long denominator);

template <>
inline Rational from_ratio<Rational>(long numerator, long denominator) {
  Rational r(numerator, denominator);
  r.canonicalize();
  return r;
}

template <>
inline double from_ratio<double>(long numerator, long denominator) {
  return static_cast<double>(numerator) / static_cast<double>(denominator);
}

/// Float output: 12 significant digits.
std::string format_double(double value);

}  // namespace idstates
