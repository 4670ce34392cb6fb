#include "idstates/rational.hpp"

#include <cctype>
#include <cstdio>
#include <string>

#include "idstates/error.hpp"

namespace idstates {

std::string to_string(const Rational& value) { return value.get_str(); }

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string_view strip_sign(std::string_view s, bool& negative) {
  negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  return s;
}

[[noreturn]] void reject(std::string_view text) {
  throw InputError("not a number: '" + std::string(text) + "'");
}

}  // namespace

bool is_fraction_literal(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return false;
  bool negative = false;
  auto num = strip_sign(text.substr(0, slash), negative);
  return all_digits(num) && all_digits(text.substr(slash + 1));
}

bool is_exact_literal(std::string_view text) {
  if (is_fraction_literal(text)) return true;
  bool negative = false;
  return all_digits(strip_sign(text, negative));
}

Rational parse_rational(std::string_view text) {
  if (text.empty()) reject(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    if (!is_fraction_literal(text)) reject(text);
    bool negative = false;
    auto num = strip_sign(text.substr(0, slash), negative);
    BigInt n(std::string(num), 10);
    BigInt d(std::string(text.substr(slash + 1)), 10);
    if (d == 0) throw InputError("zero denominator: '" + std::string(text) + "'");
    Rational r(negative ? BigInt(-n) : n, d);
    r.canonicalize();
    return r;
  }

  bool negative = false;
  std::string_view body = strip_sign(text, negative);
  std::string_view mantissa = body;
  long exponent = 0;
  if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = body.substr(0, e);
    bool exp_negative = false;
    auto exp_digits = strip_sign(body.substr(e + 1), exp_negative);
    if (!all_digits(exp_digits) || exp_digits.size() > 6) reject(text);
    exponent = std::stol(std::string(exp_digits));
    if (exp_negative) exponent = -exponent;
  }
  std::string_view int_part = mantissa;
  std::string_view frac_part;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    int_part = mantissa.substr(0, dot);
    frac_part = mantissa.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) reject(text);
  if (!int_part.empty() && !all_digits(int_part)) reject(text);
  if (!frac_part.empty() && !all_digits(frac_part)) reject(text);

  BigInt digits(std::string(int_part) + std::string(frac_part) + "0", 10);
  digits /= 10;  // the appended "0" keeps an empty digit string parseable
  exponent -= static_cast<long>(frac_part.size());
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational r = exponent < 0 ? Rational(digits, scale) : Rational(digits * scale);
  r.canonicalize();
  if (negative) r = -r;
  return r;
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

}  // namespace idstates
