#include "msc/rational.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "msc/errors.hpp"

namespace msc {

namespace {

using boost::multiprecision::cpp_int;

bool is_digit(char c) { return c >= '0' && c <= '9'; }

cpp_int pow10(unsigned exponent) {
  cpp_int result = 1;
  for (unsigned k = 0; k < exponent; ++k) result *= 10;
  return result;
}

}  // namespace

bool is_decimal_literal(std::string_view text) {
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
  std::size_t int_digits = 0;
  while (pos < text.size() && is_digit(text[pos])) {
    ++pos;
    ++int_digits;
  }
  std::size_t frac_digits = 0;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && is_digit(text[pos])) {
      ++pos;
      ++frac_digits;
    }
  }
  if (int_digits + frac_digits == 0) return false;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    std::size_t exp_digits = 0;
    while (pos < text.size() && is_digit(text[pos])) {
      ++pos;
      ++exp_digits;
    }
    if (exp_digits == 0 || exp_digits > 4) return false;
  }
  return pos == text.size();
}

Rational parse_decimal(std::string_view text) {
  if (!is_decimal_literal(text)) {
    throw DomainError("not a decimal literal: '" + std::string(text) + "'");
  }
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '-' || text[pos] == '+') {
    negative = text[pos] == '-';
    ++pos;
  }
  cpp_int mantissa = 0;
  int scale = 0;
  while (pos < text.size() && is_digit(text[pos])) {
    mantissa = mantissa * 10 + (text[pos] - '0');
    ++pos;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && is_digit(text[pos])) {
      mantissa = mantissa * 10 + (text[pos] - '0');
      --scale;
      ++pos;
    }
  }
  if (pos < text.size()) {
    ++pos;  // 'e' or 'E'
    int exponent = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos + (text[pos] == '+' ? 1 : 0),
                                     text.data() + text.size(), exponent);
    (void)ptr;
    if (ec != std::errc{}) throw DomainError("bad exponent in '" + std::string(text) + "'");
    scale += exponent;
  }
  Rational value = scale >= 0 ? Rational(mantissa * pow10(static_cast<unsigned>(scale)))
                              : Rational(mantissa, pow10(static_cast<unsigned>(-scale)));
  return negative ? Rational(-value) : value;
}

Rational exact_from_double(double value) {
  if (!std::isfinite(value)) throw DomainError("non-finite value has no exact rational");
  if (value == 0.0) return Rational(0);
  int exponent = 0;
  double fraction = std::frexp(value, &exponent);  // value = fraction * 2^exponent
  // 53 mantissa bits make the scaled fraction an exact integer.
  double scaled = std::ldexp(fraction, 53);
  cpp_int mantissa = static_cast<long long>(scaled);
  exponent -= 53;
  if (exponent >= 0) return Rational(mantissa << exponent);
  cpp_int denominator = cpp_int(1) << (-exponent);
  return Rational(mantissa, denominator);
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

std::string format_double(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc{}) throw DomainError("cannot format value");
  return std::string(buffer, ptr);
}

}  // namespace msc
