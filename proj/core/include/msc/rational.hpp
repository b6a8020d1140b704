#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace msc {

using Rational = boost::multiprecision::cpp_rational;

/// Parses a decimal literal ("0.28", "-1.5e-3", "1") into the exact rational it denotes.
/// Throws DomainError on anything that is not a plain decimal number.
Rational parse_decimal(std::string_view text);

/// True if `text` is a well-formed decimal literal accepted by parse_decimal.
bool is_decimal_literal(std::string_view text);

/// The exact value of a finite double (every finite binary64 is a dyadic rational).
Rational exact_from_double(double value);

double to_double(const Rational& value);

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double value);

}  // namespace msc
