#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace rci {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q" (q > 0) or a bare integer "p". The result is gcd-reduced.
/// Throws InputError on malformed text or q <= 0.
Rational parse_rational(const std::string& text);

/// Canonical "p/q" form, always with an explicit positive denominator.
std::string fraction_string(const Rational& value);

/// Decimal approximation for display only; never used in decision logic.
std::string decimal_string(const Rational& value, int significant_digits = 6);

} // namespace rci
