#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace itlab {

using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

/// Parses "p/q", an integer, or a finite decimal such as "0.52" or "-1.5e-2".
/// Throws ParseError on anything else (including a zero denominator).
Rational parse_rational(std::string_view text);

Integer floor_of(const Rational& x);
Integer ceil_of(const Rational& x);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& x);

/// Decimal rendering rounded toward zero to `digits` places.
std::string to_decimal(const Rational& x, int digits = 6);

inline Rational make_rational(long long num, long long den = 1) { return Rational(num) / Rational(den); }

} // namespace itlab
