#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace gaborlab {

using BigInt = boost::multiprecision::cpp_int;
// Exact rational, always kept in lowest terms with a positive denominator.
using Scalar = boost::multiprecision::cpp_rational;

// Accepts "p", "p/q" and decimals with at most 12 fractional digits
// ("0.5" -> 1/2). Anything else raises Error(ParseError).
Scalar parse_scalar(std::string_view text);

// "p" for integers, "p/q" otherwise.
std::string to_string(const Scalar& value);
std::string to_string(const BigInt& value);

double to_double(const Scalar& value);

BigInt floor(const Scalar& value);
Scalar fractional_part(const Scalar& value);
bool is_integral(const Scalar& value);

inline Scalar abs(const Scalar& value) { return value < 0 ? Scalar(-value) : value; }

}  // namespace gaborlab
