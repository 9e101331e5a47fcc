#include "gaborlab/rational.hpp"

#include <cctype>

#include "gaborlab/error.hpp"

namespace gaborlab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SingularGenerator: return "SingularGenerator";
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSymplectic: return "NotSymplectic";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::EmptyTruncation: return "EmptyTruncation";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NonPositive: return "NonPositive";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::BadRange: return "BadRange";
  }
  return "Unknown";
}

namespace {

constexpr std::size_t kMaxFractionalDigits = 12;

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// cpp_int reads a leading 0 as an octal prefix
BigInt decimal_integer(std::string_view digits) {
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  return BigInt{std::string(digits)};
}

[[noreturn]] void reject(std::string_view text, const char* why) {
  throw Error(ErrorCode::ParseError,
              "cannot read '" + std::string(text) + "' as a rational: " + why);
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) reject(text, "empty");

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  Scalar value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) reject(text, "malformed fraction");
    BigInt d = decimal_integer(den);
    if (d == 0) reject(text, "zero denominator");
    value = Scalar(decimal_integer(num), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!all_digits(whole) || (!frac.empty() && !all_digits(frac))) {
      reject(text, "malformed decimal");
    }
    if (frac.size() > kMaxFractionalDigits) reject(text, "more than 12 fractional digits");
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    BigInt digits = decimal_integer(std::string(whole) + std::string(frac));
    value = Scalar(digits, scale);
  } else {
    if (!all_digits(s)) reject(text, "not a number");
    value = Scalar(decimal_integer(s));
  }
  return negative ? Scalar(-value) : value;
}

std::string to_string(const Scalar& value) {
  const BigInt& den = boost::multiprecision::denominator(value);
  if (den == 1) return boost::multiprecision::numerator(value).str();
  return boost::multiprecision::numerator(value).str() + "/" + den.str();
}

std::string to_string(const BigInt& value) { return value.str(); }

double to_double(const Scalar& value) { return value.convert_to<double>(); }

BigInt floor(const Scalar& value) {
  const BigInt& num = boost::multiprecision::numerator(value);
  const BigInt& den = boost::multiprecision::denominator(value);
  BigInt q = num / den;
  if (num % den != 0 && num < 0) q -= 1;
  return q;
}

Scalar fractional_part(const Scalar& value) { return value - Scalar(floor(value)); }

bool is_integral(const Scalar& value) { return boost::multiprecision::denominator(value) == 1; }

}  // namespace gaborlab
