#include "bergman/alpha.hpp"

#include <charconv>
#include <regex>
#include <sstream>

namespace bergman {

namespace {

const std::regex kFraction(R"(^\s*([+-]?\d+)\s*/\s*(\d+)\s*$)");
const std::regex kDecimal(R"(^\s*([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?\s*$)");

Rational pow10(int e) {
  Rational r(1);
  for (int i = 0; i < e; ++i) r *= 10;
  return r;
}

// Base-10 integer; GMP would read a leading 0 as an octal prefix.
boost::multiprecision::mpz_int decimal_int(std::string digits) {
  bool negative = false;
  if (!digits.empty() && (digits[0] == '+' || digits[0] == '-')) {
    negative = digits[0] == '-';
    digits.erase(0, 1);
  }
  const auto first = digits.find_first_not_of('0');
  digits = first == std::string::npos ? "0" : digits.substr(first);
  boost::multiprecision::mpz_int z(digits);
  return negative ? boost::multiprecision::mpz_int(-z) : z;
}

}  // namespace

Alpha Alpha::rational(long numerator, long denominator) {
  if (denominator == 0) throw Error(ErrorCode::InvalidAlpha, "zero denominator");
  Alpha a;
  a.exact_ = Rational(numerator, denominator);
  a.value_ = to_double(*a.exact_);
  a.fraction_literal_ = true;
  a.text_ = a.exact_->str();
  return a;
}

Alpha Alpha::parse(std::string_view text) {
  const std::string s(text);
  std::smatch m;
  if (std::regex_match(s, m, kFraction)) {
    Alpha a;
    const auto den = decimal_int(m[2].str());
    if (den == 0) throw Error(ErrorCode::InvalidAlpha, "zero denominator in '" + s + "'");
    a.exact_ = Rational(decimal_int(m[1].str()), den);
    a.value_ = to_double(*a.exact_);
    a.fraction_literal_ = true;
    a.text_ = a.exact_->str();
    return a;
  }
  if (std::regex_match(s, m, kDecimal) && (m[2].length() + m[3].length()) > 0) {
    Alpha a;
    const std::string digits = m[2].str() + m[3].str();
    int exponent = m[4].matched ? std::stoi(m[4].str()) : 0;
    exponent -= static_cast<int>(m[3].length());
    Rational q{decimal_int(digits)};
    if (exponent >= 0)
      q *= pow10(exponent);
    else
      q /= pow10(-exponent);
    if (m[1].str() == "-") q = -q;
    a.exact_ = q;
    a.value_ = std::stod(s);
    a.fraction_literal_ = false;
    a.text_ = format_double(a.value_);
    return a;
  }
  throw Error(ErrorCode::InvalidAlpha, "cannot parse alpha '" + s + "'");
}

void Alpha::validate() const {
  const bool ok = exact_ ? (*exact_ > -1) : (value_ > -1.0 && std::isfinite(value_));
  if (!ok) throw Error(ErrorCode::InvalidAlpha, "alpha must exceed -1, got " + text_);
}

bool Alpha::operator==(const Alpha& other) const {
  if (exact_ && other.exact_) return *exact_ == *other.exact_;
  return value_ == other.value_ && !exact_ && !other.exact_;
}

bool Alpha::operator<(const Alpha& other) const {
  if (exact_ && other.exact_ && *exact_ != *other.exact_) return *exact_ < *other.exact_;
  if (value_ != other.value_) return value_ < other.value_;
  return text_ < other.text_;
}

std::string Alpha::format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace bergman
