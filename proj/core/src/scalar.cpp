#include "selfdual/scalar.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "selfdual/error.hpp"

namespace selfdual {

namespace {

Rational parseInteger(std::string_view text) {
  if (text.empty()) throw Error(ErrorCode::ParseError, "empty number");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw Error(ErrorCode::ParseError, "malformed number");
  for (std::size_t k = start; k < text.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(text[k])))
      throw Error(ErrorCode::ParseError, "malformed number: " + std::string(text));
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return Rational(digits);
}

Rational pow10(long e) {
  Rational r = 1;
  for (long k = 0; k < e; ++k) r *= 10;
  return r;
}

Rational parseDecimal(std::string_view text) {
  std::string_view mant = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mant = text.substr(0, e);
    std::string_view ex = text.substr(e + 1);
    if (!ex.empty() && ex[0] == '+') ex.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(ex.data(), ex.data() + ex.size(), exponent);
    if (ec != std::errc() || ptr != ex.data() + ex.size())
      throw Error(ErrorCode::ParseError, "malformed exponent: " + std::string(text));
  }
  bool negative = false;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    negative = mant[0] == '-';
    mant.remove_prefix(1);
  }
  std::string digits;
  long fractional = 0;
  bool seenDot = false;
  for (char c : mant) {
    if (c == '.') {
      if (seenDot) throw Error(ErrorCode::ParseError, "malformed decimal: " + std::string(text));
      seenDot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seenDot) ++fractional;
    } else {
      throw Error(ErrorCode::ParseError, "malformed decimal: " + std::string(text));
    }
  }
  if (digits.empty()) throw Error(ErrorCode::ParseError, "malformed decimal: " + std::string(text));
  Rational value(digits);
  const long shift = exponent - fractional;
  if (shift >= 0) {
    value *= pow10(shift);
  } else {
    value /= pow10(-shift);
  }
  return negative ? Rational(-value) : value;
}

}  // namespace

bool isDecimalLiteral(std::string_view text) {
  return text.find_first_of(".eE") != std::string_view::npos;
}

Rational parseRational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parseInteger(text.substr(0, slash));
    Rational den = parseInteger(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator");
    return num / den;
  }
  if (isDecimalLiteral(text)) return parseDecimal(text);
  return parseInteger(text);
}

std::string formatRational(const Rational& q) { return q.str(); }

std::string formatDouble(double v) {
  char buf[64];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string_view toString(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::OriginIncluded: return "OriginIncluded";
    case ErrorCode::OutsideAmbient: return "OutsideAmbient";
    case ErrorCode::ZeroNormal: return "ZeroNormal";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::EmptyInterior: return "EmptyInterior";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::RidgeMismatch: return "RidgeMismatch";
    case ErrorCode::RidgeNotAutopolar: return "RidgeNotAutopolar";
    case ErrorCode::DominationViolated: return "DominationViolated";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::AngleViolation: return "AngleViolation";
    case ErrorCode::NotConvexChain: return "NotConvexChain";
    case ErrorCode::NoSphereIntersection: return "NoSphereIntersection";
    case ErrorCode::NegativeCoordinate: return "NegativeCoordinate";
    case ErrorCode::LengthConditionViolated: return "LengthConditionViolated";
    case ErrorCode::ZeroWeightPair: return "ZeroWeightPair";
    case ErrorCode::ZeroCoordinate: return "ZeroCoordinate";
    case ErrorCode::NotAutopolar: return "NotAutopolar";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
  }
  return "Unknown";
}

}  // namespace selfdual
