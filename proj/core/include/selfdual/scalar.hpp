#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace selfdual {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <class T>
using Vector = std::vector<T>;

enum class ScalarMode { ExactRational, Float };

// Global arithmetic policy; tol is only consulted in Float mode.
struct ScalarPolicy {
  ScalarMode mode = ScalarMode::ExactRational;
  double tol = 1e-9;
};

template <class T>
inline constexpr bool kIsExact = std::is_same_v<T, Rational>;

// Comparison rules for a scalar type: exact for Rational, tol-relative for double.
template <class T>
struct Numeric {
  double tol = 1e-9;

  static constexpr ScalarMode mode() {
    return kIsExact<T> ? ScalarMode::ExactRational : ScalarMode::Float;
  }

  bool isZero(const T& v) const {
    if constexpr (kIsExact<T>) {
      return v == 0;
    } else {
      return std::abs(v) <= tol;
    }
  }

  int sign(const T& v) const {
    if (isZero(v)) return 0;
    return v > 0 ? 1 : -1;
  }

  bool equal(const T& a, const T& b) const {
    if constexpr (kIsExact<T>) {
      return a == b;
    } else {
      const double scale = std::max({1.0, std::abs(a), std::abs(b)});
      return std::abs(a - b) <= tol * scale;
    }
  }

  // a >= b under the policy.
  bool geq(const T& a, const T& b) const {
    if constexpr (kIsExact<T>) {
      return a >= b;
    } else {
      const double scale = std::max({1.0, std::abs(a), std::abs(b)});
      return a - b >= -tol * scale;
    }
  }
};

template <class T>
double toDouble(const T& v) {
  if constexpr (kIsExact<T>) {
    return v.template convert_to<double>();
  } else {
    return static_cast<double>(v);
  }
}

template <class T>
Vector<double> toDouble(const Vector<T>& v) {
  Vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(toDouble(x));
  return out;
}

template <class T>
T fromRational(const Rational& q) {
  if constexpr (kIsExact<T>) {
    return q;
  } else {
    return q.convert_to<double>();
  }
}

template <class T>
T absValue(const T& v) {
  if constexpr (kIsExact<T>) {
    return boost::multiprecision::abs(v);
  } else {
    return std::abs(v);
  }
}

// Parses "p/q", integers and decimal literals ("0.25", "1e-3") exactly.
Rational parseRational(std::string_view text);

// True when the literal is decimal (contains '.', 'e' or 'E').
bool isDecimalLiteral(std::string_view text);

// Canonical "p/q" (or "p" for integers) text.
std::string formatRational(const Rational& q);

// Shortest round-trip decimal text for a double.
std::string formatDouble(double v);

}  // namespace selfdual
