#pragma once

#include <cstddef>
#include <optional>
#include <vector>
#include <utility>

#include "selfdual/scalar.hpp"

namespace selfdual::linalg {

template <class T>
T dot(const Vector<T>& a, const Vector<T>& b) {
  T s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

template <class T>
Vector<T> scaled(const Vector<T>& a, const T& c) {
  Vector<T> out(a);
  for (auto& x : out) x *= c;
  return out;
}

template <class T>
Vector<T> plus(const Vector<T>& a, const Vector<T>& b) {
  Vector<T> out(a);
  for (std::size_t k = 0; k < a.size(); ++k) out[k] += b[k];
  return out;
}

template <class T>
Vector<T> minus(const Vector<T>& a, const Vector<T>& b) {
  Vector<T> out(a);
  for (std::size_t k = 0; k < a.size(); ++k) out[k] -= b[k];
  return out;
}

template <class T>
Vector<T> unitVector(std::size_t dim, std::size_t k) {
  Vector<T> e(dim, T(0));
  e[k] = 1;
  return e;
}

template <class T>
T maxAbs(const Vector<T>& a) {
  T m = 0;
  for (const auto& x : a) m = std::max(m, absValue(x));
  return m;
}

template <class T>
bool isZeroVector(const Vector<T>& a, const Numeric<T>& num) {
  for (const auto& x : a)
    if (!num.isZero(x)) return false;
  return true;
}

// Index of the first coordinate that is nonzero under the policy.
template <class T>
std::optional<std::size_t> firstNonzero(const Vector<T>& a, const Numeric<T>& num) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!num.isZero(a[k])) return k;
  return std::nullopt;
}

// Positive rescaling that keeps magnitudes bounded: max-abs 1 for doubles,
// first nonzero of absolute value 1 for rationals.
template <class T>
void rescale(Vector<T>& a, const Numeric<T>& num) {
  if constexpr (kIsExact<T>) {
    auto k = firstNonzero(a, num);
    if (!k) return;
    const T s = absValue(a[*k]);
    for (auto& x : a) x /= s;
  } else {
    const double m = maxAbs(a);
    if (m == 0) return;
    for (auto& x : a) x /= m;
  }
}

// Scales so the first nonzero coordinate equals +-1 (canonical ray form).
template <class T>
void normalizeFirst(Vector<T>& a, const Numeric<T>& num) {
  auto k = firstNonzero(a, num);
  if (!k) return;
  const T s = absValue(a[*k]);
  for (auto& x : a) x /= s;
  if constexpr (!kIsExact<T>) {
    a[*k] = a[*k] > 0 ? 1.0 : -1.0;
  }
}

template <class T>
bool vectorsEqual(const Vector<T>& a, const Vector<T>& b, const Numeric<T>& num) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!num.equal(a[k], b[k])) return false;
  return true;
}

// Multiset equality of two vector lists under the policy.
template <class T>
bool sameVectorSet(const std::vector<Vector<T>>& a, const std::vector<Vector<T>>& b,
                   const Numeric<T>& num) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& v : a) {
    bool found = false;
    for (std::size_t k = 0; k < b.size() && !found; ++k) {
      if (!used[k] && vectorsEqual(v, b[k], num)) {
        used[k] = true;
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

// Row-echelon rank; rows are rescaled first so the float threshold is relative.
template <class T>
std::size_t rank(std::vector<Vector<T>> rows, const Numeric<T>& num) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  for (auto& r : rows) rescale(r, num);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pivot = rows.size();
    T best = 0;
    for (std::size_t i = r; i < rows.size(); ++i) {
      if (num.isZero(rows[i][c])) continue;
      if constexpr (kIsExact<T>) {
        pivot = i;
        break;
      } else {
        if (std::abs(rows[i][c]) > best) {
          best = std::abs(rows[i][c]);
          pivot = i;
        }
      }
    }
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const T f = rows[i][c] / rows[r][c];
      for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
      rows[i][c] = 0;
    }
    ++r;
  }
  return r;
}

// Solves the square system M x = b; nullopt when singular under the policy.
template <class T>
std::optional<Vector<T>> solve(std::vector<Vector<T>> m, Vector<T> b, const Numeric<T>& num) {
  const std::size_t n = m.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = n;
    T best = 0;
    for (std::size_t i = c; i < n; ++i) {
      if (m[i][c] == 0) continue;
      if constexpr (kIsExact<T>) {
        pivot = i;
        break;
      } else {
        if (std::abs(m[i][c]) > best) {
          best = std::abs(m[i][c]);
          pivot = i;
        }
      }
    }
    if (pivot == n) return std::nullopt;
    if constexpr (!kIsExact<T>) {
      if (best <= num.tol * std::max(1.0, maxAbs(m[pivot]))) return std::nullopt;
    }
    std::swap(m[c], m[pivot]);
    std::swap(b[c], b[pivot]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c] == 0) continue;
      const T f = m[i][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[i][k] -= f * m[c][k];
      b[i] -= f * b[c];
    }
  }
  Vector<T> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / m[i][i];
  return x;
}

}  // namespace selfdual::linalg
