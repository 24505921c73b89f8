#pragma once

#include <cstddef>
#include <vector>

#include "selfdual/error.hpp"
#include "selfdual/linalg.hpp"
#include "selfdual/scalar.hpp"

namespace selfdual::dd {

// (normal, x) >= rhs
template <class T>
struct HalfSpace {
  Vector<T> normal;
  T rhs;
};

template <class T>
struct Cone {
  std::vector<Vector<T>> rays;
  std::vector<Vector<T>> lineality;
};

template <class T>
struct Generators {
  std::vector<Vector<T>> vertices;
  std::vector<Vector<T>> rays;
};

namespace detail {

template <class T>
void pushUnique(std::vector<Vector<T>>& out, Vector<T> v, const Numeric<T>& num) {
  for (const auto& w : out)
    if (linalg::vectorsEqual(w, v, num)) return;
  out.push_back(std::move(v));
}

}  // namespace detail

// Generators of {z in R^n : (row, z) >= 0 for every row}, by incremental
// double description starting from the whole space as lineality.
template <class T>
Cone<T> coneFromInequalities(std::vector<Vector<T>> rows, std::size_t n, const Numeric<T>& num) {
  for (auto& r : rows) linalg::rescale(r, num);

  Cone<T> cone;
  for (std::size_t k = 0; k < n; ++k) cone.lineality.push_back(linalg::unitVector<T>(n, k));

  std::vector<std::size_t> processed;
  for (std::size_t idx = 0; idx < rows.size(); ++idx) {
    const Vector<T>& a = rows[idx];
    if (linalg::isZeroVector(a, num)) continue;

    // A lineality direction not orthogonal to a becomes a ray.
    std::size_t pick = cone.lineality.size();
    T pickAbs = 0;
    for (std::size_t k = 0; k < cone.lineality.size(); ++k) {
      const T v = linalg::dot(a, cone.lineality[k]);
      if (num.isZero(v)) continue;
      if (pick == cone.lineality.size() || absValue(v) > pickAbs) {
        pick = k;
        pickAbs = absValue(v);
        if constexpr (kIsExact<T>) break;
      }
    }
    if (pick < cone.lineality.size()) {
      Vector<T> l = cone.lineality[pick];
      cone.lineality.erase(cone.lineality.begin() + static_cast<std::ptrdiff_t>(pick));
      T al = linalg::dot(a, l);
      if (al < 0) {
        for (auto& x : l) x = -x;
        al = -al;
      }
      auto project = [&](Vector<T>& m) {
        const T c = linalg::dot(a, m) / al;
        if (c == 0) return;
        for (std::size_t k = 0; k < n; ++k) m[k] -= c * l[k];
        linalg::rescale(m, num);
      };
      for (auto& m : cone.lineality) project(m);
      for (auto& r : cone.rays) project(r);
      linalg::rescale(l, num);
      cone.rays.push_back(std::move(l));
      processed.push_back(idx);
      continue;
    }

    std::vector<T> s(cone.rays.size());
    std::vector<int> sg(cone.rays.size());
    bool anyNeg = false;
    for (std::size_t k = 0; k < cone.rays.size(); ++k) {
      s[k] = linalg::dot(a, cone.rays[k]);
      sg[k] = num.sign(s[k]);
      anyNeg = anyNeg || sg[k] < 0;
    }
    if (!anyNeg) {
      processed.push_back(idx);
      continue;
    }

    std::vector<std::vector<bool>> zero(cone.rays.size(), std::vector<bool>(processed.size()));
    for (std::size_t k = 0; k < cone.rays.size(); ++k)
      for (std::size_t p = 0; p < processed.size(); ++p)
        zero[k][p] = num.isZero(linalg::dot(rows[processed[p]], cone.rays[k]));

    const std::size_t pointedDim = n - cone.lineality.size();
    const std::size_t minCommon = pointedDim >= 2 ? pointedDim - 2 : 0;

    std::vector<Vector<T>> next;
    for (std::size_t k = 0; k < cone.rays.size(); ++k)
      if (sg[k] >= 0) next.push_back(cone.rays[k]);

    std::vector<bool> common(processed.size());
    for (std::size_t p = 0; p < cone.rays.size(); ++p) {
      if (sg[p] <= 0) continue;
      for (std::size_t q = 0; q < cone.rays.size(); ++q) {
        if (sg[q] >= 0) continue;
        std::size_t count = 0;
        for (std::size_t c = 0; c < processed.size(); ++c) {
          common[c] = zero[p][c] && zero[q][c];
          count += common[c] ? 1 : 0;
        }
        if (count < minCommon) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < cone.rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          bool superset = true;
          for (std::size_t c = 0; c < processed.size(); ++c) {
            if (common[c] && !zero[r][c]) {
              superset = false;
              break;
            }
          }
          if (superset) adjacent = false;
        }
        if (!adjacent) continue;
        Vector<T> v(n);
        for (std::size_t k = 0; k < n; ++k) v[k] = s[p] * cone.rays[q][k] - s[q] * cone.rays[p][k];
        linalg::rescale(v, num);
        if constexpr (kIsExact<T>) {
          next.push_back(std::move(v));
        } else {
          detail::pushUnique(next, std::move(v), num);
        }
      }
    }
    cone.rays = std::move(next);
    processed.push_back(idx);
  }
  return cone;
}

// Vertices and recession rays of {x in R^dim : (a, x) >= b}. Throws EmptyInterior
// when infeasible, InvalidArgument when the set contains a line.
template <class T>
Generators<T> generatorsFromHalfSpaces(std::size_t dim, const std::vector<HalfSpace<T>>& hs,
                                       const Numeric<T>& num) {
  std::vector<Vector<T>> rows;
  auto lift = [&](const HalfSpace<T>& h) {
    Vector<T> r(h.normal);
    r.push_back(-h.rhs);
    rows.push_back(std::move(r));
  };
  for (const auto& h : hs)
    if (h.rhs == 0) lift(h);
  rows.push_back(linalg::unitVector<T>(dim + 1, dim));
  for (const auto& h : hs)
    if (h.rhs != 0) lift(h);

  Cone<T> cone = coneFromInequalities(std::move(rows), dim + 1, num);
  if (!cone.lineality.empty())
    throw Error(ErrorCode::InvalidArgument, "polyhedron contains a line");

  Generators<T> out;
  for (const auto& z : cone.rays) {
    const T t = z[dim];
    Vector<T> x(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(dim));
    if (num.sign(t) > 0) {
      for (auto& c : x) c /= t;
      detail::pushUnique(out.vertices, std::move(x), num);
    } else {
      if (linalg::isZeroVector(x, num)) continue;
      linalg::normalizeFirst(x, num);
      detail::pushUnique(out.rays, std::move(x), num);
    }
  }
  if (out.vertices.empty())
    throw Error(ErrorCode::EmptyInterior, "constraints are infeasible");
  return out;
}

// Facet inequalities of co(vertices) + cone(rays); equalities of the affine
// hull come out as opposite pairs.
template <class T>
std::vector<HalfSpace<T>> facetsFromGenerators(std::size_t dim, const Generators<T>& gen,
                                               const Numeric<T>& num) {
  std::vector<Vector<T>> rows;
  for (const auto& r : gen.rays) {
    Vector<T> z(r);
    z.push_back(T(0));
    rows.push_back(std::move(z));
  }
  for (const auto& v : gen.vertices) {
    Vector<T> z(v);
    z.push_back(T(1));
    rows.push_back(std::move(z));
  }
  Cone<T> cone = coneFromInequalities(std::move(rows), dim + 1, num);

  std::vector<HalfSpace<T>> out;
  auto emit = [&](const Vector<T>& z, bool negate) {
    Vector<T> a(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(dim));
    T rhs = -z[dim];
    if (negate) {
      for (auto& c : a) c = -c;
      rhs = -rhs;
    }
    if (linalg::isZeroVector(a, num)) return;
    out.push_back({std::move(a), std::move(rhs)});
  };
  for (const auto& z : cone.rays) emit(z, false);
  for (const auto& z : cone.lineality) {
    emit(z, false);
    emit(z, true);
  }
  return out;
}

}  // namespace selfdual::dd
