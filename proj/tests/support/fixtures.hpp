#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "selfdual/construct.hpp"
#include "selfdual/polyhedron.hpp"

namespace fixture {

using selfdual::ConicPolytope;
using selfdual::Rational;
using selfdual::Vector;

inline Vector<Rational> qv(std::initializer_list<const char*> xs) {
  Vector<Rational> out;
  for (const char* x : xs) out.emplace_back(x);
  return out;
}

inline std::vector<Vector<Rational>> qvs(std::initializer_list<std::initializer_list<const char*>> xs) {
  std::vector<Vector<Rational>> out;
  for (const auto& x : xs) out.push_back(qv(x));
  return out;
}

// Autopolar polygon co_+{(5/3, 0), (3/5, 4/5)}.
inline ConicPolytope<Rational> polygon() {
  return ConicPolytope<Rational>::fromVertices(qvs({{"5/3", "0"}, {"3/5", "4/5"}}));
}

inline selfdual::PnPolytope p3() { return selfdual::buildPn({3, {2.0, 2.0}}); }
inline selfdual::PnPolytope p4() { return selfdual::buildPn({4, {2.0, 2.0, 1.5}}); }
inline selfdual::PnPolytope p5() { return selfdual::buildPn({5, {2.0, 2.0, 1.5, 2.0}}); }

}  // namespace fixture
