#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "selfdual/antinorm.hpp"
#include "selfdual/polyhedron.hpp"

namespace selfdual {

// G1 lives in one half-cone of the splitter.
template <class T>
struct LiftInput {
  AdmissibleHyperplane<T> splitter;
  ConicPolytope<T> g1;
};

// Completes G1 to a full-orthant body: G2 = {y in K2 : (v, y) >= 1 for all
// vertices v of G1}, G = co_+(G1 u G2). Throws RidgeNotAutopolar when the
// slice G1 n V is not autopolar inside V, DominationViolated (witness: a
// vertex whose projection onto V leaves G1) when G1 exceeds the cylinder.
template <class T>
ConicPolytope<T> liftPolytope(const LiftInput<T>& input);

// Slice G1 n V as generators in R^d (vertices lie in V).
template <class T>
std::vector<Vector<T>> ridgeBodyVertices(const ConicPolytope<T>& g1,
                                         const AdmissibleHyperplane<T>& splitter);

// Right cylinder over a ridge body: {x in K_s : (w, x) >= 1 for w in ridgeVertices},
// where the ridge body is autopolar inside V so its normals are its vertices.
template <class T>
ConicPolytope<T> rightCylinder(const std::vector<Vector<T>>& ridgeVertices, const HalfCone<T>& side,
                               Numeric<T> num = {});

struct LiftAntinormOptions {
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  double tol = 1e-9;         // ridge agreement and domination slack
  double numericTol = 1e-6;  // the same for numerically evaluated duals
  DualSearchOptions search;
};

// f = f1 on K1 and f2(y) = inf_{x in K1} (y, x)/f1(x) on K2.
Antinorm liftAntinorm(const AdmissibleHyperplane<double>& splitter, const Antinorm& f1,
                      const LiftAntinormOptions& options = {});

// Autopolar polygon from a unit vector a and a convex chain of inner vertices
// between a and the x1-axis.
template <class T>
ConicPolytope<T> algorithm1(const Vector<T>& a, const std::vector<Vector<T>>& inner,
                            Numeric<T> num = {});

struct PnChoices {
  std::size_t n = 3;
  std::vector<double> t;  // n - 1 positive parameters
};

struct PnPolytope {
  std::vector<Vector<double>> points;  // A_1, ..., A_n
  ConicPolytope<double> polytope;
};

PnPolytope buildPn(const PnChoices& choices, double tol = 1e-9);

struct ProductSplit {
  AdmissibleHyperplane<double> splitter;
  Vector<double> reduced;
};

ProductSplit productSplit(const Vector<double>& p);

}  // namespace selfdual
