#include "selfdual/sampling.hpp"

#include <cmath>

namespace selfdual {

Vector<double> sampleSimplex(Rng& rng, std::size_t dim) {
  Vector<double> x(dim);
  double sum = 0;
  for (auto& c : x) {
    c = -std::log1p(-rng.uniform());
    sum += c;
  }
  for (auto& c : x) c /= sum;
  return x;
}

Vector<double> sampleBox(Rng& rng, std::size_t dim, double lo, double hi) {
  Vector<double> x(dim);
  for (auto& c : x) c = rng.uniform(lo, hi);
  return x;
}

Vector<double> sampleCone(Rng& rng, const std::vector<Vector<double>>& rays) {
  const Vector<double> w = sampleSimplex(rng, rays.size());
  Vector<double> x(rays.front().size(), 0.0);
  for (std::size_t k = 0; k < rays.size(); ++k)
    for (std::size_t c = 0; c < x.size(); ++c) x[c] += w[k] * rays[k][c];
  return x;
}

ConicPolytope<Rational> randomConicPolytope(Rng& rng, std::size_t dim, std::size_t maxVertices) {
  const std::size_t count = 1 + rng.below(maxVertices);
  std::vector<Vector<Rational>> pts;
  while (pts.size() < count) {
    Vector<Rational> p(dim);
    bool nonzero = false;
    for (auto& c : p) {
      // About a quarter of the coordinates land on a coordinate hyperplane.
      const long num = rng.below(4) == 0 ? 0 : static_cast<long>(1 + rng.below(9));
      const long den = static_cast<long>(1 + rng.below(4));
      c = Rational(num) / den;
      nonzero = nonzero || num != 0;
    }
    if (nonzero) pts.push_back(std::move(p));
  }
  return ConicPolytope<Rational>::fromVertices(std::move(pts));
}

}  // namespace selfdual
