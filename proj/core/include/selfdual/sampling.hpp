#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "selfdual/polyhedron.hpp"
#include "selfdual/scalar.hpp"

namespace selfdual {

// Seeded generator with platform-independent derived distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }

 private:
  std::mt19937_64 engine_;
};

// Uniform point of the standard simplex {x >= 0, sum x = 1}.
Vector<double> sampleSimplex(Rng& rng, std::size_t dim);

// Point of the open orthant with coordinates in [lo, hi).
Vector<double> sampleBox(Rng& rng, std::size_t dim, double lo, double hi);

// Random point of the cone spanned by `rays` (simplex weights).
Vector<double> sampleCone(Rng& rng, const std::vector<Vector<double>>& rays);

// co_+ of 1..maxVertices random rational points with small numerators and
// denominators; used by the bipolar and oracle suites.
ConicPolytope<Rational> randomConicPolytope(Rng& rng, std::size_t dim, std::size_t maxVertices);

}  // namespace selfdual
