#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "selfdual/polyhedron.hpp"

namespace selfdual::tools {

struct Mesh {
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<std::size_t, 3>> triangles;  // 0-based, outward orientation
};

// Boundary of P n {x_k <= clip for all k}, fan-triangulated per face.
// Throws EmptyInterior when the clipped body is not full-dimensional.
Mesh clippedMesh(const ConicPolytope<double>& p, double clip);

std::string toObj(const Mesh& mesh);

}  // namespace selfdual::tools
