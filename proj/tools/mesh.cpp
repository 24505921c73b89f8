#include "mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "selfdual/double_description.hpp"
#include "selfdual/linalg.hpp"

namespace selfdual::tools {

namespace {

using V3 = std::array<double, 3>;

V3 sub(const V3& a, const V3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
V3 cross(const V3& a, const V3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double dot3(const V3& a, const V3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

}  // namespace

Mesh clippedMesh(const ConicPolytope<double>& p, double clip) {
  if (p.dim() != 3) throw Error(ErrorCode::UnsupportedDimension, "mesh export needs d = 3");
  if (!(clip > 0)) throw Error(ErrorCode::InvalidArgument, "clip radius must be positive");
  const Numeric<double> num = p.numeric();

  std::vector<dd::HalfSpace<double>> hs;
  for (const auto& h : p.constraints().homogeneous) hs.push_back({h, 0.0});
  for (const auto& a : p.constraints().affine) hs.push_back({a, 1.0});
  for (std::size_t k = 0; k < 3; ++k) {
    Vector<double> e(3, 0.0);
    e[k] = -1.0;
    hs.push_back({e, -clip});
  }
  dd::Generators<double> gen;
  try {
    gen = dd::generatorsFromHalfSpaces(3, hs, num);
  } catch (const Error&) {
    throw Error(ErrorCode::EmptyInterior, "the clipped body is empty");
  }
  if (!gen.rays.empty() || linalg::rank(gen.vertices, num) < 3 || gen.vertices.size() < 4)
    throw Error(ErrorCode::EmptyInterior, "the clipped body has empty interior");
  {
    std::vector<Vector<double>> diffs;
    for (const auto& v : gen.vertices) diffs.push_back(linalg::minus(v, gen.vertices.front()));
    if (linalg::rank(diffs, num) < 3)
      throw Error(ErrorCode::EmptyInterior, "the clipped body has empty interior");
  }

  Mesh mesh;
  for (const auto& v : gen.vertices) mesh.vertices.push_back({v[0], v[1], v[2]});

  for (const auto& h : hs) {
    std::vector<std::size_t> face;
    for (std::size_t k = 0; k < gen.vertices.size(); ++k)
      if (num.isZero(linalg::dot(h.normal, gen.vertices[k]) - h.rhs)) face.push_back(k);
    if (face.size() < 3) continue;
    V3 c{0, 0, 0};
    for (auto k : face)
      for (int t = 0; t < 3; ++t) c[t] += mesh.vertices[k][t] / static_cast<double>(face.size());
    // Outward normal and an in-plane basis.
    const V3 out{-h.normal[0], -h.normal[1], -h.normal[2]};
    V3 u{};
    for (auto k : face) {
      u = sub(mesh.vertices[k], c);
      if (dot3(u, u) > 1e-24) break;
    }
    const V3 w = cross(out, u);
    if (dot3(w, w) < 1e-24) continue;
    std::sort(face.begin(), face.end(), [&](std::size_t a, std::size_t b) {
      const V3 da = sub(mesh.vertices[a], c);
      const V3 db = sub(mesh.vertices[b], c);
      return std::atan2(dot3(da, w), dot3(da, u)) < std::atan2(dot3(db, w), dot3(db, u));
    });
    // Drop repeated faces (a clip plane can coincide with a facet).
    bool seen = false;
    for (const auto& t : mesh.triangles) {
      const V3 n = cross(sub(mesh.vertices[t[1]], mesh.vertices[t[0]]),
                         sub(mesh.vertices[t[2]], mesh.vertices[t[0]]));
      const bool sameSet = std::find(face.begin(), face.end(), t[0]) != face.end() &&
                           std::find(face.begin(), face.end(), t[1]) != face.end() &&
                           std::find(face.begin(), face.end(), t[2]) != face.end();
      seen = seen || (sameSet && dot3(n, out) > 0);
    }
    if (seen) continue;
    for (std::size_t k = 1; k + 1 < face.size(); ++k) {
      std::array<std::size_t, 3> tri{face[0], face[k], face[k + 1]};
      const V3 n = cross(sub(mesh.vertices[tri[1]], mesh.vertices[tri[0]]),
                         sub(mesh.vertices[tri[2]], mesh.vertices[tri[0]]));
      if (dot3(n, out) < 0) std::swap(tri[1], tri[2]);
      mesh.triangles.push_back(tri);
    }
  }
  return mesh;
}

std::string toObj(const Mesh& mesh) {
  std::string out;
  char buf[128];
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v[0], v[1], v[2]);
    out += buf;
  }
  for (const auto& t : mesh.triangles) {
    std::snprintf(buf, sizeof buf, "f %zu %zu %zu\n", t[0] + 1, t[1] + 1, t[2] + 1);
    out += buf;
  }
  return out;
}

}  // namespace selfdual::tools
