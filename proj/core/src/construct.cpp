#include "selfdual/construct.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "selfdual/double_description.hpp"
#include "selfdual/linalg.hpp"
#include "selfdual/sampling.hpp"

namespace selfdual {

namespace {

template <class T>
std::vector<dd::HalfSpace<T>> coneRows(const std::vector<Vector<T>>& rows) {
  std::vector<dd::HalfSpace<T>> hs;
  for (const auto& r : rows) hs.push_back({r, T(0)});
  return hs;
}

// Orthant rows plus both orientations of the splitter row: the ridge K'.
template <class T>
std::vector<dd::HalfSpace<T>> ridgeRows(std::size_t dim, const AdmissibleHyperplane<T>& h) {
  std::vector<Vector<T>> rows;
  for (std::size_t k = 0; k < dim; ++k) rows.push_back(linalg::unitVector<T>(dim, k));
  const Vector<T> n = h.normal(dim);
  rows.push_back(n);
  rows.push_back(linalg::scaled(n, T(-1)));
  return coneRows(rows);
}

struct LineSegment {
  Vector<double> start;
  Vector<double> dir;  // unit, pointing into the orthant
  double length;       // may be infinite
};

Vector<double> cross(const Vector<double>& a, const Vector<double>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// The part of the line {(n1, y) = c1, (n2, y) = c2} inside R^3_+, oriented from
// its finite end.
std::optional<LineSegment> orthantSegment(const Vector<double>& n1, const Vector<double>& n2,
                                          double c1, double c2) {
  Vector<double> d = cross(n1, n2);
  const double norm = std::sqrt(linalg::dot(d, d));
  if (norm == 0) return std::nullopt;
  for (auto& c : d) c /= norm;
  auto y0 = linalg::solve<double>({n1, n2, d}, {c1, c2, 0.0}, Numeric<double>{1e-14});
  if (!y0) return std::nullopt;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < 3; ++k) {
    if (std::abs(d[k]) < 1e-15) {
      if ((*y0)[k] < -1e-12) return std::nullopt;
      continue;
    }
    const double s = -(*y0)[k] / d[k];
    if (d[k] > 0) {
      lo = std::max(lo, s);
    } else {
      hi = std::min(hi, s);
    }
  }
  if (lo > hi + 1e-12) return std::nullopt;
  if (std::isfinite(lo)) return LineSegment{linalg::plus(*y0, linalg::scaled(d, lo)), d, hi - lo};
  if (!std::isfinite(hi)) return std::nullopt;
  return LineSegment{linalg::plus(*y0, linalg::scaled(d, hi)), linalg::scaled(d, -1.0),
                     std::numeric_limits<double>::infinity()};
}

void clampTiny(Vector<double>& x, double tol) {
  for (auto& c : x) {
    if (c < -tol) throw Error(ErrorCode::NegativeCoordinate, "point leaves the orthant", x);
    if (c < 0) c = 0;
  }
}

}  // namespace

// ---------------------------------------------------------------- lifting

template <class T>
std::vector<Vector<T>> ridgeBodyVertices(const ConicPolytope<T>& g1,
                                         const AdmissibleHyperplane<T>& splitter) {
  auto hs = ridgeRows(g1.dim(), splitter);
  for (const auto& a : g1.constraints().affine) hs.push_back({a, T(1)});
  return dd::generatorsFromHalfSpaces(g1.dim(), hs, g1.numeric()).vertices;
}

template <class T>
ConicPolytope<T> liftPolytope(const LiftInput<T>& input) {
  const auto& g1 = input.g1;
  const auto& num = g1.numeric();
  const std::size_t dim = g1.dim();
  const auto& half = g1.ambient().half();
  if (!half || !(half->splitter.i == input.splitter.i && half->splitter.j == input.splitter.j &&
                 num.equal(half->splitter.mu, input.splitter.mu)))
    throw Error(ErrorCode::InvalidArgument, "G1 must live in a half-cone of the splitter");

  // The ridge body must coincide with its polar inside V.
  const auto ridge = ridgeBodyVertices(g1, input.splitter);
  auto polarRows = ridgeRows(dim, input.splitter);
  for (const auto& v : ridge) polarRows.push_back({v, T(1)});
  const auto ridgePolar = dd::generatorsFromHalfSpaces(dim, polarRows, num).vertices;
  if (!linalg::sameVectorSet(ridge, ridgePolar, num)) {
    Vector<double> witness;
    for (const auto& v : ridge) {
      bool found = false;
      for (const auto& w : ridgePolar) found = found || linalg::vectorsEqual(v, w, num);
      if (!found) {
        witness = toDouble(v);
        break;
      }
    }
    throw Error(ErrorCode::RidgeNotAutopolar, "the ridge body is not autopolar", witness);
  }

  // G1 must sit inside the right cylinder over the ridge body.
  const auto& verts = g1.generators().vertices;
  for (const auto& v : verts) {
    if (!contains(g1, projectOntoHyperplane(input.splitter, v)))
      throw Error(ErrorCode::DominationViolated,
                  "projection of a vertex onto the splitter leaves G1", toDouble(v));
  }

  const HalfCone<T> k2 = half->opposite();
  auto rows = coneRows(Ambient<T>::orthant(dim).rows());
  rows.push_back({k2.inwardNormal(), T(0)});
  for (const auto& v : verts) rows.push_back({v, T(1)});
  const auto g2 = dd::generatorsFromHalfSpaces(dim, rows, num);

  std::vector<Vector<T>> all(verts);
  all.insert(all.end(), g2.vertices.begin(), g2.vertices.end());
  return ConicPolytope<T>::fromVertices(std::move(all), Ambient<T>::orthant(dim), num);
}

template <class T>
ConicPolytope<T> rightCylinder(const std::vector<Vector<T>>& ridgeVertices, const HalfCone<T>& side,
                               Numeric<T> num) {
  return ConicPolytope<T>::fromInequalities(ridgeVertices, Ambient<T>::halfCone(side), num);
}

Antinorm liftAntinorm(const AdmissibleHyperplane<double>& splitter, const Antinorm& f1,
                      const LiftAntinormOptions& options) {
  const auto& h1 = f1.domain().half;
  if (!h1 || h1->splitter.i != splitter.i || h1->splitter.j != splitter.j ||
      std::abs(h1->splitter.mu - splitter.mu) > 1e-12 * std::max(1.0, splitter.mu) ||
      h1->degenerate())
    throw Error(ErrorCode::InvalidArgument, "f1 must live in a half-cone of the splitter");

  Rng rng(options.seed);
  auto phi = [&](const Vector<double>& x) {
    return f1.evaluateUnchecked(projectOntoHyperplane(splitter, x));
  };
  auto checkDominated = [&](const Antinorm& g, const std::vector<Vector<double>>& rays, double tol) {
    for (std::size_t s = 0; s < options.samples; ++s) {
      const Vector<double> x = sampleCone(rng, rays);
      const double gx = g.evaluateUnchecked(x);
      const double cap = phi(x);
      if (gx > cap + tol * std::max(1.0, cap))
        throw Error(ErrorCode::DominationViolated, "antinorm exceeds the orthogonal extension", x,
                    gx - cap);
    }
  };

  checkDominated(f1, f1.domain().rays(), options.tol);

  const Domain d2 = Domain::halfCone(h1->opposite());
  const bool exact = f1.kind() == AntinormKind::PiecewiseLinear && !f1.ballVertices().empty();
  const double tol = exact ? options.tol : options.numericTol;
  Antinorm f2 = exact ? Antinorm::piecewiseLinear(f1.ballVertices(), d2)
                      : Antinorm::coneDual(f1, d2, options.search);
  Antinorm f = Antinorm::concatenate(f1, f2, splitter, tol, options.seed);
  checkDominated(f2, d2.rays(), tol);
  return f;
}

// ---------------------------------------------------------------- planar construction

template <class T>
ConicPolytope<T> algorithm1(const Vector<T>& a, const std::vector<Vector<T>>& inner, Numeric<T> num) {
  if (a.size() != 2) throw Error(ErrorCode::InvalidArgument, "a must be a vector in R^2");
  if (a[0] < 0 || a[1] < 0) throw Error(ErrorCode::OutsideAmbient, "a must be nonnegative", toDouble(a));
  if (!num.equal(linalg::dot(a, a), T(1))) throw Error(ErrorCode::NotUnit, "|a| must be 1", toDouble(a));

  if (num.isZero(a[1])) {
    // K1 collapses onto the x1-axis; the only body is {x1 >= 1}.
    if (!inner.empty())
      throw Error(ErrorCode::InvalidArgument, "no inner vertices fit when a lies on the x1-axis");
    return ConicPolytope<T>::fromVertices({a}, Ambient<T>::orthant(2), num);
  }

  // K1 is the angle between V = R_+ a and the x1-axis.
  const HalfCone<T> k1 =
      num.isZero(a[0]) ? HalfCone<T>{2, AdmissibleHyperplane<T>::coordinatePlane(0, 1), Side::Two}
                       : HalfCone<T>{2, AdmissibleHyperplane<T>::make(1, 0, T(a[1] / a[0])), Side::One};
  const Ambient<T> amb = Ambient<T>::halfCone(k1);

  std::vector<Vector<T>> points{a};
  for (const auto& v : inner) {
    if (v.size() != 2) throw Error(ErrorCode::InvalidArgument, "inner vertices must lie in R^2");
    if (!amb.contains(v, num))
      throw Error(ErrorCode::OutsideAmbient, "inner vertex outside K1", toDouble(v));
    if (!num.geq(linalg::dot(v, a), T(1)))
      throw Error(ErrorCode::AngleViolation, "inner vertex violates (v, a) >= 1", toDouble(v));
    points.push_back(v);
  }

  const auto g1 = ConicPolytope<T>::fromVertices(points, amb, num);
  for (const auto& p : points) {
    bool vertex = false;
    for (const auto& v : g1.generators().vertices) vertex = vertex || linalg::vectorsEqual(p, v, num);
    if (!vertex) throw Error(ErrorCode::NotConvexChain, "point is not a vertex of G1", toDouble(p));
  }
  return liftPolytope<T>({k1.splitter, g1});
}

// ---------------------------------------------------------------- P_n

PnPolytope buildPn(const PnChoices& choices, double tol) {
  const std::size_t n = choices.n;
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "n must be at least 3");
  if (choices.t.size() != n - 1) throw Error(ErrorCode::InvalidArgument, "expected n - 1 choices");
  for (double t : choices.t)
    if (!(t > 0)) throw Error(ErrorCode::InvalidArgument, "choices must be positive");

  std::vector<Vector<double>> pts{{0.0, 0.0, choices.t[0]}};
  auto place = [&](const std::optional<LineSegment>& seg, double t) {
    if (!seg) throw Error(ErrorCode::NegativeCoordinate, "polar line misses the orthant");
    if (t > seg->length + 1e-12)
      throw Error(ErrorCode::NegativeCoordinate, "parameter beyond the orthant segment");
    Vector<double> p = linalg::plus(seg->start, linalg::scaled(seg->dir, t));
    clampTiny(p, 1e-12);
    return p;
  };

  pts.push_back(place(orthantSegment(pts[0], {0.0, 1.0, 0.0}, 1.0, 0.0), choices.t[1]));
  for (std::size_t k = 3; k <= n; ++k) {
    const auto seg = orthantSegment(pts[k - 3], pts[k - 2], 1.0, 1.0);
    if (k < n) {
      pts.push_back(place(seg, choices.t[k - 1]));
      continue;
    }
    if (!seg) throw Error(ErrorCode::NegativeCoordinate, "polar line misses the orthant");
    // |start + s dir|^2 = 1
    const double b = linalg::dot(seg->start, seg->dir);
    const double c = linalg::dot(seg->start, seg->start) - 1.0;
    const double disc = b * b - c;
    if (disc < 0) throw Error(ErrorCode::NoSphereIntersection, "polar line misses the unit sphere");
    std::optional<double> root;
    for (double s : {-b - std::sqrt(disc), -b + std::sqrt(disc)}) {
      if (s >= -1e-12 && s <= seg->length + 1e-12) {
        root = std::max(s, 0.0);
        break;
      }
    }
    if (!root) throw Error(ErrorCode::NoSphereIntersection, "sphere point outside the orthant");
    Vector<double> p = linalg::plus(seg->start, linalg::scaled(seg->dir, *root));
    clampTiny(p, 1e-12);
    pts.push_back(std::move(p));
  }

  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (!(linalg::dot(pts[k], pts[k]) > 1.0))
      throw Error(ErrorCode::LengthConditionViolated, "|OA_k| must exceed 1", pts[k]);
  }

  auto poly = ConicPolytope<double>::fromVertices(pts, Ambient<double>::orthant(3), Numeric<double>{tol});
  return {std::move(pts), std::move(poly)};
}

// ---------------------------------------------------------------- products

ProductSplit productSplit(const Vector<double>& p) {
  const std::size_t d = p.size();
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "need at least two weights");
  double sum = 0;
  for (double w : p) {
    if (!(w >= 0)) throw Error(ErrorCode::InvalidArgument, "weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw Error(ErrorCode::InvalidArgument, "weights must sum to 1");
  const double a = p[d - 2];
  const double b = p[d - 1];
  ProductSplit out;
  if (a == 0 && b == 0) throw Error(ErrorCode::ZeroWeightPair, "last two weights are both zero");
  if (b == 0) {
    out.splitter = AdmissibleHyperplane<double>::coordinatePlane(d - 1, d - 2);
  } else {
    out.splitter = AdmissibleHyperplane<double>::make(d - 2, d - 1, std::sqrt(a / b));
  }
  out.reduced.assign(p.begin(), p.end() - 2);
  out.reduced.push_back(a + b);
  return out;
}

#define SELFDUAL_INSTANTIATE(T)                                                                 \
  template std::vector<Vector<T>> ridgeBodyVertices(const ConicPolytope<T>&,                    \
                                                    const AdmissibleHyperplane<T>&);            \
  template ConicPolytope<T> liftPolytope(const LiftInput<T>&);                                  \
  template ConicPolytope<T> rightCylinder(const std::vector<Vector<T>>&, const HalfCone<T>&,    \
                                          Numeric<T>);                                          \
  template ConicPolytope<T> algorithm1(const Vector<T>&, const std::vector<Vector<T>>&, Numeric<T>);

SELFDUAL_INSTANTIATE(Rational)
SELFDUAL_INSTANTIATE(double)

#undef SELFDUAL_INSTANTIATE

}  // namespace selfdual
