#include "selfdual/polyhedron.hpp"

#include <algorithm>
#include <functional>

#include "selfdual/double_description.hpp"
#include "selfdual/linalg.hpp"

namespace selfdual {

namespace {

template <class T>
bool lexLess(const Vector<T>& a, const Vector<T>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

template <class T>
void checkConversionDim(std::size_t dim) {
  if (dim > kMaxConversionDim)
    throw Error(ErrorCode::DimensionTooLarge, "representation conversion supports dim <= 4");
  if (dim < 2) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 2");
}

template <class T>
bool isOrigin(const Vector<T>& x, const Numeric<T>& num) {
  return linalg::isZeroVector(x, num);
}

// Rank of the homogenized generators tight on (a, x) >= rhs.
template <class T>
std::size_t tightGeneratorRank(const Vector<T>& a, const T& rhs, const GeneratorForm<T>& gen,
                               const Numeric<T>& num) {
  std::vector<Vector<T>> tight;
  for (const auto& v : gen.vertices) {
    if (num.equal(linalg::dot(a, v), rhs)) {
      Vector<T> z(v);
      z.push_back(T(1));
      tight.push_back(std::move(z));
    }
  }
  for (const auto& r : gen.rays) {
    if (num.isZero(linalg::dot(a, r))) {
      Vector<T> z(r);
      z.push_back(T(0));
      tight.push_back(std::move(z));
    }
  }
  return linalg::rank(std::move(tight), num);
}

template <class T>
GeneratorForm<T> canonicalGenerators(dd::Generators<T> g) {
  GeneratorForm<T> out{std::move(g.vertices), std::move(g.rays)};
  sortLex(out.vertices);
  sortLex(out.rays);
  return out;
}

template <class T>
GeneratorForm<T> convertToGenerators(const Ambient<T>& amb, const ConstraintForm<T>& con,
                                     const Numeric<T>& num) {
  checkConversionDim<T>(amb.dim());
  std::vector<dd::HalfSpace<T>> hs;
  for (const auto& h : con.homogeneous) hs.push_back({h, T(0)});
  for (const auto& a : con.affine) hs.push_back({a, T(1)});
  return canonicalGenerators(dd::generatorsFromHalfSpaces(amb.dim(), hs, num));
}

template <class T>
ConstraintForm<T> convertToConstraints(const Ambient<T>& amb, const GeneratorForm<T>& gen,
                                       const Numeric<T>& num) {
  checkConversionDim<T>(amb.dim());
  dd::Generators<T> g{gen.vertices, gen.rays};
  ConstraintForm<T> out;
  for (auto& h : dd::facetsFromGenerators(amb.dim(), g, num)) {
    const int s = num.sign(h.rhs);
    if (s > 0) {
      Vector<T> a = linalg::scaled(h.normal, T(1) / h.rhs);
      dd::detail::pushUnique(out.affine, std::move(a), num);
    } else if (s < 0) {
      throw Error(ErrorCode::InvalidArgument, "generators do not form a conic body");
    }
  }
  sortLex(out.affine);
  out.homogeneous = amb.rows();
  return out;
}

}  // namespace

// ---------------------------------------------------------------- hyperplanes

template <class T>
AdmissibleHyperplane<T> AdmissibleHyperplane<T>::make(std::size_t i, std::size_t j, T mu) {
  if (i == j) throw Error(ErrorCode::InvalidArgument, "splitter indices must differ");
  if (mu < 0) throw Error(ErrorCode::InvalidArgument, "splitter slope must be nonnegative");
  return {i, j, std::move(mu)};
}

template <class T>
AdmissibleHyperplane<T> AdmissibleHyperplane<T>::coordinatePlane(std::size_t zeroIndex,
                                                                  std::size_t other) {
  return make(zeroIndex, other, T(0));
}

template <class T>
Vector<T> AdmissibleHyperplane<T>::normal(std::size_t dim) const {
  Vector<T> n(dim, T(0));
  n[i] = 1;
  n[j] = -mu;
  return n;
}

template <class T>
T AdmissibleHyperplane<T>::value(const Vector<T>& x) const {
  return x[i] - mu * x[j];
}

template <class T>
Vector<T> HalfCone<T>::inwardNormal() const {
  Vector<T> n = splitter.normal(dim);
  if (side == Side::One)
    for (auto& c : n) c = -c;
  return n;
}

template <class T>
Vector<T> projectOntoHyperplane(const AdmissibleHyperplane<T>& h, const Vector<T>& x) {
  const Vector<T> n = h.normal(x.size());
  const T c = linalg::dot(n, x) / linalg::dot(n, n);
  return linalg::minus(x, linalg::scaled(n, c));
}

// ---------------------------------------------------------------- ambient

template <class T>
Ambient<T> Ambient<T>::orthant(std::size_t dim) {
  Ambient a;
  a.dim_ = dim;
  return a;
}

template <class T>
Ambient<T> Ambient<T>::halfCone(HalfCone<T> h) {
  if (h.splitter.i >= h.dim || h.splitter.j >= h.dim)
    throw Error(ErrorCode::InvalidArgument, "splitter index out of range");
  Ambient a;
  a.dim_ = h.dim;
  a.half_ = std::move(h);
  return a;
}

template <class T>
std::vector<Vector<T>> Ambient<T>::rows() const {
  std::vector<Vector<T>> r;
  for (std::size_t k = 0; k < dim_; ++k) r.push_back(linalg::unitVector<T>(dim_, k));
  if (half_) r.push_back(half_->inwardNormal());
  return r;
}

template <class T>
std::vector<Vector<T>> Ambient<T>::rays(const Numeric<T>& num) const {
  std::vector<Vector<T>> out;
  if (!half_) {
    for (std::size_t k = 0; k < dim_; ++k) out.push_back(linalg::unitVector<T>(dim_, k));
    return out;
  }
  auto cone = dd::coneFromInequalities(rows(), dim_, num);
  for (auto& r : cone.rays) {
    linalg::normalizeFirst(r, num);
    dd::detail::pushUnique(out, std::move(r), num);
  }
  sortLex(out);
  return out;
}

template <class T>
bool Ambient<T>::contains(const Vector<T>& x, const Numeric<T>& num) const {
  if (x.size() != dim_) return false;
  for (const auto& r : rows())
    if (!num.geq(linalg::dot(r, x), T(0))) return false;
  return true;
}

template <class T>
bool Ambient<T>::equals(const Ambient& o, const Numeric<T>& num) const {
  if (dim_ != o.dim_ || half_.has_value() != o.half_.has_value()) return false;
  if (!half_) return true;
  return half_->splitter.i == o.half_->splitter.i && half_->splitter.j == o.half_->splitter.j &&
         half_->side == o.half_->side && num.equal(half_->splitter.mu, o.half_->splitter.mu);
}

// ---------------------------------------------------------------- polytope

template <class T>
ConicPolytope<T> ConicPolytope<T>::fromVertices(std::vector<Vector<T>> points,
                                                Ambient<T> ambient, Numeric<T> num) {
  const std::size_t dim = ambient.dim();
  checkConversionDim<T>(dim);
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "no points given");
  if (ambient.half() && ambient.half()->degenerate())
    throw Error(ErrorCode::EmptyInterior, "degenerate half-cone");

  std::vector<Vector<T>> unique;
  for (auto& p : points) {
    if (p.size() != dim) throw Error(ErrorCode::InvalidArgument, "point dimension mismatch");
    if (isOrigin(p, num)) throw Error(ErrorCode::OriginIncluded, "the origin is not allowed");
    if (!ambient.contains(p, num))
      throw Error(ErrorCode::OutsideAmbient, "point outside the ambient cone", toDouble(p));
    dd::detail::pushUnique(unique, std::move(p), num);
  }

  GeneratorForm<T> raw{unique, ambient.rays(num)};
  ConstraintForm<T> con = convertToConstraints(ambient, raw, num);

  // A point is a vertex iff its tight constraint normals span R^d.
  GeneratorForm<T> gen;
  gen.rays = raw.rays;
  for (const auto& p : unique) {
    std::vector<Vector<T>> tight;
    for (const auto& a : con.affine)
      if (num.equal(linalg::dot(a, p), T(1))) tight.push_back(a);
    for (const auto& h : con.homogeneous)
      if (num.isZero(linalg::dot(h, p))) tight.push_back(h);
    if (linalg::rank(std::move(tight), num) == dim) gen.vertices.push_back(p);
  }
  sortLex(gen.vertices);

  auto state = std::make_shared<State>();
  state->ambient = std::move(ambient);
  state->num = num;
  state->gen = std::move(gen);
  state->con = std::move(con);
  return ConicPolytope(std::move(state));
}

template <class T>
ConicPolytope<T> ConicPolytope<T>::fromVertices(std::vector<Vector<T>> points, Numeric<T> num) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "no points given");
  const std::size_t dim = points.front().size();
  return fromVertices(std::move(points), Ambient<T>::orthant(dim), num);
}

template <class T>
ConicPolytope<T> ConicPolytope<T>::fromInequalities(std::vector<Vector<T>> normals,
                                                    Ambient<T> ambient, Numeric<T> num) {
  const std::size_t dim = ambient.dim();
  checkConversionDim<T>(dim);
  if (normals.empty()) throw Error(ErrorCode::InvalidArgument, "no constraints given");
  if (ambient.half() && ambient.half()->degenerate())
    throw Error(ErrorCode::EmptyInterior, "degenerate half-cone");

  const auto rays = ambient.rays(num);
  for (const auto& a : normals) {
    if (a.size() != dim) throw Error(ErrorCode::InvalidArgument, "normal dimension mismatch");
    if (linalg::isZeroVector(a, num)) throw Error(ErrorCode::ZeroNormal, "zero normal");
    for (const auto& r : rays)
      if (!num.geq(linalg::dot(a, r), T(0)))
        throw Error(ErrorCode::OutsideAmbient, "normal outside the dual of the ambient cone",
                    toDouble(a));
  }

  ConstraintForm<T> all{normals, ambient.rows()};
  GeneratorForm<T> gen = convertToGenerators(ambient, all, num);

  // Keep only facets: tight homogenized generators of rank d.
  ConstraintForm<T> con;
  con.homogeneous = ambient.rows();
  for (auto& a : normals)
    if (tightGeneratorRank(a, T(1), gen, num) == dim)
      dd::detail::pushUnique(con.affine, std::move(a), num);
  sortLex(con.affine);

  auto state = std::make_shared<State>();
  state->ambient = std::move(ambient);
  state->num = num;
  state->gen = std::move(gen);
  state->con = std::move(con);
  return ConicPolytope(std::move(state));
}

template <class T>
ConicPolytope<T> ConicPolytope<T>::fromInequalities(std::vector<Vector<T>> normals,
                                                    Numeric<T> num) {
  if (normals.empty()) throw Error(ErrorCode::InvalidArgument, "no constraints given");
  const std::size_t dim = normals.front().size();
  return fromInequalities(std::move(normals), Ambient<T>::orthant(dim), num);
}

template <class T>
const GeneratorForm<T>& ConicPolytope<T>::generators() const {
  const State& s = *state_;
  std::call_once(s.genOnce, [&s] {
    if (!s.gen) s.gen = convertToGenerators(s.ambient, *s.con, s.num);
  });
  return *s.gen;
}

template <class T>
const ConstraintForm<T>& ConicPolytope<T>::constraints() const {
  const State& s = *state_;
  std::call_once(s.conOnce, [&s] {
    if (!s.con) s.con = convertToConstraints(s.ambient, *s.gen, s.num);
  });
  return *s.con;
}

// ---------------------------------------------------------------- operations

template <class T>
void sortLex(std::vector<Vector<T>>& vs) {
  std::sort(vs.begin(), vs.end(), lexLess<T>);
}

template <class T>
ConicPolytope<T> polar(const ConicPolytope<T>& p) {
  if (!p.ambient().isOrthant())
    throw Error(ErrorCode::InvalidArgument, "polar requires the full orthant as ambient");
  return ConicPolytope<T>::fromInequalities(p.generators().vertices, p.ambient(), p.numeric());
}

template <class T>
T minkowskiFunctional(const ConicPolytope<T>& p, const Vector<T>& x) {
  const auto& aff = p.constraints().affine;
  T best = linalg::dot(aff.front(), x);
  for (std::size_t k = 1; k < aff.size(); ++k) best = std::min(best, linalg::dot(aff[k], x));
  return best;
}

template <class T>
bool contains(const ConicPolytope<T>& p, const Vector<T>& x) {
  const auto& num = p.numeric();
  if (!p.ambient().contains(x, num)) return false;
  for (const auto& a : p.constraints().affine)
    if (!num.geq(linalg::dot(a, x), T(1))) return false;
  return true;
}

template <class T>
ClosestPoint<T> distanceToOrigin(const ConicPolytope<T>& p) {
  const std::size_t dim = p.dim();
  const auto& num = p.numeric();
  const auto& con = p.constraints();

  std::vector<Vector<T>> rows;
  std::vector<T> rhs;
  for (const auto& a : con.affine) {
    rows.push_back(a);
    rhs.push_back(T(1));
  }
  for (const auto& h : con.homogeneous) {
    rows.push_back(h);
    rhs.push_back(T(0));
  }

  std::optional<ClosestPoint<T>> best;
  std::vector<std::size_t> pick;
  // Each face's affine hull is cut out by <= d independent tight rows; the
  // least-norm point of {M x = b} is M^T (M M^T)^{-1} b.
  auto visit = [&](const std::vector<std::size_t>& idx) {
    const std::size_t k = idx.size();
    std::vector<Vector<T>> gram(k, Vector<T>(k));
    Vector<T> b(k);
    for (std::size_t r = 0; r < k; ++r) {
      b[r] = rhs[idx[r]];
      for (std::size_t c = 0; c < k; ++c) gram[r][c] = linalg::dot(rows[idx[r]], rows[idx[c]]);
    }
    bool anyAffine = false;
    for (const auto& v : b) anyAffine = anyAffine || v != 0;
    if (!anyAffine) return;
    auto y = linalg::solve(gram, b, num);
    if (!y) return;
    Vector<T> x(dim, T(0));
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < dim; ++c) x[c] += (*y)[r] * rows[idx[r]][c];
    if (!contains(p, x)) return;
    T sq = linalg::dot(x, x);
    if (!best || sq < best->squared) {
      best = ClosestPoint<T>{sq, std::sqrt(toDouble(sq)), std::move(x)};
    }
  };
  // Enumerate subsets of size 1..dim in lexicographic order.
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (!pick.empty()) visit(pick);
    if (pick.size() == dim) return;
    for (std::size_t r = start; r < rows.size(); ++r) {
      pick.push_back(r);
      rec(r + 1);
      pick.pop_back();
    }
  };
  rec(0);
  if (!best) throw Error(ErrorCode::EmptyInterior, "no feasible point found");
  return *best;
}

template <class T>
bool canonicalEqual(const ConicPolytope<T>& p, const ConicPolytope<T>& q) {
  const auto& num = p.numeric();
  if (p.dim() != q.dim() || !p.ambient().equals(q.ambient(), num)) return false;
  const auto& a = p.generators();
  const auto& b = q.generators();
  return linalg::sameVectorSet(a.vertices, b.vertices, num) &&
         linalg::sameVectorSet(a.rays, b.rays, num);
}

template <class T>
ConicPolytope<T> sliceByHalfCone(const ConicPolytope<T>& p, const HalfCone<T>& h) {
  if (!p.ambient().isOrthant())
    throw Error(ErrorCode::InvalidArgument, "slicing requires the full orthant as ambient");
  if (h.dim != p.dim()) throw Error(ErrorCode::InvalidArgument, "half-cone dimension mismatch");
  return ConicPolytope<T>::fromInequalities(p.constraints().affine, Ambient<T>::halfCone(h),
                                            p.numeric());
}

ConicPolytope<double> toFloat(const ConicPolytope<Rational>& p, double tol) {
  Numeric<double> num{tol};
  Ambient<double> amb = Ambient<double>::orthant(p.dim());
  if (const auto& h = p.ambient().half()) {
    amb = Ambient<double>::halfCone(
        {h->dim, {h->splitter.i, h->splitter.j, toDouble(h->splitter.mu)}, h->side});
  }
  std::vector<Vector<double>> pts;
  for (const auto& v : p.generators().vertices) pts.push_back(toDouble(v));
  return ConicPolytope<double>::fromVertices(std::move(pts), std::move(amb), num);
}

#define SELFDUAL_INSTANTIATE(T)                                                           \
  template struct AdmissibleHyperplane<T>;                                                \
  template struct HalfCone<T>;                                                            \
  template class Ambient<T>;                                                              \
  template class ConicPolytope<T>;                                                        \
  template ConicPolytope<T> polar(const ConicPolytope<T>&);                               \
  template T minkowskiFunctional(const ConicPolytope<T>&, const Vector<T>&);              \
  template bool contains(const ConicPolytope<T>&, const Vector<T>&);                      \
  template ClosestPoint<T> distanceToOrigin(const ConicPolytope<T>&);                     \
  template bool canonicalEqual(const ConicPolytope<T>&, const ConicPolytope<T>&);         \
  template ConicPolytope<T> sliceByHalfCone(const ConicPolytope<T>&, const HalfCone<T>&); \
  template Vector<T> projectOntoHyperplane(const AdmissibleHyperplane<T>&, const Vector<T>&); \
  template void sortLex(std::vector<Vector<T>>&);

SELFDUAL_INSTANTIATE(Rational)
SELFDUAL_INSTANTIATE(double)

#undef SELFDUAL_INSTANTIATE

}  // namespace selfdual
