#include "selfdual/verify.hpp"

#include <algorithm>
#include <cmath>

#include "selfdual/construct.hpp"
#include "selfdual/double_description.hpp"
#include "selfdual/linalg.hpp"
#include "selfdual/sampling.hpp"

namespace selfdual {

namespace {

template <class T>
struct Row {
  Vector<T> normal;
  T rhs;
};

template <class T>
std::vector<Vector<T>> homogenize(const std::vector<Vector<T>>& vertices,
                                  const std::vector<Vector<T>>& rays) {
  std::vector<Vector<T>> out;
  for (const auto& v : vertices) {
    Vector<T> z(v);
    z.push_back(T(1));
    out.push_back(std::move(z));
  }
  for (const auto& r : rays) {
    Vector<T> z(r);
    z.push_back(T(0));
    out.push_back(std::move(z));
  }
  return out;
}

// (a, x) - rhs * t for a homogenized generator (x, t).
template <class T>
T slack(const Row<T>& row, const Vector<T>& g) {
  T s = -row.rhs * g.back();
  for (std::size_t k = 0; k < row.normal.size(); ++k) s += row.normal[k] * g[k];
  return s;
}

template <class T>
T planeValue(const Vector<T>& n, const Vector<T>& g) {
  T s = 0;
  for (std::size_t k = 0; k < n.size(); ++k) s += n[k] * g[k];
  return s;
}

template <class T>
double cosine(const Vector<T>& a, const Vector<T>& b) {
  const Vector<double> x = toDouble(a);
  const Vector<double> y = toDouble(b);
  return linalg::dot(x, y) / std::sqrt(linalg::dot(x, x) * linalg::dot(y, y));
}

template <class T>
std::vector<Vector<T>> tightOn(const Row<T>& row, const std::vector<Vector<T>>& gens,
                               const Numeric<T>& num) {
  std::vector<Vector<T>> out;
  for (const auto& g : gens)
    if (num.isZero(slack(row, g))) out.push_back(g);
  return out;
}

struct Verdict {
  bool ok = true;
  double worst = 0;
};

// Every facet crossed by the plane {(n, x) = 0} must be orthogonal to it.
template <class T>
Verdict transversalCheck(const std::vector<Row<T>>& rows, const std::vector<Vector<T>>& gens,
                         const Vector<T>& n, const Numeric<T>& num) {
  Verdict v;
  for (const auto& row : rows) {
    bool pos = false;
    bool neg = false;
    for (const auto& g : tightOn(row, gens, num)) {
      const int s = num.sign(planeValue(n, g));
      pos = pos || s > 0;
      neg = neg || s < 0;
    }
    if (!(pos && neg)) continue;
    const double c = std::abs(cosine(row.normal, n));
    bool orthogonal = false;
    if constexpr (kIsExact<T>) {
      orthogonal = linalg::dot(row.normal, n) == 0;
    } else {
      orthogonal = c <= num.tol;
    }
    if (!orthogonal) {
      v.ok = false;
      v.worst = std::max(v.worst, c);
    }
  }
  return v;
}

// For both sides of the plane, facets of the slice that meet the plane in a
// (d-2)-face must make a non-obtuse angle with it: with inward normals this
// means (a, n_side) <= 0.
template <class T>
Verdict dihedralCheck(const ConicPolytope<T>& p, const Vector<T>& n, bool includeCoordinate) {
  const auto& num = p.numeric();
  const std::size_t dim = p.dim();
  Verdict v;
  for (int sgn : {1, -1}) {
    const Vector<T> side = linalg::scaled(n, T(sgn));
    std::vector<dd::HalfSpace<T>> hs;
    for (const auto& e : Ambient<T>::orthant(dim).rows()) hs.push_back({e, T(0)});
    hs.push_back({side, T(0)});
    for (const auto& a : p.constraints().affine) hs.push_back({a, T(1)});
    dd::Generators<T> slice;
    try {
      slice = dd::generatorsFromHalfSpaces(dim, hs, num);
    } catch (const Error&) {
      continue;
    }
    const auto gens = homogenize(slice.vertices, slice.rays);

    std::vector<Row<T>> rows;
    for (const auto& a : p.constraints().affine) rows.push_back({a, T(1)});
    if (includeCoordinate)
      for (const auto& e : Ambient<T>::orthant(dim).rows()) rows.push_back({e, T(0)});

    for (const auto& row : rows) {
      auto tight = tightOn(row, gens, num);
      if (linalg::rank(tight, num) != dim) continue;
      std::vector<Vector<T>> onPlane;
      for (const auto& g : tight)
        if (num.isZero(planeValue(side, g))) onPlane.push_back(g);
      if (linalg::rank(onPlane, num) + 1 != dim) continue;
      const double c = cosine(row.normal, side);
      bool obtuse = false;
      if constexpr (kIsExact<T>) {
        obtuse = linalg::dot(row.normal, side) > 0;
      } else {
        obtuse = c > num.tol;
      }
      if (obtuse) {
        v.ok = false;
        v.worst = std::max(v.worst, c);
      }
    }
  }
  return v;
}

template <class T>
AdmissibleHyperplane<double> toDoubleSplitter(const AdmissibleHyperplane<T>& h) {
  return {h.i, h.j, toDouble(h.mu)};
}

}  // namespace

// ---------------------------------------------------------------- autopolarity

template <class T>
AutopolarityCertificate checkAutopolar(const ConicPolytope<T>& p) {
  const auto& num = p.numeric();
  const ConicPolytope<T> q = polar(p);
  AutopolarityCertificate cert;
  bool residualsOk = true;
  double worstExcess = 0;

  auto scan = [&](const std::vector<Vector<T>>& verts, const std::vector<Vector<T>>& normals) {
    for (const auto& v : verts) {
      const Vector<double> vd = toDouble(v);
      const double scale = 1.0 + std::sqrt(linalg::dot(vd, vd));
      for (const auto& w : normals) {
        const T val = linalg::dot(w, v);
        const double r = toDouble(T(T(1) - val));
        cert.maxResidual = std::max(cert.maxResidual, r);
        bool violated = false;
        if constexpr (kIsExact<T>) {
          violated = val < 1;
        } else {
          violated = r > num.tol * scale;
        }
        if (violated) {
          residualsOk = false;
          if (r > worstExcess) {
            worstExcess = r;
            cert.witness = ResidualWitness{vd, toDouble(w), toDouble(val)};
          }
        }
      }
    }
  };
  // P inside polar(P): every vertex of P against the polar's normals, and back.
  scan(p.generators().vertices, q.constraints().affine);
  scan(q.generators().vertices, p.constraints().affine);

  const ClosestPoint<T> closest = distanceToOrigin(p);
  cert.distance = closest.value;
  cert.closestPoint = toDouble(closest.point);
  if constexpr (kIsExact<T>) {
    cert.verdict = residualsOk && canonicalEqual(q, p) && closest.squared == 1;
  } else {
    cert.verdict = residualsOk && std::abs(closest.value - 1.0) <= num.tol;
  }
  return cert;
}

SelfDualReport checkSelfDualSampled(const Antinorm& f, std::size_t samples, std::size_t budget,
                                    std::uint64_t seed) {
  Rng rng(seed);
  SelfDualReport report;
  report.samples = samples;
  DualSearchOptions options;
  options.budget = budget;
  options.seed = seed;
  double sum = 0;
  const auto rays = f.domain().rays();
  for (std::size_t s = 0; s < samples; ++s) {
    const Vector<double> y = sampleCone(rng, rays);
    const double fy = f.evaluateUnchecked(y);
    const double dual = dualEval(f, y, options);
    const double rel = std::abs(dual - fy) / std::max(fy, 1e-300);
    sum += rel;
    if (rel > report.maxRel || report.worstRay.empty()) {
      report.maxRel = std::max(report.maxRel, rel);
      report.worstRay = y;
    }
  }
  report.meanRel = samples ? sum / static_cast<double>(samples) : 0.0;
  return report;
}

std::string_view toString(RejectionReason r) {
  switch (r) {
    case RejectionReason::ClosestPointMiss: return "ClosestPointMiss";
    case RejectionReason::TransversalNotOrthogonal: return "TransversalNotOrthogonal";
    case RejectionReason::ObtuseDihedral: return "ObtuseDihedral";
    case RejectionReason::ReconstructionMismatch: return "ReconstructionMismatch";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- lifting detection

template <class T>
LiftingReport detectAdmissibleLifting(const ConicPolytope<T>& p) {
  const std::size_t dim = p.dim();
  if (dim < 2 || dim > 4) throw Error(ErrorCode::InvalidArgument, "dimension must be 2, 3 or 4");
  if (!p.ambient().isOrthant())
    throw Error(ErrorCode::InvalidArgument, "lifting detection needs a full-orthant body");
  if (!checkAutopolar(p).verdict) throw Error(ErrorCode::NotAutopolar, "the body is not autopolar");

  const auto& num = p.numeric();
  const Vector<T> a = distanceToOrigin(p).point;
  const auto& gen = p.generators();
  const auto gens = homogenize(gen.vertices, gen.rays);
  std::vector<Row<T>> rows;
  for (const auto& n : p.constraints().affine) rows.push_back({n, T(1)});
  for (const auto& h : p.constraints().homogeneous) rows.push_back({h, T(0)});

  LiftingReport report;
  report.closestPoint = toDouble(a);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) {
      LiftingCandidate cand;
      cand.i = i;
      cand.j = j;
      const bool zi = num.isZero(a[i]);
      const bool zj = num.isZero(a[j]);
      if (zi && zj) {
        cand.reason = RejectionReason::ClosestPointMiss;
        report.candidates.push_back(std::move(cand));
        continue;
      }
      const AdmissibleHyperplane<T> splitter =
          zj ? AdmissibleHyperplane<T>::coordinatePlane(j, i)
             : AdmissibleHyperplane<T>::make(i, j, zi ? T(0) : T(a[i] / a[j]));
      cand.splitter = toDoubleSplitter(splitter);
      const Vector<T> n = splitter.normal(dim);

      if (auto v = transversalCheck(rows, gens, n, num); !v.ok) {
        cand.reason = RejectionReason::TransversalNotOrthogonal;
        cand.worst = v.worst;
      } else if (auto w = dihedralCheck(p, n, true); !w.ok) {
        cand.reason = RejectionReason::ObtuseDihedral;
        cand.worst = w.worst;
      } else {
        bool equal = false;
        try {
          const Side side = splitter.mu == 0 ? Side::Two : Side::One;
          const auto g1 = sliceByHalfCone(p, HalfCone<T>{dim, splitter, side});
          equal = canonicalEqual(liftPolytope<T>({splitter, g1}), p);
        } catch (const Error&) {
          equal = false;
        }
        if (!equal) cand.reason = RejectionReason::ReconstructionMismatch;
      }
      if (!cand.reason && !report.found) {
        report.found = report.candidates.size();
        report.reconstructionEqual = true;
      }
      report.candidates.push_back(std::move(cand));
    }
  }
  return report;
}

// ---------------------------------------------------------------- orthogonal splitting

template <class T>
std::vector<SplittingPlane<T>> findOrthogonalSplitting(const ConicPolytope<T>& p) {
  if (p.dim() != 3) throw Error(ErrorCode::InvalidArgument, "orthogonal splitting search needs d = 3");
  if (!p.ambient().isOrthant())
    throw Error(ErrorCode::InvalidArgument, "orthogonal splitting search needs a full-orthant body");
  const auto& num = p.numeric();
  const auto& gen = p.generators();
  const auto gens = homogenize(gen.vertices, gen.rays);

  std::vector<Vector<T>> points;
  for (const auto& v : gen.vertices) dd::detail::pushUnique(points, v, num);
  dd::detail::pushUnique(points, distanceToOrigin(p).point, num);

  std::vector<Row<T>> affine;
  for (const auto& a : p.constraints().affine) affine.push_back({a, T(1)});

  std::vector<SplittingPlane<T>> out;
  std::vector<Vector<T>> seen;
  for (std::size_t s = 0; s < points.size(); ++s) {
    for (std::size_t t = s + 1; t < points.size(); ++t) {
      const auto& u = points[s];
      const auto& w = points[t];
      Vector<T> n{u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0]};
      linalg::rescale(n, num);
      if (linalg::isZeroVector(n, num)) continue;
      linalg::normalizeFirst(n, num);
      bool duplicate = false;
      for (const auto& m : seen) duplicate = duplicate || linalg::vectorsEqual(m, n, num);
      if (duplicate) continue;
      seen.push_back(n);

      bool pos = false;
      bool neg = false;
      for (const auto& g : gens) {
        const int sg = num.sign(planeValue(n, g));
        pos = pos || sg > 0;
        neg = neg || sg < 0;
      }
      if (!(pos && neg)) continue;
      if (!transversalCheck(affine, gens, n, num).ok) continue;
      if (!dihedralCheck(p, n, false).ok) continue;
      out.push_back({n, u, w});
    }
  }
  return out;
}

// ---------------------------------------------------------------- property suites

bool PropertyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

namespace {

constexpr double kSampleSlack = 1e-12;

// Homogeneity, concavity and Young's inequality for an evaluator pair.
template <class F, class D>
void antinormChecks(PropertyReport& report, const F& f, const D& dual, std::size_t dim,
                    std::size_t samples, std::size_t dualSamples, Rng& rng) {
  PropertyCheck homog{"homogeneity", true, 0, samples};
  PropertyCheck concave{"concavity", true, 0, samples};
  for (std::size_t s = 0; s < samples; ++s) {
    const auto x = sampleBox(rng, dim, 0.01, 2.0);
    const auto y = sampleBox(rng, dim, 0.01, 2.0);
    const double fx = f(x);
    const double lambda = rng.uniform(0.1, 10.0);
    const double h = std::abs(f(linalg::scaled(x, lambda)) - lambda * fx) / std::max(1.0, lambda * fx);
    homog.worst = std::max(homog.worst, h);
    const double gap = (fx + f(y)) / 2 - f(linalg::scaled(linalg::plus(x, y), 0.5));
    concave.worst = std::max(concave.worst, gap);
  }
  homog.passed = homog.worst <= kSampleSlack;
  concave.passed = concave.worst <= kSampleSlack;

  PropertyCheck young{"young", true, 0, dualSamples};
  double minSlack = 0;
  for (std::size_t s = 0; s < dualSamples; ++s) {
    const auto x = sampleBox(rng, dim, 0.01, 2.0);
    const auto y = sampleBox(rng, dim, 0.01, 2.0);
    minSlack = std::min(minSlack, linalg::dot(x, y) - f(x) * dual(y));
  }
  young.worst = -minSlack;
  young.passed = minSlack >= -kSampleSlack;

  report.checks.push_back(homog);
  report.checks.push_back(concave);
  report.checks.push_back(young);
}

template <class F>
PropertyCheck dominationCheck(const F& f, std::size_t dim, std::size_t samples, Rng& rng) {
  PropertyCheck c{"euclidean-domination", true, 0, samples};
  for (std::size_t s = 0; s < samples; ++s) {
    const auto x = sampleBox(rng, dim, 0.0, 2.0);
    const double norm = std::sqrt(linalg::dot(x, x));
    c.worst = std::max(c.worst, f(x) - norm);
  }
  c.passed = c.worst <= kSampleSlack;
  return c;
}

}  // namespace

template <class T>
PropertyReport propertySuite(const ConicPolytope<T>& p, const PropertyOptions& options) {
  PropertyReport report;
  Rng rng(options.seed);
  const std::size_t dim = p.dim();

  if (p.ambient().isOrthant()) {
    PropertyCheck bipolar{"bipolar", canonicalEqual(polar(polar(p)), p), 0, 1};
    report.checks.push_back(bipolar);
  }

  const Antinorm f = Antinorm::fromPolytope(p);
  auto eval = [&](const Vector<double>& x) { return f.evaluateUnchecked(x); };
  auto dual = [&](const Vector<double>& y) { return dualEval(f, y); };
  if (p.ambient().isOrthant())
    antinormChecks(report, eval, dual, dim, options.samples, options.samples, rng);

  PropertyCheck gauge{"gauge-membership", true, 0, options.samples};
  for (std::size_t s = 0; s < options.samples; ++s) {
    Vector<T> x;
    for (double c : sampleBox(rng, dim, 0.01, 2.0)) x.push_back(T(c));
    if (!p.ambient().contains(x, p.numeric())) continue;
    const bool inside = contains(p, x);
    const bool byGauge = p.numeric().geq(minkowskiFunctional(p, x), T(1));
    if (inside != byGauge) {
      gauge.passed = false;
      gauge.worst += 1;
    }
  }
  report.checks.push_back(gauge);

  if (p.ambient().isOrthant() && checkAutopolar(p).verdict) {
    report.checks.push_back(dominationCheck(eval, dim, options.samples, rng));
    PropertyCheck selfDual{"functional-self-duality", true, 0, options.samples};
    for (std::size_t s = 0; s < options.samples; ++s) {
      const auto x = sampleBox(rng, dim, 0.0, 2.0);
      selfDual.worst = std::max(selfDual.worst, std::abs(eval(x) - dual(x)));
    }
    selfDual.passed = selfDual.worst <= 1e-9;
    report.checks.push_back(selfDual);
  }
  return report;
}

PropertyReport propertySuite(const Antinorm& f, const PropertyOptions& options) {
  PropertyReport report;
  Rng rng(options.seed);
  const std::size_t dim = f.dim();
  if (f.domain().half)
    throw Error(ErrorCode::InvalidArgument, "property suite expects an antinorm on the orthant");
  auto eval = [&](const Vector<double>& x) { return f.evaluateUnchecked(x); };
  auto dual = [&](const Vector<double>& y) { return dualEval(f, y, options.search); };
  const std::size_t dualSamples = f.kind() == AntinormKind::PiecewiseLinear
                                      ? options.samples
                                      : std::min<std::size_t>(options.samples, 200);
  antinormChecks(report, eval, dual, dim, options.samples, dualSamples, rng);

  const SelfDualReport sd = checkSelfDualSampled(f, dualSamples, options.search.budget, options.seed);
  PropertyCheck selfDual{"sampled-self-duality", sd.maxRel <= 1e-6, sd.maxRel, sd.samples};
  report.checks.push_back(selfDual);
  if (selfDual.passed) report.checks.push_back(dominationCheck(eval, dim, options.samples, rng));
  return report;
}

#define SELFDUAL_INSTANTIATE(T)                                                              \
  template AutopolarityCertificate checkAutopolar(const ConicPolytope<T>&);                  \
  template LiftingReport detectAdmissibleLifting(const ConicPolytope<T>&);                   \
  template std::vector<SplittingPlane<T>> findOrthogonalSplitting(const ConicPolytope<T>&);  \
  template PropertyReport propertySuite(const ConicPolytope<T>&, const PropertyOptions&);

SELFDUAL_INSTANTIATE(Rational)
SELFDUAL_INSTANTIATE(double)

#undef SELFDUAL_INSTANTIATE

}  // namespace selfdual
