#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "selfdual/antinorm.hpp"
#include "selfdual/polyhedron.hpp"

namespace selfdual {

struct ResidualWitness {
  Vector<double> vertex;      // a vertex of P or of polar(P)
  Vector<double> constraint;  // the normal it violates
  double value = 0;           // (constraint, vertex), below 1
};

struct AutopolarityCertificate {
  bool verdict = false;
  double maxResidual = 0;
  double distance = 0;
  Vector<double> closestPoint;
  std::optional<ResidualWitness> witness;
};

// Compares P with its polar: exactly in rational mode, by bidirectional
// vertex/constraint residuals in float mode; also requires distance 1.
template <class T>
AutopolarityCertificate checkAutopolar(const ConicPolytope<T>& p);

struct SelfDualReport {
  double maxRel = 0;
  double meanRel = 0;
  Vector<double> worstRay;
  std::size_t samples = 0;
};

SelfDualReport checkSelfDualSampled(const Antinorm& f, std::size_t samples,
                                    std::size_t budget = 10000, std::uint64_t seed = 0);

enum class RejectionReason {
  ClosestPointMiss,
  TransversalNotOrthogonal,
  ObtuseDihedral,
  ReconstructionMismatch,
};

std::string_view toString(RejectionReason r);

struct LiftingCandidate {
  std::size_t i = 0;  // index pair, i < j
  std::size_t j = 0;
  std::optional<AdmissibleHyperplane<double>> splitter;
  std::optional<RejectionReason> reason;  // empty when accepted
  double worst = 0;                       // the offending cosine, if any
};

struct LiftingReport {
  std::vector<LiftingCandidate> candidates;
  std::optional<std::size_t> found;  // index of the first accepted candidate
  bool reconstructionEqual = false;
  Vector<double> closestPoint;
};

// Tries every admissible hyperplane through the closest point. Throws
// NotAutopolar when P is not autopolar.
template <class T>
LiftingReport detectAdmissibleLifting(const ConicPolytope<T>& p);

template <class T>
struct SplittingPlane {
  Vector<T> normal;
  Vector<T> p;  // the two spanning points
  Vector<T> q;
};

// Planes through the origin spanned by pairs of vertices (and the closest
// point) that cut P, are orthogonal to every affine facet they cross and make
// non-obtuse angles with the facets adjacent to the slice. d = 3 only.
template <class T>
std::vector<SplittingPlane<T>> findOrthogonalSplitting(const ConicPolytope<T>& p);

struct PropertyCheck {
  std::string name;
  bool passed = true;
  double worst = 0;
  std::size_t samples = 0;
};

struct PropertyReport {
  std::vector<PropertyCheck> checks;
  bool passed() const;
};

struct PropertyOptions {
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  DualSearchOptions search;
};

template <class T>
PropertyReport propertySuite(const ConicPolytope<T>& p, const PropertyOptions& options = {});
PropertyReport propertySuite(const Antinorm& f, const PropertyOptions& options = {});

}  // namespace selfdual
