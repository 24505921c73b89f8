#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "selfdual/error.hpp"
#include "selfdual/scalar.hpp"

namespace selfdual {

enum class Side { One, Two };

// V = {x : x_i = mu x_j}, indices 0-based.
template <class T>
struct AdmissibleHyperplane {
  std::size_t i = 0;
  std::size_t j = 1;
  T mu = 1;

  // Validates i != j and mu >= 0.
  static AdmissibleHyperplane make(std::size_t i, std::size_t j, T mu);
  // x_j = 0, i.e. mu = infinity for the pair (i, j).
  static AdmissibleHyperplane coordinatePlane(std::size_t zeroIndex, std::size_t other);

  Vector<T> normal(std::size_t dim) const;  // e_i - mu e_j
  T value(const Vector<T>& x) const;        // x_i - mu x_j
  bool operator==(const AdmissibleHyperplane& o) const = default;
};

// One side of an admissible hyperplane inside the orthant.
// Side One: mu x_j - x_i >= 0 (contains e_j); Side Two: x_i - mu x_j >= 0.
template <class T>
struct HalfCone {
  std::size_t dim = 0;
  AdmissibleHyperplane<T> splitter;
  Side side = Side::One;

  Vector<T> inwardNormal() const;
  // Side One with mu = 0 is the hyperplane itself.
  bool degenerate() const { return side == Side::One && splitter.mu == 0; }
  HalfCone opposite() const { return {dim, splitter, side == Side::One ? Side::Two : Side::One}; }
  bool operator==(const HalfCone& o) const = default;
};

template <class T>
class Ambient {
 public:
  static Ambient orthant(std::size_t dim);
  static Ambient halfCone(HalfCone<T> h);

  std::size_t dim() const { return dim_; }
  bool isOrthant() const { return !half_.has_value(); }
  const std::optional<HalfCone<T>>& half() const { return half_; }

  // Homogeneous constraint rows (all x_k >= 0, plus the splitter row).
  std::vector<Vector<T>> rows() const;
  // Extreme rays, canonical form.
  std::vector<Vector<T>> rays(const Numeric<T>& num) const;
  bool contains(const Vector<T>& x, const Numeric<T>& num) const;
  bool equals(const Ambient& o, const Numeric<T>& num) const;

 private:
  std::size_t dim_ = 0;
  std::optional<HalfCone<T>> half_;
};

template <class T>
struct GeneratorForm {
  std::vector<Vector<T>> vertices;
  std::vector<Vector<T>> rays;
};

// Affine constraints (a, x) >= 1 and homogeneous constraints (h, x) >= 0.
template <class T>
struct ConstraintForm {
  std::vector<Vector<T>> affine;
  std::vector<Vector<T>> homogeneous;
};

template <class T>
class ConicPolytope {
 public:
  static ConicPolytope fromVertices(std::vector<Vector<T>> points, Ambient<T> ambient,
                                    Numeric<T> num = {});
  static ConicPolytope fromVertices(std::vector<Vector<T>> points, Numeric<T> num = {});
  static ConicPolytope fromInequalities(std::vector<Vector<T>> normals, Ambient<T> ambient,
                                        Numeric<T> num = {});
  static ConicPolytope fromInequalities(std::vector<Vector<T>> normals, Numeric<T> num = {});

  std::size_t dim() const { return state_->ambient.dim(); }
  const Ambient<T>& ambient() const { return state_->ambient; }
  const Numeric<T>& numeric() const { return state_->num; }

  // Lazily converted and cached; safe for concurrent readers.
  const GeneratorForm<T>& generators() const;
  const ConstraintForm<T>& constraints() const;

 private:
  struct State {
    Ambient<T> ambient;
    Numeric<T> num;
    mutable std::once_flag genOnce;
    mutable std::once_flag conOnce;
    mutable std::optional<GeneratorForm<T>> gen;
    mutable std::optional<ConstraintForm<T>> con;
  };
  explicit ConicPolytope(std::shared_ptr<State> s) : state_(std::move(s)) {}
  std::shared_ptr<State> state_;
};

inline constexpr std::size_t kMaxConversionDim = 4;

template <class T>
const GeneratorForm<T>& generatorsOf(const ConicPolytope<T>& p) {
  return p.generators();
}

template <class T>
const ConstraintForm<T>& constraintsOf(const ConicPolytope<T>& p) {
  return p.constraints();
}

template <class T>
ConicPolytope<T> polar(const ConicPolytope<T>& p);

template <class T>
T minkowskiFunctional(const ConicPolytope<T>& p, const Vector<T>& x);

template <class T>
bool contains(const ConicPolytope<T>& p, const Vector<T>& x);

template <class T>
struct ClosestPoint {
  T squared;     // |x|^2, exact in rational mode
  double value;  // |x|
  Vector<T> point;
};

template <class T>
ClosestPoint<T> distanceToOrigin(const ConicPolytope<T>& p);

template <class T>
bool canonicalEqual(const ConicPolytope<T>& p, const ConicPolytope<T>& q);

template <class T>
ConicPolytope<T> sliceByHalfCone(const ConicPolytope<T>& p, const HalfCone<T>& h);

// Same polytope re-expressed in another scalar type.
ConicPolytope<double> toFloat(const ConicPolytope<Rational>& p, double tol = 1e-9);

// Orthogonal projection onto V.
template <class T>
Vector<T> projectOntoHyperplane(const AdmissibleHyperplane<T>& h, const Vector<T>& x);

// Lexicographic sort used by canonical forms.
template <class T>
void sortLex(std::vector<Vector<T>>& vs);

}  // namespace selfdual
