#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "selfdual/polyhedron.hpp"
#include "selfdual/scalar.hpp"

namespace selfdual {

// Where an antinorm is defined: the orthant R^d_+ or one admissible half-cone.
struct Domain {
  std::size_t dim = 0;
  std::optional<HalfCone<double>> half;

  static Domain orthant(std::size_t dim) { return {dim, std::nullopt}; }
  static Domain halfCone(const HalfCone<double>& h) { return {h.dim, h}; }

  bool contains(const Vector<double>& x, double tol = 1e-12) const;
  // Extreme rays (e_k for the orthant).
  std::vector<Vector<double>> rays() const;
};

enum class AntinormKind { PiecewiseLinear, Product, OrthogonalExtension, Concatenation, ConeDual };

struct DualSearchOptions {
  std::size_t budget = 10000;  // objective evaluations
  std::uint64_t seed = 0;
  double stepTol = 1e-13;
};

struct DualEstimate {
  double value = 0;
  Vector<double> argmin;
  std::size_t evaluations = 0;
  bool converged = false;
};

class Antinorm;

namespace detail {
struct AntinormNode;
}

// Immutable handle to an evaluatable antinorm (double arithmetic).
class Antinorm {
 public:
  // eval(x) = min_i (a_i, x) on the domain.
  static Antinorm piecewiseLinear(std::vector<Vector<double>> normals, Domain domain);
  static Antinorm piecewiseLinear(std::vector<Vector<double>> normals);
  // Minkowski functional of a conic polytope; keeps its vertices for exact duals.
  template <class T>
  static Antinorm fromPolytope(const ConicPolytope<T>& ball);
  // prod_i (x_i / sqrt(p_i))^{p_i}, zero weights dropped.
  static Antinorm product(Vector<double> p);
  // Phi(x) = phi(ridge coordinates of the projection of x onto V).
  static Antinorm orthogonalExtension(Antinorm phi, AdmissibleHyperplane<double> splitter);
  // f1 on one side of the splitter, f2 on the other; ridge agreement is sampled.
  static Antinorm concatenate(Antinorm f1, Antinorm f2, AdmissibleHyperplane<double> splitter,
                              double tol = 1e-9, std::uint64_t seed = 0);
  // g(y) = inf over the domain of f of (y, x) / f(x), evaluated on `target`.
  static Antinorm coneDual(Antinorm f, Domain target, DualSearchOptions options = {});

  double operator()(const Vector<double>& x) const;  // throws OutsideDomain
  double evaluateUnchecked(const Vector<double>& x) const;

  std::size_t dim() const;
  const Domain& domain() const;
  AntinormKind kind() const;

  // Piecewise-linear data (empty for other kinds).
  const std::vector<Vector<double>>& normals() const;
  const std::vector<Vector<double>>& ballVertices() const;
  // Product weights (empty for other kinds).
  const Vector<double>& weights() const;
  // Composite parts.
  const Antinorm& first() const;   // phi for extensions, f1 for concatenations and duals
  const Antinorm& second() const;  // f2 for concatenations
  const AdmissibleHyperplane<double>& splitter() const;
  const DualSearchOptions& searchOptions() const;

 private:
  explicit Antinorm(std::shared_ptr<const detail::AntinormNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::AntinormNode> node_;
};

// Ridge coordinates of x: the coordinates other than i, j in increasing
// order, then (x, u) with u = (mu e_i + e_j)/sqrt(1 + mu^2).
Vector<double> ridgeCoordinates(const AdmissibleHyperplane<double>& h, const Vector<double>& x);
Vector<double> fromRidgeCoordinates(const AdmissibleHyperplane<double>& h, const Vector<double>& z);
// Extreme rays of the ridge V intersected with the orthant.
std::vector<Vector<double>> ridgeRays(const AdmissibleHyperplane<double>& h, std::size_t dim);

template <class T>
T dualEvalPolyhedral(const ConicPolytope<T>& p, const Vector<T>& y);

// Minimizes (y, x)/f(x) over x = sum lambda_k rays_k, lambda in the simplex.
// Deterministic for fixed options; a larger budget only extends the sequence.
DualEstimate minimizeRatioOverCone(const Antinorm& f, const Vector<double>& y,
                                   const std::vector<Vector<double>>& rays,
                                   const DualSearchOptions& options);
// Search over f's own domain.
DualEstimate dualSearch(const Antinorm& f, const Vector<double>& y,
                        const DualSearchOptions& options = {});
// Throws BudgetExhausted (carrying the best value) when the search did not converge.
double dualEvalNumeric(const Antinorm& f, const Vector<double>& y,
                       const DualSearchOptions& options = {});
// Exact for piecewise-linear antinorms with a known ball, numeric otherwise.
double dualEval(const Antinorm& f, const Vector<double>& y, const DualSearchOptions& options = {});

// (p_1/x_1, ..., p_d/x_d) f(x)
Vector<double> productGradient(const Vector<double>& p, const Vector<double>& x);

}  // namespace selfdual
