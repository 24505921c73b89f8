#include "selfdual/antinorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "selfdual/double_description.hpp"
#include "selfdual/linalg.hpp"
#include "selfdual/sampling.hpp"

namespace selfdual {

namespace detail {

struct AntinormNode {
  Domain domain;
  AntinormKind kind = AntinormKind::PiecewiseLinear;
  std::vector<Vector<double>> normals;
  std::vector<Vector<double>> vertices;
  Vector<double> weights;
  std::optional<Antinorm> first;
  std::optional<Antinorm> second;
  AdmissibleHyperplane<double> splitter;
  DualSearchOptions options;
  std::vector<Vector<double>> searchRays;
};

}  // namespace detail

namespace {

constexpr double kDomainTol = 1e-12;
const Numeric<double> kBallNumeric{1e-9};

HalfCone<double> toDoubleHalfCone(const HalfCone<Rational>& h) {
  return {h.dim, {h.splitter.i, h.splitter.j, toDouble(h.splitter.mu)}, h.side};
}

std::vector<Vector<double>> ballVerticesOf(const std::vector<Vector<double>>& normals,
                                           const Domain& domain) {
  std::vector<dd::HalfSpace<double>> hs;
  for (std::size_t k = 0; k < domain.dim; ++k) hs.push_back({linalg::unitVector<double>(domain.dim, k), 0.0});
  if (domain.half) hs.push_back({domain.half->inwardNormal(), 0.0});
  for (const auto& a : normals) hs.push_back({a, 1.0});
  auto gen = dd::generatorsFromHalfSpaces(domain.dim, hs, kBallNumeric);
  sortLex(gen.vertices);
  return gen.vertices;
}

bool sameSplitter(const AdmissibleHyperplane<double>& a, const AdmissibleHyperplane<double>& b) {
  return a.i == b.i && a.j == b.j && std::abs(a.mu - b.mu) <= 1e-12 * std::max(1.0, std::abs(a.mu));
}

// Objective (y, x)/f(x) over simplex weights, with an evaluation budget.
class RatioObjective {
 public:
  RatioObjective(const Antinorm& f, const Vector<double>& y, const std::vector<Vector<double>>& rays,
                 std::size_t budget)
      : f_(f), y_(y), rays_(rays), budget_(budget) {}

  std::optional<double> operator()(const Vector<double>& lambda) {
    if (evaluations_ >= budget_) return std::nullopt;
    ++evaluations_;
    Vector<double> x(y_.size(), 0.0);
    for (std::size_t k = 0; k < rays_.size(); ++k)
      for (std::size_t c = 0; c < x.size(); ++c) x[c] += lambda[k] * rays_[k][c];
    const double fx = f_.evaluateUnchecked(x);
    const double v = fx > 0 ? linalg::dot(y_, x) / fx : std::numeric_limits<double>::infinity();
    if (v < best_) {
      best_ = v;
      argmin_ = x;
    }
    return v;
  }

  std::size_t evaluations() const { return evaluations_; }
  double best() const { return best_; }
  const Vector<double>& argmin() const { return argmin_; }

 private:
  const Antinorm& f_;
  const Vector<double>& y_;
  const std::vector<Vector<double>>& rays_;
  std::size_t budget_;
  std::size_t evaluations_ = 0;
  double best_ = std::numeric_limits<double>::infinity();
  Vector<double> argmin_;
};

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t t = 1; t <= k; ++t) r = r * (n - k + t) / t;
  return r;
}

// Grid resolution depends on the dimension only, so the evaluation sequence
// does not depend on the budget.
std::size_t gridResolution(std::size_t m) {
  if (m <= 1) return 1;
  std::size_t res = 64;
  while (res > 1 && binomial(res + m - 1, m - 1) > 500) --res;
  return res;
}

void enumerateCompositions(std::size_t total, std::size_t parts, Vector<double>& current,
                           std::size_t pos, double scale, std::vector<Vector<double>>& out) {
  if (pos + 1 == parts) {
    current[pos] = static_cast<double>(total) * scale;
    out.push_back(current);
    return;
  }
  for (std::size_t k = 0; k <= total; ++k) {
    current[pos] = static_cast<double>(k) * scale;
    enumerateCompositions(total - k, parts, current, pos + 1, scale, out);
  }
}

}  // namespace

// ---------------------------------------------------------------- domain

bool Domain::contains(const Vector<double>& x, double tol) const {
  if (x.size() != dim) return false;
  const double scale = std::max(1.0, linalg::maxAbs(x));
  for (double c : x)
    if (!(c >= -tol * scale)) return false;
  if (half) {
    const double v = linalg::dot(half->inwardNormal(), x);
    if (v < -tol * scale * (1.0 + half->splitter.mu)) return false;
  }
  return true;
}

std::vector<Vector<double>> Domain::rays() const {
  if (!half) return Ambient<double>::orthant(dim).rays(kBallNumeric);
  return Ambient<double>::halfCone(*half).rays(Numeric<double>{1e-12});
}

// ---------------------------------------------------------------- ridge helpers

Vector<double> ridgeCoordinates(const AdmissibleHyperplane<double>& h, const Vector<double>& x) {
  Vector<double> z;
  z.reserve(x.size() - 1);
  for (std::size_t k = 0; k < x.size(); ++k)
    if (k != h.i && k != h.j) z.push_back(x[k]);
  z.push_back((h.mu * x[h.i] + x[h.j]) / std::sqrt(1.0 + h.mu * h.mu));
  return z;
}

Vector<double> fromRidgeCoordinates(const AdmissibleHyperplane<double>& h, const Vector<double>& z) {
  const std::size_t dim = z.size() + 1;
  Vector<double> x(dim, 0.0);
  std::size_t pos = 0;
  for (std::size_t k = 0; k < dim; ++k)
    if (k != h.i && k != h.j) x[k] = z[pos++];
  const double s = std::sqrt(1.0 + h.mu * h.mu);
  x[h.i] = z.back() * h.mu / s;
  x[h.j] = z.back() / s;
  return x;
}

std::vector<Vector<double>> ridgeRays(const AdmissibleHyperplane<double>& h, std::size_t dim) {
  std::vector<Vector<double>> rays;
  for (std::size_t k = 0; k < dim; ++k)
    if (k != h.i && k != h.j) rays.push_back(linalg::unitVector<double>(dim, k));
  Vector<double> u(dim, 0.0);
  const double s = std::sqrt(1.0 + h.mu * h.mu);
  u[h.i] = h.mu / s;
  u[h.j] = 1.0 / s;
  rays.push_back(std::move(u));
  return rays;
}

// ---------------------------------------------------------------- constructors

Antinorm Antinorm::piecewiseLinear(std::vector<Vector<double>> normals, Domain domain) {
  if (normals.empty()) throw Error(ErrorCode::InvalidArgument, "no normals given");
  for (const auto& a : normals) {
    if (a.size() != domain.dim) throw Error(ErrorCode::InvalidArgument, "normal dimension mismatch");
    if (linalg::isZeroVector(a, kBallNumeric)) throw Error(ErrorCode::ZeroNormal, "zero normal");
  }
  auto node = std::make_shared<detail::AntinormNode>();
  node->kind = AntinormKind::PiecewiseLinear;
  node->vertices = ballVerticesOf(normals, domain);
  node->normals = std::move(normals);
  node->domain = std::move(domain);
  return Antinorm(std::move(node));
}

Antinorm Antinorm::piecewiseLinear(std::vector<Vector<double>> normals) {
  if (normals.empty()) throw Error(ErrorCode::InvalidArgument, "no normals given");
  const std::size_t dim = normals.front().size();
  return piecewiseLinear(std::move(normals), Domain::orthant(dim));
}

template <class T>
Antinorm Antinorm::fromPolytope(const ConicPolytope<T>& ball) {
  auto node = std::make_shared<detail::AntinormNode>();
  node->kind = AntinormKind::PiecewiseLinear;
  node->domain = Domain::orthant(ball.dim());
  if (const auto& h = ball.ambient().half()) {
    if constexpr (kIsExact<T>) {
      node->domain = Domain::halfCone(toDoubleHalfCone(*h));
    } else {
      node->domain = Domain::halfCone(*h);
    }
  }
  for (const auto& a : ball.constraints().affine) node->normals.push_back(toDouble(a));
  for (const auto& v : ball.generators().vertices) node->vertices.push_back(toDouble(v));
  return Antinorm(std::move(node));
}

template Antinorm Antinorm::fromPolytope(const ConicPolytope<Rational>&);
template Antinorm Antinorm::fromPolytope(const ConicPolytope<double>&);

Antinorm Antinorm::product(Vector<double> p) {
  if (p.empty()) throw Error(ErrorCode::InvalidArgument, "empty weight vector");
  double sum = 0;
  for (double w : p) {
    if (!(w >= 0)) throw Error(ErrorCode::InvalidArgument, "weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw Error(ErrorCode::InvalidArgument, "weights must sum to 1");
  auto node = std::make_shared<detail::AntinormNode>();
  node->kind = AntinormKind::Product;
  node->domain = Domain::orthant(p.size());
  node->weights = std::move(p);
  return Antinorm(std::move(node));
}

Antinorm Antinorm::orthogonalExtension(Antinorm phi, AdmissibleHyperplane<double> splitter) {
  const std::size_t dim = phi.dim() + 1;
  if (splitter.i >= dim || splitter.j >= dim || splitter.i == splitter.j || splitter.mu < 0)
    throw Error(ErrorCode::InvalidArgument, "invalid splitter for the extension");
  if (phi.domain().half)
    throw Error(ErrorCode::InvalidArgument, "the ridge antinorm must live on the full ridge");
  auto node = std::make_shared<detail::AntinormNode>();
  node->kind = AntinormKind::OrthogonalExtension;
  node->domain = Domain::orthant(dim);
  node->first = std::move(phi);
  node->splitter = splitter;
  return Antinorm(std::move(node));
}

Antinorm Antinorm::concatenate(Antinorm f1, Antinorm f2, AdmissibleHyperplane<double> splitter,
                               double tol, std::uint64_t seed) {
  const auto& h1 = f1.domain().half;
  const auto& h2 = f2.domain().half;
  if (!h1 || !h2 || !sameSplitter(h1->splitter, splitter) || !sameSplitter(h2->splitter, splitter) ||
      h1->side == h2->side || f1.dim() != f2.dim())
    throw Error(ErrorCode::InvalidArgument, "domains must be the two sides of the splitter");

  const std::size_t dim = f1.dim();
  Rng rng(seed);
  const auto rays = ridgeRays(splitter, dim);
  double worst = 0;
  Vector<double> witness;
  for (int s = 0; s < 100; ++s) {
    const Vector<double> z = sampleCone(rng, rays);
    const double a = f1.evaluateUnchecked(z);
    const double b = f2.evaluateUnchecked(z);
    const double rel = std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
    if (rel > worst) {
      worst = rel;
      witness = z;
    }
  }
  if (worst > tol)
    throw Error(ErrorCode::RidgeMismatch, "antinorms disagree on the ridge", witness, worst);

  auto node = std::make_shared<detail::AntinormNode>();
  node->kind = AntinormKind::Concatenation;
  node->domain = Domain::orthant(dim);
  node->first = std::move(f1);
  node->second = std::move(f2);
  node->splitter = splitter;
  return Antinorm(std::move(node));
}

Antinorm Antinorm::coneDual(Antinorm f, Domain target, DualSearchOptions options) {
  if (target.dim != f.dim()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  auto node = std::make_shared<detail::AntinormNode>();
  node->kind = AntinormKind::ConeDual;
  node->domain = std::move(target);
  node->searchRays = f.domain().rays();
  node->first = std::move(f);
  node->options = options;
  return Antinorm(std::move(node));
}

// ---------------------------------------------------------------- evaluation

double Antinorm::operator()(const Vector<double>& x) const {
  if (!node_->domain.contains(x, kDomainTol))
    throw Error(ErrorCode::OutsideDomain, "point outside the antinorm's domain", x);
  return evaluateUnchecked(x);
}

double Antinorm::evaluateUnchecked(const Vector<double>& x) const {
  const auto& n = *node_;
  switch (n.kind) {
    case AntinormKind::PiecewiseLinear: {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& a : n.normals) best = std::min(best, linalg::dot(a, x));
      return best;
    }
    case AntinormKind::Product: {
      double logSum = 0;
      for (std::size_t k = 0; k < n.weights.size(); ++k) {
        const double p = n.weights[k];
        if (p == 0) continue;
        if (!(x[k] > 0)) return 0.0;
        logSum += p * (std::log(x[k]) - 0.5 * std::log(p));
      }
      return std::exp(logSum);
    }
    case AntinormKind::OrthogonalExtension:
      return n.first->evaluateUnchecked(ridgeCoordinates(n.splitter, x));
    case AntinormKind::Concatenation: {
      const auto& h1 = *n.first->domain().half;
      return linalg::dot(h1.inwardNormal(), x) >= 0 ? n.first->evaluateUnchecked(x)
                                                    : n.second->evaluateUnchecked(x);
    }
    case AntinormKind::ConeDual:
      return minimizeRatioOverCone(*n.first, x, n.searchRays, n.options).value;
  }
  return 0.0;
}

std::size_t Antinorm::dim() const { return node_->domain.dim; }
const Domain& Antinorm::domain() const { return node_->domain; }
AntinormKind Antinorm::kind() const { return node_->kind; }
const std::vector<Vector<double>>& Antinorm::normals() const { return node_->normals; }
const std::vector<Vector<double>>& Antinorm::ballVertices() const { return node_->vertices; }
const Vector<double>& Antinorm::weights() const { return node_->weights; }

const Antinorm& Antinorm::first() const {
  if (!node_->first) throw Error(ErrorCode::InvalidArgument, "antinorm has no first part");
  return *node_->first;
}

const Antinorm& Antinorm::second() const {
  if (!node_->second) throw Error(ErrorCode::InvalidArgument, "antinorm has no second part");
  return *node_->second;
}

const AdmissibleHyperplane<double>& Antinorm::splitter() const { return node_->splitter; }
const DualSearchOptions& Antinorm::searchOptions() const { return node_->options; }

// ---------------------------------------------------------------- duals

template <class T>
T dualEvalPolyhedral(const ConicPolytope<T>& p, const Vector<T>& y) {
  const auto& verts = p.generators().vertices;
  T best = linalg::dot(verts.front(), y);
  for (std::size_t k = 1; k < verts.size(); ++k) best = std::min(best, linalg::dot(verts[k], y));
  return best;
}

template Rational dualEvalPolyhedral(const ConicPolytope<Rational>&, const Vector<Rational>&);
template double dualEvalPolyhedral(const ConicPolytope<double>&, const Vector<double>&);

DualEstimate minimizeRatioOverCone(const Antinorm& f, const Vector<double>& y,
                                   const std::vector<Vector<double>>& rays,
                                   const DualSearchOptions& options) {
  const std::size_t m = rays.size();
  if (m == 0 || y.size() != f.dim()) throw Error(ErrorCode::InvalidArgument, "bad search cone");
  RatioObjective objective(f, y, rays, options.budget);
  auto finish = [&](bool converged) {
    return DualEstimate{objective.best(), objective.argmin(), objective.evaluations(), converged};
  };

  // Coarse simplex grid.
  const std::size_t res = gridResolution(m);
  std::vector<Vector<double>> grid;
  Vector<double> current(m);
  enumerateCompositions(res, m, current, 0, 1.0 / static_cast<double>(res), grid);
  std::vector<std::pair<double, std::size_t>> scored;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    auto v = objective(grid[k]);
    if (!v) return finish(false);
    scored.emplace_back(*v, k);
  }
  if (m == 1) return finish(true);
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  // Poll directions: pairwise exchanges plus seeded random tangent directions.
  std::vector<Vector<double>> dirs;
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t l = 0; l < m; ++l)
      if (k != l) {
        Vector<double> d(m, 0.0);
        d[k] = 1.0;
        d[l] = -1.0;
        dirs.push_back(std::move(d));
      }
  Rng rng(options.seed);
  for (std::size_t r = 0; r < m; ++r) {
    Vector<double> d(m);
    double mean = 0;
    for (auto& c : d) {
      c = rng.uniform(-1.0, 1.0);
      mean += c / static_cast<double>(m);
    }
    for (auto& c : d) c -= mean;
    const double scale = linalg::maxAbs(d);
    if (scale == 0) continue;
    for (auto& c : d) c /= scale;
    dirs.push_back(d);
    for (auto& c : d) c = -c;
    dirs.push_back(std::move(d));
  }

  const std::size_t seeds = std::min<std::size_t>(3, scored.size());
  const double h0 = 1.0 / static_cast<double>(res);
  for (std::size_t s = 0; s < seeds; ++s) {
    Vector<double> lambda = grid[scored[s].second];
    double value = scored[s].first;
    double h = h0;
    while (h >= options.stepTol) {
      bool improved = false;
      for (const auto& d : dirs) {
        // Largest feasible step along d, capped at h.
        double step = h;
        for (std::size_t k = 0; k < m; ++k)
          if (d[k] < 0) step = std::min(step, lambda[k] / -d[k]);
        if (step <= 0) continue;
        Vector<double> cand(lambda);
        for (std::size_t k = 0; k < m; ++k) cand[k] = std::max(0.0, cand[k] + step * d[k]);
        auto v = objective(cand);
        if (!v) return finish(false);
        if (*v < value) {
          value = *v;
          lambda = std::move(cand);
          improved = true;
          break;
        }
      }
      h = improved ? std::min(2.0 * h, h0) : 0.5 * h;
    }
  }
  return finish(true);
}

DualEstimate dualSearch(const Antinorm& f, const Vector<double>& y, const DualSearchOptions& options) {
  return minimizeRatioOverCone(f, y, f.domain().rays(), options);
}

double dualEvalNumeric(const Antinorm& f, const Vector<double>& y, const DualSearchOptions& options) {
  for (double c : y)
    if (!(c >= 0)) throw Error(ErrorCode::OutsideDomain, "dual argument must be nonnegative", y);
  const DualEstimate est = dualSearch(f, y, options);
  if (!est.converged) throw BudgetExhausted(est.value, est.evaluations);
  return est.value;
}

double dualEval(const Antinorm& f, const Vector<double>& y, const DualSearchOptions& options) {
  if (f.kind() == AntinormKind::PiecewiseLinear && !f.ballVertices().empty()) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& v : f.ballVertices()) best = std::min(best, linalg::dot(v, y));
    return best;
  }
  return dualSearch(f, y, options).value;
}

Vector<double> productGradient(const Vector<double>& p, const Vector<double>& x) {
  if (p.size() != x.size()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  for (double w : p)
    if (!(w > 0)) throw Error(ErrorCode::InvalidArgument, "all weights must be positive");
  for (double c : x)
    if (!(c > 0)) throw Error(ErrorCode::ZeroCoordinate, "all coordinates must be positive", x);
  const double f = Antinorm::product(p).evaluateUnchecked(x);
  Vector<double> g(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) g[k] = p[k] / x[k] * f;
  return g;
}

}  // namespace selfdual
