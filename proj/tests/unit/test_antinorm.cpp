#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "selfdual/antinorm.hpp"
#include "selfdual/linalg.hpp"
#include "selfdual/sampling.hpp"

using namespace selfdual;
using fixture::qvs;

namespace {

const double kRt2 = std::sqrt(2.0);

AdmissibleHyperplane<double> splitter43() { return AdmissibleHyperplane<double>::make(0, 1, 0.75); }

}  // namespace

// ---------------------------------------------------------------- eval

TEST(Eval, ProductOfTwoHalves) {
  const auto f = Antinorm::product({0.5, 0.5});
  EXPECT_NEAR(f({2, 1}), 2.0, 1e-15);
  EXPECT_NEAR(f({1 / kRt2, 1 / kRt2}), 1.0, 1e-15);
}

TEST(Eval, PiecewiseLinearMinimum) {
  const auto f = Antinorm::piecewiseLinear({{1, 2}, {2, 1}});
  EXPECT_DOUBLE_EQ(f({1, 1}), 3.0);
  EXPECT_DOUBLE_EQ(f({1, 0}), 1.0);
}

TEST(Eval, OutsideDomainIsRejected) {
  const auto f = Antinorm::product({0.5, 0.5});
  EXPECT_THROW(f({-1, 1}), Error);
  const Domain k1 = Domain::halfCone({2, splitter43(), Side::Two});
  const auto g = Antinorm::piecewiseLinear({{0.6, 0.8}}, k1);
  EXPECT_THROW(g({0, 1}), Error);
  EXPECT_NO_THROW(g({1, 0}));
}

TEST(Eval, ZeroWeightsReduceTheDimension) {
  const auto f = Antinorm::product({0.0, 1.0});
  EXPECT_DOUBLE_EQ(f({5, 3}), 3.0);
}

TEST(Eval, HomogeneousAndConcaveOnSamples) {
  Rng rng(1);
  const auto f = Antinorm::product({0.2, 0.3, 0.5});
  for (int s = 0; s < 200; ++s) {
    const auto x = sampleBox(rng, 3, 0.01, 2);
    const auto y = sampleBox(rng, 3, 0.01, 2);
    EXPECT_NEAR(f(linalg::scaled(x, 3.5)), 3.5 * f(x), 1e-12);
    EXPECT_GE(f(linalg::scaled(linalg::plus(x, y), 0.5)) + 1e-12, 0.5 * (f(x) + f(y)));
  }
}

// ---------------------------------------------------------------- duals

TEST(DualPolyhedral, MinimumOverVertices) {
  const auto p = ConicPolytope<Rational>::fromVertices(qvs({{"1", "2"}, {"2", "1"}}));
  EXPECT_EQ(dualEvalPolyhedral(p, {Rational(1), Rational(1)}), 3);
  const auto corner = ConicPolytope<Rational>::fromVertices(qvs({{"1", "1"}}));
  EXPECT_EQ(dualEvalPolyhedral(corner, {Rational(1), Rational(0)}), 1);
}

TEST(DualPolyhedral, EqualsGaugeOfThePolar) {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = randomConicPolytope(rng, 3, 5);
    const auto q = polar(p);
    for (int s = 0; s < 10; ++s) {
      Vector<Rational> y;
      for (double c : sampleBox(rng, 3, 0, 2)) y.push_back(Rational(c));
      EXPECT_EQ(dualEvalPolyhedral(p, y), minkowskiFunctional(q, y));
    }
  }
}

TEST(DualNumeric, ProductAgreesWithClosedForm) {
  const auto f = Antinorm::product({0.5, 0.5});
  const Vector<double> y{1 / kRt2, 1 / kRt2};
  EXPECT_NEAR(dualEvalNumeric(f, y), 1.0, 1e-6);
  EXPECT_NEAR(oracle::productDualClosedForm({0.5, 0.5}, y), 1.0, 1e-12);

  Rng rng(4);
  const Vector<double> p{0.2, 0.3, 0.5};
  const auto g = Antinorm::product(p);
  for (int s = 0; s < 30; ++s) {
    const auto z = sampleBox(rng, 3, 0.05, 2);
    const double ref = oracle::productDualClosedForm(p, z);
    EXPECT_NEAR(dualEvalNumeric(g, z), ref, 1e-6 * ref);
  }
}

TEST(DualNumeric, AgreesWithPolyhedralDual) {
  const auto p = ConicPolytope<Rational>::fromVertices(qvs({{"1", "1"}}));
  const auto f = Antinorm::fromPolytope(p);
  EXPECT_NEAR(dualEvalNumeric(f, {1, 0}), 1.0, 1e-9);
  EXPECT_DOUBLE_EQ(dualEval(f, {1, 0}), 1.0);
}

TEST(DualNumeric, ProductIsSelfDual) {
  const auto f = Antinorm::product({0.3, 0.7});
  EXPECT_NEAR(dualEvalNumeric(f, {1, 1}), f({1, 1}), 1e-6);
}

TEST(DualNumeric, MonotoneInBudget) {
  const auto f = Antinorm::product({0.2, 0.3, 0.5});
  const Vector<double> y{0.3, 1.1, 0.7};
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t budget : {50u, 200u, 1000u, 5000u, 20000u}) {
    const auto est = dualSearch(f, y, {budget, 0, 1e-13});
    EXPECT_LE(est.value, previous);
    EXPECT_LE(est.evaluations, budget);
    previous = est.value;
  }
}

TEST(DualNumeric, TinyBudgetReportsTheBestValue) {
  const auto f = Antinorm::product({0.2, 0.3, 0.5});
  try {
    dualEvalNumeric(f, {0.3, 1.1, 0.7}, {20, 0, 1e-13});
    FAIL() << "expected BudgetExhausted";
  } catch (const BudgetExhausted& e) {
    EXPECT_GE(e.best(), oracle::productDualClosedForm({0.2, 0.3, 0.5}, {0.3, 1.1, 0.7}) - 1e-12);
    EXPECT_EQ(e.code(), ErrorCode::BudgetExhausted);
  }
}

TEST(DualNumeric, PiecewiseLinearDoubleDual) {
  // f** = f: the dual of the exact dual, evaluated numerically.
  const auto p = ConicPolytope<Rational>::fromVertices(qvs({{"1", "2"}, {"2", "1"}}));
  const auto f = Antinorm::fromPolytope(p);
  const auto fstar = Antinorm::fromPolytope(polar(p));
  Rng rng(6);
  for (int s = 0; s < 20; ++s) {
    const auto x = sampleBox(rng, 2, 0.05, 2);
    EXPECT_NEAR(dualEvalNumeric(fstar, x), f(x), 1e-9 * std::max(1.0, f(x)));
  }
}

// ---------------------------------------------------------------- gradient

TEST(Gradient, ProductExample) {
  const auto g = productGradient({0.5, 0.5}, {2, 1});
  EXPECT_NEAR(g[0], 0.5, 1e-15);
  EXPECT_NEAR(g[1], 1.0, 1e-15);
}

TEST(Gradient, FiniteDifferencesEulerAndDegreeZero) {
  Rng rng(12);
  const Vector<double> p{0.2, 0.3, 0.5};
  for (int s = 0; s < 50; ++s) {
    const auto x = sampleBox(rng, 3, 0.1, 2);
    const auto g = productGradient(p, x);
    const auto g2 = productGradient(p, linalg::scaled(x, 2.0));
    for (int k = 0; k < 3; ++k) {
      auto xp = x;
      auto xm = x;
      xp[k] += 1e-6;
      xm[k] -= 1e-6;
      const double fd = (oracle::productValue(p, xp) - oracle::productValue(p, xm)) / 2e-6;
      EXPECT_NEAR(g[k], fd, 1e-6 * std::abs(fd));
      EXPECT_NEAR(g2[k], g[k], 1e-12 * std::abs(g[k]));
    }
    EXPECT_NEAR(linalg::dot(g, x), oracle::productValue(p, x), 1e-10);
  }
}

TEST(Gradient, Errors) {
  EXPECT_THROW(productGradient({0.5, 0.5}, {0, 1}), Error);
  EXPECT_THROW(productGradient({1.0, 0.0}, {1, 1}), Error);
}

// ---------------------------------------------------------------- ridge maps and extensions

TEST(Ridge, CoordinatesRoundTrip) {
  const auto h = AdmissibleHyperplane<double>::make(0, 2, 0.75);
  const Vector<double> x{0.6, 2.0, 0.8};  // on V
  const auto z = ridgeCoordinates(h, x);
  ASSERT_EQ(z.size(), 2u);
  EXPECT_DOUBLE_EQ(z[0], 2.0);
  EXPECT_NEAR(z[1], 1.0, 1e-15);
  const auto back = fromRidgeCoordinates(h, z);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(back[k], x[k], 1e-15);
}

TEST(Extension, LineAntinormGivesALinearForm) {
  const auto phi = Antinorm::piecewiseLinear({{1.0}});
  const auto big = Antinorm::orthogonalExtension(phi, splitter43());
  Rng rng(3);
  for (int s = 0; s < 50; ++s) {
    const auto x = sampleBox(rng, 2, 0, 3);
    EXPECT_NEAR(big(x), 0.6 * x[0] + 0.8 * x[1], 1e-14);
  }
}

TEST(Extension, RestrictsToPhiAndIgnoresNormalDirections) {
  const auto phi = Antinorm::product({0.4, 0.6});
  const auto h = AdmissibleHyperplane<double>::make(1, 2, 2.0);
  const auto big = Antinorm::orthogonalExtension(phi, h);
  Rng rng(5);
  const Vector<double> n = h.normal(3);
  for (int s = 0; s < 50; ++s) {
    const auto z = sampleBox(rng, 2, 0.1, 2);
    const auto x = fromRidgeCoordinates(h, z);
    EXPECT_NEAR(big(x), phi(z), 1e-13);
    // Moving along the normal while staying in the orthant keeps the value.
    const double t = 0.1 * std::min(x[2], 1.0);
    const auto y = linalg::plus(x, linalg::scaled(n, -t / 2.0));
    if (y[1] >= 0 && y[2] >= 0) {
      EXPECT_NEAR(big(y), big(x), 1e-12);
    }
  }
}

// ---------------------------------------------------------------- concatenation

TEST(Concatenate, SameAntinormOnBothSides) {
  const std::vector<Vector<double>> normals{{1, 2}, {2, 1}};
  const auto h = AdmissibleHyperplane<double>::make(0, 1, 1.0);
  const auto f1 = Antinorm::piecewiseLinear(normals, Domain::halfCone({2, h, Side::One}));
  const auto f2 = Antinorm::piecewiseLinear(normals, Domain::halfCone({2, h, Side::Two}));
  const auto f = Antinorm::concatenate(f1, f2, h);
  const auto g = Antinorm::piecewiseLinear(normals);
  Rng rng(8);
  for (int s = 0; s < 100; ++s) {
    const auto x = sampleBox(rng, 2, 0, 3);
    EXPECT_DOUBLE_EQ(f(x), g(x));
  }
}

TEST(Concatenate, MismatchOnTheRidge) {
  const auto h = AdmissibleHyperplane<double>::make(0, 1, 1.0);
  const auto f1 = Antinorm::piecewiseLinear({{1, 1}}, Domain::halfCone({2, h, Side::One}));
  const auto f2 = Antinorm::piecewiseLinear({{2, 2}}, Domain::halfCone({2, h, Side::Two}));
  try {
    Antinorm::concatenate(f1, f2, h);
    FAIL() << "expected RidgeMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RidgeMismatch);
    ASSERT_TRUE(e.value());
    EXPECT_NEAR(*e.value(), 0.5, 1e-12);
  }
}
