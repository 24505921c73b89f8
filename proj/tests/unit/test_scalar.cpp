#include <gtest/gtest.h>

#include <cmath>

#include "selfdual/error.hpp"
#include "selfdual/linalg.hpp"
#include "selfdual/sampling.hpp"
#include "selfdual/scalar.hpp"

using namespace selfdual;

TEST(Scalar, ParsesFractionsIntegersAndDecimalsExactly) {
  EXPECT_EQ(parseRational("3/5"), Rational(3, 5));
  EXPECT_EQ(parseRational("-7"), Rational(-7));
  EXPECT_EQ(parseRational("0.25"), Rational(1, 4));
  EXPECT_EQ(parseRational("1e-3"), Rational(1, 1000));
  EXPECT_EQ(parseRational("1.5E2"), Rational(150));
  EXPECT_EQ(parseRational(" 6/4 "), Rational(3, 2));
}

TEST(Scalar, RejectsMalformedLiterals) {
  for (const char* bad : {"", "1/0", "abc", "1/2/3", "1..2", "--1"}) {
    EXPECT_THROW(parseRational(bad), Error) << bad;
  }
}

TEST(Scalar, DecimalDetection) {
  EXPECT_TRUE(isDecimalLiteral("0.5"));
  EXPECT_TRUE(isDecimalLiteral("2e3"));
  EXPECT_FALSE(isDecimalLiteral("3/5"));
  EXPECT_FALSE(isDecimalLiteral("12"));
}

TEST(Scalar, FormatRoundTrips) {
  EXPECT_EQ(formatRational(Rational(6, 4)), "3/2");
  EXPECT_EQ(formatRational(Rational(-2)), "-2");
  for (double v : {0.1, 1.0 / 3.0, 2.0, 1e-300, 0.7806247497997998}) {
    EXPECT_EQ(std::stod(formatDouble(v)), v);
  }
}

TEST(Scalar, FloatEqualityIsRelativeWithFloorOne) {
  const Numeric<double> num{1e-9};
  EXPECT_TRUE(num.equal(1e6, 1e6 + 1e-4));
  EXPECT_FALSE(num.equal(1.0, 1.0 + 1e-8));
  EXPECT_TRUE(num.isZero(5e-10));
  EXPECT_EQ(num.sign(-1e-3), -1);
  EXPECT_TRUE(num.geq(1.0 - 1e-10, 1.0));
}

TEST(Linalg, RankAndSolveExact) {
  const Numeric<Rational> num;
  std::vector<Vector<Rational>> rows{{1, 2, 3}, {2, 4, 6}, {0, 1, 1}};
  EXPECT_EQ(linalg::rank(rows, num), 2u);
  const auto x = linalg::solve<Rational>({{2, 1}, {1, 3}}, {3, 5}, num);
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0], Rational(4, 5));
  EXPECT_EQ((*x)[1], Rational(7, 5));
  EXPECT_FALSE(linalg::solve<Rational>({{1, 2}, {2, 4}}, {1, 1}, num));
}

TEST(Sampling, SeededStreamsAreReproducible) {
  Rng a(42);
  Rng b(42);
  for (int k = 0; k < 100; ++k) EXPECT_EQ(a.next(), b.next());
  Rng c(7);
  for (int k = 0; k < 1000; ++k) {
    const double u = c.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(Sampling, SimplexPointsSumToOne) {
  Rng rng(3);
  for (int k = 0; k < 100; ++k) {
    const auto x = sampleSimplex(rng, 4);
    double s = 0;
    for (double c : x) {
      EXPECT_GE(c, 0.0);
      s += c;
    }
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}
