// Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "selfdual/construct.hpp"
#include "selfdual/linalg.hpp"
#include "selfdual/sampling.hpp"
#include "selfdual/verify.hpp"

using namespace selfdual;
using fixture::qv;
using fixture::qvs;

namespace {

using Clock = std::chrono::steady_clock;

double secondsSince(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int criterion, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, detail.c_str());
  std::fflush(stdout);
  EXPECT_TRUE(ok) << "criterion " << criterion << ": " << detail;
}

template <class T>
std::vector<Vector<T>> sorted(std::vector<Vector<T>> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<Vector<double>> unitSamples(Rng& rng, std::size_t dim, std::size_t count) {
  std::vector<Vector<double>> out;
  for (std::size_t s = 0; s < count; ++s) {
    auto x = sampleSimplex(rng, dim);
    out.push_back(linalg::scaled(x, 1.0 / oracle::norm(x)));
  }
  return out;
}

}  // namespace

TEST(Criterion, C01_ExactPlanarAutopolarity) {
  const auto t0 = Clock::now();
  const auto g = algorithm1(qv({"3/5", "4/5"}), qvs({{"1", "1/2"}}));
  const bool equal = canonicalEqual(polar(g), g);
  const double secs = secondsSince(t0);
  std::ostringstream d;
  d << "polar(G) == G exactly: " << (equal ? "yes" : "no") << ", " << secs << " s (limit 1 s)";
  report(1, equal && secs < 1.0, d.str());
}

TEST(Criterion, C02_BipolarSuite) {
  const auto t0 = Clock::now();
  Rng rng(2024);
  int passed = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = randomConicPolytope(rng, 2 + rng.below(3), 8);
    passed += canonicalEqual(polar(polar(p)), p) ? 1 : 0;
  }
  const double secs = secondsSince(t0);
  std::ostringstream d;
  d << passed << "/100 satisfy P** = P, " << secs << " s (limit 30 s)";
  report(2, passed == 100 && secs < 30.0, d.str());
}

TEST(Criterion, C03_P3Fixture) {
  const auto pn = fixture::p3();
  const auto& a3 = pn.points[2];
  const Vector<double> expected{3.0 / 8.0, std::sqrt(39.0) / 8.0, 0.5};
  double pointErr = 0;
  for (int k = 0; k < 3; ++k) pointErr = std::max(pointErr, std::abs(a3[k] - expected[k]));
  double ipErr = 0;
  for (int k = 0; k < 3; ++k) ipErr = std::max(ipErr, std::abs(linalg::dot(pn.points[k], a3) - 1.0));
  const auto c = checkAutopolar(pn.polytope);
  const bool ok = pointErr <= 1e-12 && ipErr <= 1e-12 && c.verdict && c.maxResidual <= 1e-12 &&
                  std::abs(c.distance - 1.0) <= 1e-12;
  std::ostringstream d;
  d << "|A3 - expected| = " << pointErr << ", max |(A_k, A3) - 1| = " << ipErr
    << ", residual = " << c.maxResidual << ", distance = " << c.distance;
  report(3, ok, d.str());
}

TEST(Criterion, C04_LiftingDetection) {
  const auto r3 = detectAdmissibleLifting(fixture::p3().polytope);
  const auto r4 = detectAdmissibleLifting(fixture::p4().polytope);
  const auto r5 = detectAdmissibleLifting(fixture::p5().polytope);
  bool allRejected = r5.candidates.size() == 3;
  std::ostringstream reasons;
  for (const auto& c : r5.candidates) {
    allRejected = allRejected && c.reason.has_value();
    reasons << " (" << c.i + 1 << "," << c.j + 1 << "):"
            << (c.reason ? std::string(toString(*c.reason)) : std::string("accepted"));
  }
  const bool ok = r3.found && r3.reconstructionEqual && r4.found && r4.reconstructionEqual &&
                  !r5.found && allRejected;
  std::ostringstream d;
  d << "P3 " << (r3.found ? "lifting" : "none") << ", P4 " << (r4.found ? "lifting" : "none")
    << ", P5 " << (r5.found ? "lifting" : "none") << ";" << reasons.str();
  report(4, ok, d.str());
}

TEST(Criterion, C05_ProductSelfDuality) {
  bool ok = true;
  std::ostringstream d;
  for (const Vector<double>& p : {Vector<double>{0.3, 0.7}, Vector<double>{0.2, 0.3, 0.5}}) {
    const auto r = checkSelfDualSampled(Antinorm::product(p), 1000, 10000, 5);
    ok = ok && r.samples == 1000 && r.maxRel <= 1e-6;
    d << "d=" << p.size() << " max rel " << r.maxRel << "; ";
  }
  d << "tolerance 1e-6";
  report(5, ok, d.str());
}

TEST(Criterion, C06_YoungInequality) {
  Rng rng(66);
  const auto polygon = Antinorm::fromPolytope(fixture::polygon());
  const auto product = Antinorm::product({0.3, 0.7});
  double worst = std::numeric_limits<double>::infinity();
  for (const Antinorm* f : {&polygon, &product}) {
    for (int s = 0; s < 10000; ++s) {
      const auto x = sampleBox(rng, 2, 0.01, 3);
      const auto y = sampleBox(rng, 2, 0.01, 3);
      worst = std::min(worst, linalg::dot(x, y) - (*f)(x) * dualEval(*f, y));
    }
  }
  std::ostringstream d;
  d << "min (x,y) - f(x) f*(y) over 2 x 10^4 pairs = " << worst << " (bound -1e-12)";
  report(6, worst >= -1e-12, d.str());
}

TEST(Criterion, C07_EuclideanDomination) {
  Rng rng(77);
  bool ok = true;
  std::ostringstream d;
  auto dominated = [&](const Antinorm& f, const Vector<double>& a, const char* name) {
    double excess = -std::numeric_limits<double>::infinity();
    for (const auto& x : unitSamples(rng, f.dim(), 1000)) excess = std::max(excess, f(x) - 1.0);
    const double eq = std::abs(f(a) - oracle::norm(a));
    ok = ok && excess <= 1e-12 && eq <= 1e-12;
    d << name << ": max f(x)-|x| = " << excess << ", |f(a)-|a|| = " << eq << "; ";
  };

  const auto gp = fixture::polygon();
  const auto cg = checkAutopolar(gp);
  ok = ok && cg.verdict;
  dominated(Antinorm::fromPolytope(gp), cg.closestPoint, "polygon");

  const auto p3 = fixture::p3();
  const auto c3 = checkAutopolar(p3.polytope);
  ok = ok && c3.verdict && oracle::norm(linalg::minus(c3.closestPoint, p3.points[2])) <= 1e-12;
  dominated(Antinorm::fromPolytope(p3.polytope), c3.closestPoint, "P3");

  for (const Vector<double>& p : {Vector<double>{0.3, 0.7}, Vector<double>{0.2, 0.3, 0.5}}) {
    const auto f = Antinorm::product(p);
    ok = ok && checkSelfDualSampled(f, 200, 10000, 7).maxRel <= 1e-6;
    Vector<double> a;
    for (double w : p) a.push_back(std::sqrt(w));
    dominated(f, a, p.size() == 2 ? "product d=2" : "product d=3");
  }
  report(7, ok, d.str());
}

TEST(Criterion, C08_GradientCheck) {
  Rng rng(88);
  double worstRel = 0;
  double worstEuler = 0;
  for (const Vector<double>& p : {Vector<double>{0.3, 0.7}, Vector<double>{0.2, 0.3, 0.5}}) {
    const auto f = Antinorm::product(p);
    for (int s = 0; s < 100; ++s) {
      const auto x = sampleBox(rng, p.size(), 0.1, 2);
      const auto g = productGradient(p, x);
      for (std::size_t k = 0; k < p.size(); ++k) {
        auto xp = x;
        auto xm = x;
        xp[k] += 1e-6;
        xm[k] -= 1e-6;
        const double fd = (f(xp) - f(xm)) / 2e-6;
        worstRel = std::max(worstRel, std::abs(g[k] - fd) / std::abs(fd));
      }
      worstEuler = std::max(worstEuler, std::abs(linalg::dot(g, x) - f(x)));
    }
  }
  std::ostringstream d;
  d << "max rel FD error " << worstRel << " (<= 1e-6), max Euler error " << worstEuler << " (<= 1e-10)";
  report(8, worstRel <= 1e-6 && worstEuler <= 1e-10, d.str());
}

TEST(Criterion, C09_OrthogonalSplittingOfP5) {
  const auto pn = fixture::p5();
  const auto planes = findOrthogonalSplitting(pn.polytope);
  auto through = [&](const Vector<double>& n, const Vector<double>& u, const Vector<double>& v) {
    const double s = oracle::norm(n);
    return std::abs(linalg::dot(n, u)) <= 1e-9 * s * oracle::norm(u) &&
           std::abs(linalg::dot(n, v)) <= 1e-9 * s * oracle::norm(v);
  };
  bool hasTarget = false;
  std::ostringstream found;
  for (const auto& s : planes) {
    hasTarget = hasTarget || through(s.normal, pn.points[1], pn.points[3]);
    for (std::size_t a = 0; a < 5; ++a)
      for (std::size_t b = a + 1; b < 5; ++b)
        if (through(s.normal, pn.points[a], pn.points[b])) found << " O A" << a + 1 << " A" << b + 1;
  }
  std::ostringstream d;
  d << planes.size() << " plane(s) returned:" << (planes.empty() ? " none" : found.str())
    << "; plane O A2 A4 " << (hasTarget ? "present" : "absent");
  report(9, hasTarget, d.str());
}

TEST(Criterion, C10_OracleEquivalence) {
  Rng rng(1010);
  int matched = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = randomConicPolytope(rng, 2, 6);
    const auto& verts = p.generators().vertices;
    const auto facets = sorted(p.constraints().affine);
    bool ok = facets == oracle::facets2d(verts);
    const auto q = ConicPolytope<Rational>::fromInequalities(facets);
    ok = ok && sorted(q.generators().vertices) == oracle::vertices2d(facets);
    ok = ok && sorted(verts) == oracle::vertices2d(facets);
    matched += ok ? 1 : 0;
  }
  std::ostringstream d;
  d << matched << "/50 cases match the all-pairs oracle exactly";
  report(10, matched == 50, d.str());
}
