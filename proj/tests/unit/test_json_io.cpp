#include <gtest/gtest.h>

#include <variant>

#include "fixtures.hpp"
#include "selfdual/json_io.hpp"

using namespace selfdual;
using fixture::qvs;

namespace {

const ConicPolytope<Rational>& rational(const json::AnyPolytope& p) {
  return std::get<ConicPolytope<Rational>>(p);
}

}  // namespace

TEST(JsonPolytope, RationalRoundTrip) {
  const auto g = fixture::polygon();
  const std::string text = json::writePolytope(g);
  EXPECT_NE(text.find("\"5/3\""), std::string::npos);
  const auto back = json::readPolytope(text);
  ASSERT_TRUE(std::holds_alternative<ConicPolytope<Rational>>(back));
  EXPECT_TRUE(canonicalEqual(rational(back), g));
}

TEST(JsonPolytope, FloatRoundTrip) {
  const auto p3 = fixture::p3().polytope;
  const auto back = json::readPolytope(json::writePolytope(p3));
  ASSERT_TRUE(std::holds_alternative<ConicPolytope<double>>(back));
  EXPECT_TRUE(canonicalEqual(std::get<ConicPolytope<double>>(back), p3));
}

TEST(JsonPolytope, DecimalsForceFloatMode) {
  const auto p = json::readPolytope(R"({"dim": 2, "vertices": [["0.5", "1"], ["1", "1/2"]]})");
  EXPECT_TRUE(std::holds_alternative<ConicPolytope<double>>(p));
  const auto q = json::readPolytope(R"({"dim": 2, "vertices": [[1, 2], [2, 1]]})");
  EXPECT_TRUE(std::holds_alternative<ConicPolytope<Rational>>(q));
  const auto r = json::readPolytope(R"({"dim": 2, "vertices": [[1, 2]]})", {ScalarMode::Float, 1e-9});
  EXPECT_TRUE(std::holds_alternative<ConicPolytope<double>>(r));
}

TEST(JsonPolytope, InequalitiesAndHalfCones) {
  const auto p = json::readPolytope(R"({
    "dim": 2,
    "ambient": {"halfcone": {"i": 1, "j": 2, "mu": "3/4", "side": 2}},
    "inequalities": [{"normal": ["3/5", "4/5"], "rhs": 1}, {"normal": [1, 0], "rhs": 0}]
  })");
  const auto& g1 = rational(p);
  ASSERT_TRUE(g1.ambient().half());
  EXPECT_EQ(g1.ambient().half()->splitter.mu, Rational(3, 4));
  EXPECT_EQ(g1.ambient().half()->side, Side::Two);
  EXPECT_EQ(g1.generators().vertices, qvs({{"3/5", "4/5"}, {"5/3", "0"}}));
}

TEST(JsonPolytope, ScaledRightHandSides) {
  const auto p = json::readPolytope(R"({"dim": 2, "inequalities": [{"normal": [2, 2], "rhs": 2}]})");
  EXPECT_EQ(rational(p).constraints().affine, qvs({{"1", "1"}}));
}

TEST(JsonPolytope, Errors) {
  for (const char* bad : {"{", R"({"vertices": [[1, 1]]})", R"({"dim": 2, "vertices": [[1]]})",
                          R"({"dim": 2, "vertices": [["x", 1]]})",
                          R"({"dim": 2, "inequalities": [{"normal": [1, -1], "rhs": 0}]})",
                          R"({"dim": 2, "ambient": {"halfcone": {"i": 0, "j": 1, "mu": 1, "side": 1}}, "vertices": [[1, 1]]})"}) {
    EXPECT_THROW(json::readPolytope(bad), Error) << bad;
  }
}

TEST(JsonAntinorm, DescriptorsRoundTrip) {
  const auto f = json::readAntinorm(R"({"kind": "product", "p": ["1/2", "1/2"]})");
  EXPECT_NEAR(f({2, 1}), 2.0, 1e-15);
  const auto g = json::readAntinorm(json::writeAntinorm(f));
  EXPECT_NEAR(g({2, 1}), 2.0, 1e-15);

  const auto ext = json::readAntinorm(R"({"kind": "extension", "splitter": {"i": 1, "j": 2, "mu": "3/4"},
                                          "phi": {"kind": "pl", "normals": [[1]]}})");
  EXPECT_NEAR(ext({1, 1}), 1.4, 1e-15);

  const auto cat = json::readAntinorm(R"({"kind": "concat", "splitter": {"i": 1, "j": 2, "mu": 1},
      "f1": {"kind": "pl", "normals": [[1, 1]], "domain": {"halfcone": {"i": 1, "j": 2, "mu": 1, "side": 1}}},
      "f2": {"kind": "pl", "normals": [[1, 1]], "domain": {"halfcone": {"i": 1, "j": 2, "mu": 1, "side": 2}}}})");
  EXPECT_DOUBLE_EQ(cat({1, 3}), 4.0);
  const auto again = json::readAntinorm(json::writeAntinorm(cat));
  EXPECT_DOUBLE_EQ(again({3, 1}), 4.0);
}

TEST(JsonAntinorm, UnknownKind) {
  EXPECT_THROW(json::readAntinorm(R"({"kind": "spline"})"), Error);
}

TEST(JsonRecipe, AllConstructions) {
  const auto a1 = json::runRecipe(R"({"construct": "algorithm1", "a": ["3/5", "4/5"], "inner": [["1", "1/2"]]})");
  EXPECT_EQ(a1.kind, json::DocumentKind::Polytope);
  EXPECT_EQ(rational(json::readPolytope(a1.json)).generators().vertices.size(), 3u);

  const auto pn = json::runRecipe(R"({"construct": "pn", "n": 3, "choices": [2, 2]})");
  EXPECT_NE(pn.json.find("\"points\""), std::string::npos);

  const auto prod = json::runRecipe(R"({"construct": "product", "p": [0.3, 0.7]})");
  EXPECT_EQ(prod.kind, json::DocumentKind::Antinorm);

  const auto lift = json::runRecipe(R"({"construct": "lift",
      "splitter": {"i": 1, "j": 2, "mu": "3/4"},
      "g1": {"dim": 2, "ambient": {"halfcone": {"i": 1, "j": 2, "mu": "3/4", "side": 2}},
             "inequalities": [{"normal": ["3/5", "4/5"], "rhs": 1}]}})");
  EXPECT_TRUE(canonicalEqual(rational(json::readPolytope(lift.json)), fixture::polygon()));
}

TEST(JsonRecipe, ErrorsCarryTheLibraryCode) {
  try {
    json::runRecipe(R"({"construct": "algorithm1", "a": [1, 1]})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotUnit);
    EXPECT_NE(json::writeError(e).find("\"NotUnit\""), std::string::npos);
  }
  EXPECT_THROW(json::runRecipe(R"({"construct": "origami"})"), Error);
}

TEST(JsonReports, Shapes) {
  const auto cert = checkAutopolar(fixture::polygon());
  const auto text = json::writeReport(cert);
  for (const char* key : {"\"verdict\"", "\"max_residual\"", "\"distance\"", "\"witness\""})
    EXPECT_NE(text.find(key), std::string::npos) << key;
  const auto lifting = json::writeReport(detectAdmissibleLifting(fixture::p3().polytope));
  for (const char* key : {"\"candidates\"", "\"ij\"", "\"mu\"", "\"reason\"", "\"found\""})
    EXPECT_NE(lifting.find(key), std::string::npos) << key;
}

TEST(JsonClassify, Kinds) {
  EXPECT_EQ(json::classify(R"({"construct": "pn"})"), json::DocumentKind::Recipe);
  EXPECT_EQ(json::classify(R"({"kind": "pl"})"), json::DocumentKind::Antinorm);
  EXPECT_EQ(json::classify(R"({"dim": 2})"), json::DocumentKind::Polytope);
  EXPECT_THROW(json::classify("[1, 2]"), Error);
}
