#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "selfdual/antinorm.hpp"
#include "selfdual/error.hpp"
#include "selfdual/polyhedron.hpp"
#include "selfdual/verify.hpp"

// JSON documents. Indices are 1-based on the wire and 0-based in memory.
namespace selfdual::json {

using AnyPolytope = std::variant<ConicPolytope<Rational>, ConicPolytope<double>>;

enum class DocumentKind { Polytope, Antinorm, Recipe };

struct ReadOptions {
  std::optional<ScalarMode> force;  // overrides the document's "scalar" field
  double tol = 1e-9;
};

// Throws ParseError for malformed JSON.
DocumentKind classify(std::string_view text);

// Rational unless the document says "float", contains a decimal literal or a
// JSON float, or the caller forces float mode.
AnyPolytope readPolytope(std::string_view text, const ReadOptions& options = {});

template <class T>
std::string writePolytope(const ConicPolytope<T>& p);
std::string writePolytope(const AnyPolytope& p);

Antinorm readAntinorm(std::string_view text);
std::string writeAntinorm(const Antinorm& f);

struct RecipeOptions {
  ReadOptions read;
  std::uint64_t seed = 0;
  DualSearchOptions search;
};

struct RecipeResult {
  DocumentKind kind = DocumentKind::Polytope;
  std::string json;
};

// {"construct": "lift" | "algorithm1" | "pn" | "product", ...}
RecipeResult runRecipe(std::string_view text, const RecipeOptions& options = {});

std::string writeReport(const AutopolarityCertificate& c);
std::string writeReport(const SelfDualReport& r);
std::string writeReport(const LiftingReport& r);
std::string writeReport(const PropertyReport& r);
template <class T>
std::string writeReport(const std::vector<SplittingPlane<T>>& planes);

// {"error": code, "message": text, "witness": [...], "value": v}
std::string writeError(const Error& e);
std::string writeError(ErrorCode code, std::string_view message);

}  // namespace selfdual::json
