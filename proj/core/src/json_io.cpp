#include "selfdual/json_io.hpp"


#include "json.hpp"

#include "selfdual/construct.hpp"
#include "selfdual/linalg.hpp"

namespace selfdual::json {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
  }
}

[[noreturn]] void fail(const std::string& message) { throw Error(ErrorCode::ParseError, message); }

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) fail(std::string("missing field \"") + key + "\"");
  return obj.at(key);
}

std::size_t readIndex(const json& v, std::size_t dim) {
  if (!v.is_number_integer()) fail("indices must be integers");
  const auto k = v.get<long long>();
  if (k < 1 || static_cast<std::size_t>(k) > dim) fail("index out of range (indices are 1-based)");
  return static_cast<std::size_t>(k - 1);
}

// True when any scalar in the document is a decimal literal or a JSON float.
bool hasDecimal(const json& v) {
  if (v.is_number_float()) return true;
  if (v.is_string()) return isDecimalLiteral(v.get<std::string>());
  if (v.is_array() || v.is_object()) {
    for (const auto& x : v)
      if (hasDecimal(x)) return true;
  }
  return false;
}

template <class T>
T readScalar(const json& v) {
  if (v.is_string()) {
    Rational q;
    try {
      q = parseRational(v.get<std::string>());
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      fail("invalid scalar \"" + v.get<std::string>() + "\"");
    }
    return fromRational<T>(q);
  }
  if (v.is_number_integer()) return T(v.get<long long>());
  if (v.is_number()) {
    const double d = v.get<double>();
    if constexpr (kIsExact<T>) {
      return Rational(d);
    } else {
      return d;
    }
  }
  fail("scalars must be strings or numbers");
}

template <class T>
Vector<T> readVector(const json& v, std::size_t dim) {
  if (!v.is_array() || v.size() != dim) fail("expected a vector of length " + std::to_string(dim));
  Vector<T> out;
  for (const auto& x : v) out.push_back(readScalar<T>(x));
  return out;
}

template <class T>
std::vector<Vector<T>> readVectors(const json& v, std::size_t dim) {
  if (!v.is_array()) fail("expected a list of vectors");
  std::vector<Vector<T>> out;
  for (const auto& x : v) out.push_back(readVector<T>(x, dim));
  return out;
}

Vector<double> readDoubles(const json& v) {
  if (!v.is_array()) fail("expected a list of scalars");
  Vector<double> out;
  for (const auto& x : v) out.push_back(readScalar<double>(x));
  return out;
}

// {"i", "j", "mu"} with mu = "inf" selecting the coordinate plane x_j = 0.
template <class T>
AdmissibleHyperplane<T> readSplitter(const json& v, std::size_t dim) {
  const std::size_t i = readIndex(field(v, "i"), dim);
  const std::size_t j = readIndex(field(v, "j"), dim);
  const json& mu = field(v, "mu");
  if (mu.is_string() && (mu.get<std::string>() == "inf" || mu.get<std::string>() == "infinity"))
    return AdmissibleHyperplane<T>::coordinatePlane(j, i);
  return AdmissibleHyperplane<T>::make(i, j, readScalar<T>(mu));
}

template <class T>
HalfCone<T> readHalfCone(const json& v, std::size_t dim) {
  const auto splitter = readSplitter<T>(v, dim);
  const json& side = field(v, "side");
  if (!side.is_number_integer() || (side.get<int>() != 1 && side.get<int>() != 2))
    fail("side must be 1 or 2");
  return {dim, splitter, side.get<int>() == 1 ? Side::One : Side::Two};
}

template <class T>
Ambient<T> readAmbient(const json& doc, std::size_t dim) {
  if (!doc.contains("ambient")) return Ambient<T>::orthant(dim);
  const json& a = doc.at("ambient");
  if (a.is_string() && a.get<std::string>() == "orthant") return Ambient<T>::orthant(dim);
  if (a.is_object() && a.contains("halfcone"))
    return Ambient<T>::halfCone(readHalfCone<T>(a.at("halfcone"), dim));
  fail("ambient must be \"orthant\" or {\"halfcone\": {...}}");
}

template <class T>
ordered_json scalarJson(const T& v) {
  if constexpr (kIsExact<T>) {
    return formatRational(v);
  } else {
    return v;
  }
}

template <class T>
ordered_json vectorJson(const Vector<T>& v) {
  ordered_json out = ordered_json::array();
  for (const auto& x : v) out.push_back(scalarJson(x));
  return out;
}

template <class T>
ordered_json vectorsJson(const std::vector<Vector<T>>& vs) {
  ordered_json out = ordered_json::array();
  for (const auto& v : vs) out.push_back(vectorJson(v));
  return out;
}

template <class T>
ordered_json splitterJson(const AdmissibleHyperplane<T>& h) {
  ordered_json out;
  out["i"] = h.i + 1;
  out["j"] = h.j + 1;
  out["mu"] = scalarJson(h.mu);
  return out;
}

template <class T>
ordered_json halfConeJson(const HalfCone<T>& h) {
  ordered_json out = splitterJson(h.splitter);
  out["side"] = h.side == Side::One ? 1 : 2;
  return out;
}

template <class T>
ordered_json ambientJson(const Ambient<T>& a) {
  if (a.isOrthant()) return "orthant";
  ordered_json out;
  out["halfcone"] = halfConeJson(*a.half());
  return out;
}

template <class T>
ConicPolytope<T> polytopeFrom(const json& doc, Numeric<T> num) {
  const json& dimField = field(doc, "dim");
  if (!dimField.is_number_integer() || dimField.get<long long>() < 1) fail("dim must be a positive integer");
  const auto dim = static_cast<std::size_t>(dimField.get<long long>());
  const Ambient<T> ambient = readAmbient<T>(doc, dim);

  if (doc.contains("vertices") && !doc.at("vertices").empty())
    return ConicPolytope<T>::fromVertices(readVectors<T>(doc.at("vertices"), dim), ambient, num);

  if (!doc.contains("inequalities")) fail("a polytope needs vertices or inequalities");
  const auto rows = ambient.rows();
  std::vector<Vector<T>> affine;
  for (const auto& ineq : doc.at("inequalities")) {
    Vector<T> a = readVector<T>(field(ineq, "normal"), dim);
    const T rhs = ineq.contains("rhs") ? readScalar<T>(ineq.at("rhs")) : T(1);
    if (rhs > 0) {
      for (auto& x : a) x /= rhs;
      affine.push_back(std::move(a));
      continue;
    }
    if (rhs < 0) fail("affine right-hand sides must be positive");
    // Homogeneous rows only restate the ambient cone.
    bool known = false;
    for (const auto& r : rows) {
      Vector<T> x(a);
      Vector<T> y(r);
      linalg::normalizeFirst(x, num);
      linalg::normalizeFirst(y, num);
      known = known || linalg::vectorsEqual(x, y, num);
    }
    if (!known) fail("homogeneous inequalities must be rows of the ambient cone");
  }
  return ConicPolytope<T>::fromInequalities(std::move(affine), ambient, num);
}

bool floatMode(const json& doc, const ReadOptions& options) {
  if (options.force) return *options.force == ScalarMode::Float;
  if (doc.contains("scalar") && doc.at("scalar") == "float") return true;
  return hasDecimal(doc);
}

AnyPolytope polytopeFrom(const json& doc, const ReadOptions& options) {
  if (floatMode(doc, options)) return polytopeFrom<double>(doc, Numeric<double>{options.tol});
  return polytopeFrom<Rational>(doc, Numeric<Rational>{});
}

template <class T>
ordered_json polytopeJson(const ConicPolytope<T>& p) {
  ordered_json out;
  out["dim"] = p.dim();
  out["scalar"] = kIsExact<T> ? "rational" : "float";
  out["ambient"] = ambientJson(p.ambient());
  auto gen = p.generators();
  sortLex(gen.vertices);
  sortLex(gen.rays);
  out["vertices"] = vectorsJson(gen.vertices);
  out["rays"] = vectorsJson(gen.rays);
  auto con = p.constraints();
  sortLex(con.affine);
  ordered_json ineq = ordered_json::array();
  for (const auto& a : con.affine) {
    ordered_json row;
    row["normal"] = vectorJson(a);
    row["rhs"] = 1;
    ineq.push_back(row);
  }
  for (const auto& h : con.homogeneous) {
    ordered_json row;
    row["normal"] = vectorJson(h);
    row["rhs"] = 0;
    ineq.push_back(row);
  }
  out["inequalities"] = ineq;
  return out;
}

Domain readDomain(const json& doc, std::size_t dim) {
  if (!doc.contains("domain")) return Domain::orthant(dim);
  const Ambient<double> a = readAmbient<double>(json{{"ambient", doc.at("domain")}}, dim);
  return a.isOrthant() ? Domain::orthant(dim) : Domain::halfCone(*a.half());
}

ordered_json domainJson(const Domain& d) {
  if (!d.half) return "orthant";
  ordered_json out;
  out["halfcone"] = halfConeJson(*d.half);
  return out;
}

std::size_t antinormDim(const json& doc) {
  if (doc.contains("dim")) return doc.at("dim").get<std::size_t>();
  const std::string kind = field(doc, "kind").get<std::string>();
  if (kind == "pl") {
    const json& normals = field(doc, "normals");
    if (!normals.is_array() || normals.empty() || !normals.front().is_array())
      fail("pl antinorms need a nonempty list of normals");
    return normals.front().size();
  }
  if (kind == "product") return field(doc, "p").size();
  if (kind == "extension") return antinormDim(field(doc, "phi")) + 1;
  if (kind == "concat") return antinormDim(field(doc, "f1"));
  if (kind == "cone_dual") return antinormDim(field(doc, "f"));
  fail("unknown antinorm kind \"" + kind + "\"");
}

Antinorm antinormFrom(const json& doc) {
  const json& kindField = field(doc, "kind");
  if (!kindField.is_string()) fail("kind must be a string");
  const std::string kind = kindField.get<std::string>();
  const std::size_t dim = antinormDim(doc);
  if (kind == "pl") return Antinorm::piecewiseLinear(readVectors<double>(field(doc, "normals"), dim), readDomain(doc, dim));
  if (kind == "product") return Antinorm::product(readDoubles(field(doc, "p")));
  if (kind == "extension")
    return Antinorm::orthogonalExtension(antinormFrom(field(doc, "phi")),
                                         readSplitter<double>(field(doc, "splitter"), dim));
  if (kind == "concat")
    return Antinorm::concatenate(antinormFrom(field(doc, "f1")), antinormFrom(field(doc, "f2")),
                                 readSplitter<double>(field(doc, "splitter"), dim));
  if (kind == "cone_dual") return Antinorm::coneDual(antinormFrom(field(doc, "f")), readDomain(doc, dim));
  fail("unknown antinorm kind \"" + kind + "\"");
}

ordered_json antinormJson(const Antinorm& f) {
  ordered_json out;
  switch (f.kind()) {
    case AntinormKind::PiecewiseLinear:
      out["kind"] = "pl";
      out["normals"] = vectorsJson(f.normals());
      if (f.domain().half) out["domain"] = domainJson(f.domain());
      break;
    case AntinormKind::Product:
      out["kind"] = "product";
      out["p"] = vectorJson(f.weights());
      break;
    case AntinormKind::OrthogonalExtension:
      out["kind"] = "extension";
      out["splitter"] = splitterJson(f.splitter());
      out["phi"] = antinormJson(f.first());
      break;
    case AntinormKind::Concatenation:
      out["kind"] = "concat";
      out["splitter"] = splitterJson(f.splitter());
      out["f1"] = antinormJson(f.first());
      out["f2"] = antinormJson(f.second());
      break;
    case AntinormKind::ConeDual:
      out["kind"] = "cone_dual";
      out["f"] = antinormJson(f.first());
      out["domain"] = domainJson(f.domain());
      break;
  }
  return out;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json optionalVector(const Vector<double>& v) { return v.empty() ? ordered_json() : ordered_json(v); }

template <class T>
RecipeResult liftRecipe(const json& doc, Numeric<T> num) {
  const json& g1Doc = field(doc, "g1");
  const ConicPolytope<T> g1 = polytopeFrom<T>(g1Doc, num);
  if (g1.ambient().isOrthant()) fail("g1 must live in a half-cone ambient");
  AdmissibleHyperplane<T> splitter = g1.ambient().half()->splitter;
  if (doc.contains("splitter")) {
    if (readSplitter<T>(doc.at("splitter"), g1.dim()) != splitter)
      fail("the recipe splitter differs from the splitter of g1's ambient");
  }
  return {DocumentKind::Polytope, dump(polytopeJson(liftPolytope<T>({splitter, g1})))};
}

template <class T>
RecipeResult algorithm1Recipe(const json& doc, Numeric<T> num) {
  const Vector<T> a = readVector<T>(field(doc, "a"), 2);
  std::vector<Vector<T>> inner;
  if (doc.contains("inner")) inner = readVectors<T>(doc.at("inner"), 2);
  return {DocumentKind::Polytope, dump(polytopeJson(algorithm1<T>(a, inner, num)))};
}

}  // namespace

DocumentKind classify(std::string_view text) {
  const json doc = parse(text);
  if (!doc.is_object()) fail("the document must be a JSON object");
  if (doc.contains("construct")) return DocumentKind::Recipe;
  if (doc.contains("kind")) return DocumentKind::Antinorm;
  return DocumentKind::Polytope;
}

AnyPolytope readPolytope(std::string_view text, const ReadOptions& options) {
  return polytopeFrom(parse(text), options);
}

template <class T>
std::string writePolytope(const ConicPolytope<T>& p) {
  return dump(polytopeJson(p));
}

std::string writePolytope(const AnyPolytope& p) {
  return std::visit([](const auto& q) { return writePolytope(q); }, p);
}

Antinorm readAntinorm(std::string_view text) { return antinormFrom(parse(text)); }

std::string writeAntinorm(const Antinorm& f) { return dump(antinormJson(f)); }

RecipeResult runRecipe(std::string_view text, const RecipeOptions& options) {
  const json doc = parse(text);
  const json& construct = field(doc, "construct");
  if (!construct.is_string()) fail("construct must be a string");
  const std::string name = construct.get<std::string>();
  const bool useFloat = floatMode(doc, options.read);

  if (name == "lift") {
    if (useFloat) return liftRecipe<double>(doc, Numeric<double>{options.read.tol});
    return liftRecipe<Rational>(doc, Numeric<Rational>{});
  }
  if (name == "algorithm1") {
    if (useFloat) return algorithm1Recipe<double>(doc, Numeric<double>{options.read.tol});
    return algorithm1Recipe<Rational>(doc, Numeric<Rational>{});
  }
  if (name == "pn") {
    PnChoices choices;
    const json& n = field(doc, "n");
    if (!n.is_number_integer() || n.get<long long>() < 3) fail("n must be an integer >= 3");
    choices.n = n.get<std::size_t>();
    choices.t = readDoubles(field(doc, "choices"));
    const PnPolytope pn = buildPn(choices, options.read.tol);
    ordered_json out = polytopeJson(pn.polytope);
    out["points"] = pn.points;
    return {DocumentKind::Polytope, dump(out)};
  }
  if (name == "product") {
    return {DocumentKind::Antinorm, dump(antinormJson(Antinorm::product(readDoubles(field(doc, "p")))))};
  }
  fail("unknown construct \"" + name + "\"");
}

std::string writeReport(const AutopolarityCertificate& c) {
  ordered_json out;
  out["verdict"] = c.verdict;
  out["max_residual"] = c.maxResidual;
  out["distance"] = c.distance;
  out["closest_point"] = c.closestPoint;
  if (c.witness) {
    ordered_json w;
    w["vertex"] = c.witness->vertex;
    w["constraint"] = c.witness->constraint;
    w["value"] = c.witness->value;
    out["witness"] = w;
  } else {
    out["witness"] = nullptr;
  }
  return dump(out);
}

std::string writeReport(const SelfDualReport& r) {
  ordered_json out;
  out["max_rel"] = r.maxRel;
  out["mean_rel"] = r.meanRel;
  out["worst_ray"] = optionalVector(r.worstRay);
  out["samples"] = r.samples;
  return dump(out);
}

std::string writeReport(const LiftingReport& r) {
  ordered_json out;
  ordered_json candidates = ordered_json::array();
  for (const auto& c : r.candidates) {
    ordered_json item;
    item["ij"] = {c.i + 1, c.j + 1};
    if (c.splitter) {
      item["splitter"] = splitterJson(*c.splitter);
      item["mu"] = c.splitter->i == c.i ? ordered_json(c.splitter->mu) : ordered_json("inf");
    } else {
      item["splitter"] = nullptr;
      item["mu"] = nullptr;
    }
    item["reason"] = c.reason ? ordered_json(std::string(toString(*c.reason))) : ordered_json(nullptr);
    item["worst"] = c.worst;
    candidates.push_back(item);
  }
  out["candidates"] = candidates;
  if (r.found) {
    const auto& c = r.candidates[*r.found];
    out["found"] = {c.i + 1, c.j + 1};
  } else {
    out["found"] = nullptr;
  }
  out["reconstruction_equal"] = r.reconstructionEqual;
  out["closest_point"] = r.closestPoint;
  return dump(out);
}

std::string writeReport(const PropertyReport& r) {
  ordered_json out;
  out["passed"] = r.passed();
  ordered_json checks = ordered_json::array();
  for (const auto& c : r.checks) {
    ordered_json item;
    item["name"] = c.name;
    item["passed"] = c.passed;
    item["worst"] = c.worst;
    item["samples"] = c.samples;
    checks.push_back(item);
  }
  out["checks"] = checks;
  return dump(out);
}

template <class T>
std::string writeReport(const std::vector<SplittingPlane<T>>& planes) {
  ordered_json out;
  ordered_json list = ordered_json::array();
  for (const auto& s : planes) {
    ordered_json item;
    item["normal"] = vectorJson(s.normal);
    item["through"] = {vectorJson(s.p), vectorJson(s.q)};
    list.push_back(item);
  }
  out["planes"] = list;
  out["count"] = planes.size();
  return dump(out);
}

std::string writeError(const Error& e) {
  ordered_json out;
  out["error"] = std::string(toString(e.code()));
  out["message"] = e.what();
  if (!e.witness().empty()) out["witness"] = e.witness();
  if (e.value()) out["value"] = *e.value();
  return dump(out);
}

std::string writeError(ErrorCode code, std::string_view message) {
  ordered_json out;
  out["error"] = std::string(toString(code));
  out["message"] = std::string(message);
  return dump(out);
}

template std::string writePolytope(const ConicPolytope<Rational>&);
template std::string writePolytope(const ConicPolytope<double>&);
template std::string writeReport(const std::vector<SplittingPlane<Rational>>&);
template std::string writeReport(const std::vector<SplittingPlane<double>>&);

}  // namespace selfdual::json
