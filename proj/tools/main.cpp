// selfdual: construct, transform, check and export conic bodies and antinorms.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mesh.hpp"
#include "selfdual/antinorm.hpp"
#include "selfdual/json_io.hpp"
#include "selfdual/polyhedron.hpp"
#include "selfdual/sampling.hpp"
#include "selfdual/verify.hpp"

namespace {

using namespace selfdual;
using nlohmann::ordered_json;

enum Exit : int { kOk = 0, kVerdictFalse = 1, kInputError = 2, kCapabilityError = 3 };

struct Config {
  std::string scalar;  // empty: decided by the input
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::size_t budget = 10000;
  std::string output = "-";
};

json::ReadOptions readOptions(const Config& c) {
  json::ReadOptions o;
  if (c.scalar == "float") o.force = ScalarMode::Float;
  o.tol = c.tol;
  return o;
}

DualSearchOptions searchOptions(const Config& c) {
  DualSearchOptions o;
  o.budget = c.budget;
  o.seed = c.seed;
  return o;
}

std::string readInput(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  ss << in.rdbuf();
  return ss.str();
}

void writeOutput(const Config& c, const std::string& text) {
  if (c.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + c.output);
  out << text;
}

// "a,b,c" as a JSON list of scalar strings (decimal literals kept verbatim).
ordered_json scalarList(const std::string& text) {
  ordered_json out = ordered_json::array();
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) throw Error(ErrorCode::ParseError, "empty entry in \"" + text + "\"");
    out.push_back(item);
  }
  return out;
}

Vector<double> doubleList(const std::string& text) {
  Vector<double> out;
  for (const auto& s : scalarList(text)) out.push_back(toDouble(parseRational(s.get<std::string>())));
  return out;
}

// Polytope or antinorm input; polytopes keep their scalar type.
struct Input {
  std::optional<json::AnyPolytope> polytope;
  std::optional<Antinorm> antinorm;
};

Input loadInput(const Config& c, const std::string& path) {
  const std::string text = readInput(path);
  Input in;
  switch (json::classify(text)) {
    case json::DocumentKind::Polytope:
      in.polytope = json::readPolytope(text, readOptions(c));
      break;
    case json::DocumentKind::Antinorm:
      in.antinorm = json::readAntinorm(text);
      break;
    case json::DocumentKind::Recipe: {
      json::RecipeOptions o{readOptions(c), c.seed, searchOptions(c)};
      const auto r = json::runRecipe(text, o);
      if (r.kind == json::DocumentKind::Polytope) {
        in.polytope = json::readPolytope(r.json, readOptions(c));
      } else {
        in.antinorm = json::readAntinorm(r.json);
      }
      break;
    }
  }
  return in;
}

Antinorm asAntinorm(const Input& in) {
  if (in.antinorm) return *in.antinorm;
  return std::visit([](const auto& p) { return Antinorm::fromPolytope(p); }, *in.polytope);
}

const json::AnyPolytope& requirePolytope(const Input& in, const char* what) {
  if (!in.polytope) throw Error(ErrorCode::InvalidArgument, std::string(what) + " needs a polytope");
  return *in.polytope;
}

int cmdGenerate(const Config& c, const std::string& recipeFile, const std::string& kind,
                const std::string& n, const std::string& choices, const std::string& a,
                const std::string& inner, const std::string& p) {
  std::string recipe;
  if (!recipeFile.empty()) {
    recipe = readInput(recipeFile);
  } else {
    ordered_json r;
    if (kind == "pn") {
      r["construct"] = "pn";
      r["n"] = std::stoul(n);
      r["choices"] = scalarList(choices);
    } else if (kind == "algorithm1") {
      r["construct"] = "algorithm1";
      r["a"] = scalarList(a);
      ordered_json pts = ordered_json::array();
      std::stringstream ss(inner);
      std::string pt;
      while (std::getline(ss, pt, ';'))
        if (!pt.empty()) pts.push_back(scalarList(pt));
      r["inner"] = pts;
    } else if (kind == "product") {
      r["construct"] = "product";
      r["p"] = scalarList(p);
    } else {
      throw Error(ErrorCode::InvalidArgument, "generate needs a construction or --recipe");
    }
    recipe = r.dump();
  }
  json::RecipeOptions o{readOptions(c), c.seed, searchOptions(c)};
  writeOutput(c, json::runRecipe(recipe, o).json);
  return kOk;
}

int cmdPolar(const Config& c, const std::string& file) {
  const Input in = loadInput(c, file);
  const auto& p = requirePolytope(in, "polar");
  writeOutput(c, std::visit([](const auto& q) { return json::writePolytope(polar(q)); }, p));
  return kOk;
}

int cmdCheck(const Config& c, const std::string& file, const std::string& mode, std::size_t samples) {
  const Input in = loadInput(c, file);
  if (mode == "autopolar") {
    const auto cert = std::visit([](const auto& p) { return checkAutopolar(p); },
                                 requirePolytope(in, "autopolar check"));
    writeOutput(c, json::writeReport(cert));
    return cert.verdict ? kOk : kVerdictFalse;
  }
  if (mode == "selfdual") {
    const auto r = checkSelfDualSampled(asAntinorm(in), samples, c.budget, c.seed);
    writeOutput(c, json::writeReport(r));
    return r.maxRel <= 1e-6 ? kOk : kVerdictFalse;
  }
  if (mode == "properties") {
    PropertyOptions o;
    o.samples = samples;
    o.seed = c.seed;
    o.search = searchOptions(c);
    const PropertyReport r =
        in.polytope ? std::visit([&](const auto& p) { return propertySuite(p, o); }, *in.polytope)
                    : propertySuite(*in.antinorm, o);
    writeOutput(c, json::writeReport(r));
    return r.passed() ? kOk : kVerdictFalse;
  }
  if (mode == "lifting") {
    try {
      const auto r = std::visit([](const auto& p) { return detectAdmissibleLifting(p); },
                                requirePolytope(in, "lifting detection"));
      writeOutput(c, json::writeReport(r));
      return r.found ? kOk : kVerdictFalse;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotAutopolar) throw;
      writeOutput(c, json::writeError(e));
      return kVerdictFalse;
    }
  }
  if (mode == "orthosplit") {
    const auto& p = requirePolytope(in, "orthogonal splitting search");
    const bool dim3 = std::visit([](const auto& q) { return q.dim() == 3; }, p);
    if (!dim3) throw Error(ErrorCode::UnsupportedDimension, "orthogonal splitting search needs d = 3");
    const auto text = std::visit(
        [](const auto& q) { return json::writeReport(findOrthogonalSplitting(q)); }, p);
    const bool any = std::visit([](const auto& q) { return !findOrthogonalSplitting(q).empty(); }, p);
    writeOutput(c, text);
    return any ? kOk : kVerdictFalse;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown mode " + mode);
}

int cmdEval(const Config& c, const std::string& file, const std::string& at, bool withDual) {
  const Input in = loadInput(c, file);
  const Vector<double> x = doubleList(at);
  ordered_json out;
  out["at"] = x;
  if (in.polytope && !withDual) {
    const auto atList = scalarList(at);
    out["value"] = std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p.generators().vertices.front().front())>;
          Vector<T> xt;
          for (const auto& s : atList) xt.push_back(fromRational<T>(parseRational(s.get<std::string>())));
          if (xt.size() != p.dim()) throw Error(ErrorCode::InvalidArgument, "point has the wrong dimension");
          const T v = minkowskiFunctional(p, xt);
          if constexpr (kIsExact<T>) {
            return ordered_json(formatRational(v));
          } else {
            return ordered_json(v);
          }
        },
        *in.polytope);
  } else {
    const Antinorm f = asAntinorm(in);
    if (x.size() != f.dim()) throw Error(ErrorCode::InvalidArgument, "point has the wrong dimension");
    out["value"] = f(x);
    if (withDual) out["dual"] = dualEval(f, x, searchOptions(c));
  }
  writeOutput(c, out.dump(2) + "\n");
  return kOk;
}

int cmdExport(const Config& c, const std::string& file, const std::string& format, double clip,
              std::size_t samples) {
  const Input in = loadInput(c, file);
  if (format == "json") {
    if (in.polytope) {
      writeOutput(c, json::writePolytope(*in.polytope));
    } else {
      writeOutput(c, json::writeAntinorm(*in.antinorm));
    }
    return kOk;
  }
  if (format == "obj") {
    const auto& p = requirePolytope(in, "obj export");
    const ConicPolytope<double> q = std::visit(
        [&](const auto& r) {
          if constexpr (kIsExact<std::decay_t<decltype(r.generators().vertices.front().front())>>) {
            return toFloat(r, c.tol);
          } else {
            return r;
          }
        },
        p);
    if (q.dim() != 3) throw Error(ErrorCode::UnsupportedDimension, "obj export needs d = 3");
    writeOutput(c, tools::toObj(tools::clippedMesh(q, clip)));
    return kOk;
  }
  if (format == "csv") {
    const Antinorm f = asAntinorm(in);
    Rng rng(c.seed);
    const auto rays = f.domain().rays();
    std::string out;
    for (std::size_t k = 0; k < f.dim(); ++k) out += "y" + std::to_string(k + 1) + ",";
    out += "f,fstar\n";
    for (std::size_t s = 0; s < samples; ++s) {
      const Vector<double> y = sampleCone(rng, rays);
      for (double v : y) out += formatDouble(v) + ",";
      out += formatDouble(f.evaluateUnchecked(y)) + "," + formatDouble(dualEval(f, y, searchOptions(c))) + "\n";
    }
    writeOutput(c, out);
    return kOk;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown format " + format);
}

int exitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionTooLarge:
    case ErrorCode::UnsupportedDimension:
    case ErrorCode::BudgetExhausted:
      return kCapabilityError;
    default:
      return kInputError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Antinorms, autopolar conic bodies and their verification"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--scalar", cfg.scalar, "rational (default) or float; decimal input forces float")
      ->check(CLI::IsMember({"rational", "float"}));
  app.add_option("--tol", cfg.tol, "float-mode tolerance")->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for all sampling")->capture_default_str();
  app.add_option("--budget", cfg.budget, "objective evaluations per numeric dual")->capture_default_str();
  app.add_option("--output,-o", cfg.output, "output path, - for stdout")->capture_default_str();

  std::string file = "-";
  std::string recipe;
  std::string n = "3";
  std::string choices;
  std::string a;
  std::string inner;
  std::string p;
  std::string kind;
  auto* gen = app.add_subcommand("generate", "build a polytope or antinorm from a recipe");
  gen->add_option("--recipe", recipe, "recipe JSON file");
  auto* genPn = gen->add_subcommand("pn", "the P_n family");
  genPn->add_option("--n", n, "number of points")->capture_default_str();
  genPn->add_option("--choices", choices, "n - 1 comma-separated parameters")->required();
  auto* genAlg = gen->add_subcommand("algorithm1", "autopolar polygon from a unit vector");
  genAlg->add_option("--a", a, "unit vector, e.g. 3/5,4/5")->required();
  genAlg->add_option("--inner", inner, "inner vertices, e.g. 1,1/2;5/3,0");
  auto* genProd = gen->add_subcommand("product", "product antinorm");
  genProd->add_option("--p", p, "weights summing to 1")->required();

  auto* pol = app.add_subcommand("polar", "polar of a polytope");
  pol->add_option("file", file, "input JSON, - for stdin");

  std::string mode = "autopolar";
  std::size_t samples = 1000;
  auto* chk = app.add_subcommand("check", "verify a polytope or antinorm");
  chk->add_option("file", file, "input JSON, - for stdin");
  chk->add_option("--mode", mode)
      ->check(CLI::IsMember({"autopolar", "selfdual", "properties", "lifting", "orthosplit"}))
      ->capture_default_str();
  chk->add_option("--samples", samples)->capture_default_str();

  std::string at;
  bool withDual = false;
  auto* ev = app.add_subcommand("eval", "evaluate at a point");
  ev->add_option("file", file, "input JSON, - for stdin");
  ev->add_option("--at", at, "comma-separated point")->required();
  ev->add_flag("--dual", withDual, "also evaluate the dual antinorm");

  std::string format = "json";
  double clip = 3.0;
  std::size_t exportSamples = 100;
  auto* ex = app.add_subcommand("export", "mesh, samples or canonical JSON");
  ex->add_option("file", file, "input JSON, - for stdin");
  ex->add_option("--format", format)->check(CLI::IsMember({"json", "obj", "csv"}))->capture_default_str();
  ex->add_option("--clip", clip, "box bound for obj meshes")->capture_default_str();
  ex->add_option("--samples", exportSamples, "rays for csv")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (gen->parsed()) {
      if (genPn->parsed()) kind = "pn";
      if (genAlg->parsed()) kind = "algorithm1";
      if (genProd->parsed()) kind = "product";
      return cmdGenerate(cfg, recipe, kind, n, choices, a, inner, p);
    }
    if (pol->parsed()) return cmdPolar(cfg, file);
    if (chk->parsed()) return cmdCheck(cfg, file, mode, samples);
    if (ev->parsed()) return cmdEval(cfg, file, at, withDual);
    if (ex->parsed()) return cmdExport(cfg, file, format, clip, exportSamples);
  } catch (const Error& e) {
    std::cout << json::writeError(e);
    return exitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::cout << json::writeError(ErrorCode::InvalidArgument, e.what());
    return kInputError;
  }
  return kInputError;
}
