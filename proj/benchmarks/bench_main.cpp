#include <benchmark/benchmark.h>

#include "selfdual/antinorm.hpp"
#include "selfdual/construct.hpp"
#include "selfdual/polyhedron.hpp"
#include "selfdual/sampling.hpp"
#include "selfdual/verify.hpp"

using namespace selfdual;

namespace {

std::vector<ConicPolytope<Rational>> randomBatch(std::size_t dim, std::size_t count) {
  Rng rng(dim * 1000 + count);
  std::vector<ConicPolytope<Rational>> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(randomConicPolytope(rng, dim, 8));
  return out;
}

// Vertex-to-facet conversion on fresh polytopes (the cache is per object).
void BM_FacetsFromVertices(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const auto batch = randomBatch(dim, 16);
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& src = batch[k++ % batch.size()];
    const auto p = ConicPolytope<Rational>::fromVertices(src.generators().vertices);
    benchmark::DoNotOptimize(p.constraints().affine.size());
  }
}
BENCHMARK(BM_FacetsFromVertices)->DenseRange(2, 4);

void BM_Polar(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const auto batch = randomBatch(dim, 16);
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& src = batch[k++ % batch.size()];
    const auto p = ConicPolytope<Rational>::fromVertices(src.generators().vertices);
    benchmark::DoNotOptimize(polar(p).generators().vertices.size());
  }
}
BENCHMARK(BM_Polar)->DenseRange(2, 4);

void BM_NumericDual(benchmark::State& state) {
  const auto f = Antinorm::product({0.2, 0.3, 0.5});
  const DualSearchOptions options{static_cast<std::size_t>(state.range(0)), 0, 1e-13};
  for (auto _ : state) benchmark::DoNotOptimize(dualSearch(f, {0.3, 1.1, 0.7}, options).value);
}
BENCHMARK(BM_NumericDual)->Arg(1000)->Arg(10000);

void BM_BuildPnAndCheck(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::vector<double> all{2.0, 2.0, 1.5, 2.0};
  const PnChoices choices{n, std::vector<double>(all.begin(), all.begin() + (n - 1))};
  for (auto _ : state) {
    const auto pn = buildPn(choices);
    benchmark::DoNotOptimize(checkAutopolar(pn.polytope).verdict);
  }
}
BENCHMARK(BM_BuildPnAndCheck)->DenseRange(3, 5);

}  // namespace
BENCHMARK_MAIN();
