#include <benchmark/benchmark.h>

#include <cmath>

#include "cuspgeom/cusplie/families.hpp"
#include "cuspgeom/cusplie/normalize.hpp"
#include "cuspgeom/fig8/holonomy.hpp"
#include "cuspgeom/hilbert/metric.hpp"
#include "cuspgeom/hilbert/volume.hpp"
#include "cuspgeom/projlin/matfun.hpp"

using namespace cuspgeom;

static void BM_ChordEndpoints(benchmark::State& state) {
  const auto dp = domains::ConvexDomain::d_prime();
  for (auto _ : state) benchmark::DoNotOptimize(domains::chord_endpoints(dp, {3, 1.2, 0.4}, {0.3, -0.5, 0.8}));
}
BENCHMARK(BM_ChordEndpoints);

static void BM_FinslerNorm(benchmark::State& state) {
  const auto dp = domains::ConvexDomain::d_prime();
  for (auto _ : state) benchmark::DoNotOptimize(hilbert::finsler_norm(dp, {3, 1.2, 0.4}, {0.3, -0.5, 0.8}));
}
BENCHMARK(BM_FinslerNorm);

static void BM_BusemannDensity(benchmark::State& state) {
  const auto dp = domains::ConvexDomain::d_prime();
  hilbert::QuadratureSpec q;
  q.sphere_order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hilbert::busemann_density(dp, {5, 1.5, 0.3}, q));
  state.SetLabel(std::to_string(q.sphere_node_count()) + " nodes");
}
BENCHMARK(BM_BusemannDensity)->Arg(12)->Arg(34)->Unit(benchmark::kMicrosecond);

static void BM_ExactRelation(benchmark::State& state) {
  const Rational t(3, 7);
  for (auto _ : state) benchmark::DoNotOptimize(fig8::relation_residual(t).exact_zero());
}
BENCHMARK(BM_ExactRelation)->Unit(benchmark::kMicrosecond);

static void BM_NormalizeExact(benchmark::State& state) {
  using E = cusplie::LieAlgElem<Rational>;
  const projlin::Mat4<Rational> c{{1, 2, 0, 1}, {0, 1, 3, 0}, {1, 0, 1, 1}, {2, 1, 0, 3}};
  const auto ci = projlin::inverse(c);
  const projlin::Mat4<Rational> a = c * cusplie::alg_matrix(E::lprime(Rational(1), Rational(0))) * ci;
  const projlin::Mat4<Rational> b = c * cusplie::alg_matrix(E::lprime(Rational(0), Rational(1))) * ci;
  for (auto _ : state) benchmark::DoNotOptimize(cusplie::normalize_algebra_pair(a, b).sign);
}
BENCHMARK(BM_NormalizeExact)->Unit(benchmark::kMicrosecond);

static void BM_NormalizeFig8(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fig8::normalization_consistency(Rational(1, 4)).sign);
}
BENCHMARK(BM_NormalizeFig8)->Unit(benchmark::kMillisecond);

static void BM_MatExp(benchmark::State& state) {
  const auto x = cusplie::alg_matrix(cusplie::LieAlgElem<double>::lt(0.7, 1.3, -0.4));
  for (auto _ : state) benchmark::DoNotOptimize(projlin::mat_exp(x));
}
BENCHMARK(BM_MatExp);
BENCHMARK_MAIN();
