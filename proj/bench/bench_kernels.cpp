// Serial reference vs OpenMP sweep for the node and orbit-sample kernels.
#include <benchmark/benchmark.h>

#include "afval/bodies.hpp"
#include "afval/exec.hpp"
#include "afval/sphere_calc.hpp"
#include "afval/sphere_grid.hpp"
#include "afval/valuations.hpp"

using namespace afval;

namespace {

Exec mode(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

BodyPtr ellipsoid3() {
  Vec axes(6);
  axes << 1.0, 2.0, 0.5, 1.5, 1.2, 0.8;
  return make_body(ConvexBody::ellipsoid_axes(3, axes));
}

void BM_MixedIntegrals(benchmark::State& state) {
  const SphereGrid grid = build_grid(3, GridMethod::monte_carlo, static_cast<int>(state.range(1)), 11);
  const auto mu = psi_coeffs(0.4, 3);
  const std::vector<SphereFunctionPtr> fs = {support_function(ellipsoid3()),
                                             support_function(make_body(ConvexBody::ball(3, 1.0)))};
  const std::vector<MixedTerm> terms = {{0, 0, 1}, {0, 1, 1}, {1, 0, 0}};
  for (auto _ : state) benchmark::DoNotOptimize(mixed_integrals(mu, fs, terms, grid, mode(state)));
  state.SetItemsProcessed(state.iterations() * state.range(1));
  state.SetLabel(state.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_MixedIntegrals)->ArgsProduct({{0, 1}, {2000, 20000}})->Unit(benchmark::kMillisecond);

void BM_GrassmannianSamples(benchmark::State& state) {
  const std::vector<BodyPtr> bodies = {ellipsoid3()};
  const int k = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(grassmannian_samples(3, k, 0.4, bodies, 500, 12, mode(state)));
  state.SetItemsProcessed(state.iterations() * 500);
  state.SetLabel(state.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_GrassmannianSamples)->ArgsProduct({{0, 1}, {2, 3}})->Unit(benchmark::kMillisecond);

void BM_Integrate(benchmark::State& state) {
  const SphereGrid grid = build_grid(2, GridMethod::product, static_cast<int>(state.range(1)));
  const auto h = support_function(make_body(ConvexBody::ellipsoid_axes(2, Vec::LinSpaced(4, 0.5, 2.0))));
  for (auto _ : state) benchmark::DoNotOptimize(integrate(*h, grid, mode(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()));
  state.SetLabel(state.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_Integrate)->ArgsProduct({{0, 1}, {16, 32}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
