#include <benchmark/benchmark.h>

#include "knot_energy/continuum_energy.hpp"
#include "knot_energy/discrete_energy.hpp"
#include "knot_energy/moebius.hpp"
#include "knot_energy/sampling.hpp"

using namespace knot_energy;

namespace {

const ParametricCurve& trefoil() {
  static const ParametricCurve curve = named_curve(CurveDescriptor::trefoil());
  return curve;
}

void BM_CrossRatioGrid(benchmark::State& state) {
  const ClosedPolygon polygon = regular_polygon(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cross_ratio_grid(polygon));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CrossRatioGrid)->RangeMultiplier(2)->Range(64, 512)->Complexity(benchmark::oNSquared);

void BM_DiscreteEnergy(benchmark::State& state) {
  const ClosedPolygon polygon = equilateral_sample(trefoil(), static_cast<std::size_t>(state.range(0)), 1e-10);
  for (auto _ : state) benchmark::DoNotOptimize(discrete_energy(polygon));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DiscreteEnergy)->RangeMultiplier(2)->Range(64, 512)->Complexity(benchmark::oNSquared);

void BM_EquilateralSampler(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sample_equilateral(trefoil(), static_cast<std::size_t>(state.range(0)), 1e-10));
}
BENCHMARK(BM_EquilateralSampler)->RangeMultiplier(4)->Range(64, 1024);

void BM_ApplyInversivePolygon(benchmark::State& state) {
  const ClosedPolygon polygon = equilateral_sample(trefoil(), 512, 1e-10);
  const MoebiusMap map = random_admissible_map(7, polygon, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(apply_polygon(map, polygon));
}
BENCHMARK(BM_ApplyInversivePolygon);

void BM_IntegrateE1E2(benchmark::State& state) {
  const QuadratureSpec spec{static_cast<std::size_t>(state.range(0)), 1};
  for (auto _ : state) benchmark::DoNotOptimize(integrate_E1_E2(trefoil(), spec));
}
BENCHMARK(BM_IntegrateE1E2)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_IntegrateHatE(benchmark::State& state) {
  const QuadratureSpec spec{static_cast<std::size_t>(state.range(0)), 1};
  for (auto _ : state) benchmark::DoNotOptimize(integrate_hatE(trefoil(), spec));
}
BENCHMARK(BM_IntegrateHatE)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
