#include <numbers>

#include <benchmark/benchmark.h>

#include "hmdf/construct.hpp"

using namespace hmdf;

namespace {

CircleDomain two_arc() { return CircleDomain::from({1.0, 1.0496, 1.0992}, {2.0, 1.5, std::numbers::pi}); }

BlockedCircleDomain blocked(int n) {
  std::vector<double> radii{1.0}, psi;
  for (int k = 0; k < n; ++k) radii.push_back(radii.back() + 0.1);
  for (int k = 0; k < n; ++k) psi.push_back(k % 2 ? 2.0 : 1.2);
  psi.push_back(std::numbers::pi);
  BlockedCircleDomain d{CircleDomain::from(radii, psi), {}};
  for (int k = 0; k < n; ++k) d.gate_angles.push_back(k % 3 ? 0.6 : 0.0);
  return d;
}

void BM_DistanceToBoundary(benchmark::State& state) {
  const BlockedCircleDomain d = blocked(static_cast<int>(state.range(0)));
  const Point z{0.3, 0.7};
  for (auto _ : state) benchmark::DoNotOptimize(distance_to_boundary(z, d));
}
BENCHMARK(BM_DistanceToBoundary)->Arg(2)->Arg(8)->Arg(32);

void BM_WosEnsemble(benchmark::State& state) {
  const CircleDomain d = two_arc();
  WosOptions w;
  w.samples = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(wos_ensemble(d, w));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_WosEnsemble)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_FdSolve(benchmark::State& state) {
  const CircleDomain d = two_arc();
  FdOptions fo;
  fo.resolution = static_cast<int>(state.range(0));
  fo.richardson = false;
  for (auto _ : state) benchmark::DoNotOptimize(fd_solve(d, fo));
}
BENCHMARK(BM_FdSolve)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Thresholds(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(thresholds(0.5, 0.5));
}
BENCHMARK(BM_Thresholds);

}  // namespace

BENCHMARK_MAIN();
