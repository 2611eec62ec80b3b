#include <benchmark/benchmark.h>

#include <cmath>

#include "pa/coupling.hpp"
#include "pa/longrange.hpp"
#include "pa/scattering.hpp"
#include "pa/specfun.hpp"
#include "pa/trap.hpp"
#include "pa/units.hpp"

using namespace pa;
using namespace pa::units;

namespace {

PotentialModel sodium_model() {
  PotentialModel m;
  m.c3 = khz_to_au(6.2397e9) * std::pow(nm_to_au(1.0), 3);
  m.mu = 0.5 * amu_to_au(22.98977);
  m.inner = {InnerBoundaryKind::HardWall, nm_to_au(16.9), 0.0};
  return m;
}

void BM_TricomiU(benchmark::State& state) {
  double x = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tricomi_u(-2.0169, 1.5, x));
    x = (x < 120.0) ? x * 1.07 : 0.3;
  }
}
BENCHMARK(BM_TricomiU);

void BM_TrapRoot(benchmark::State& state) {
  const TrapSpec spec = TrapSpec::sodium_default(100.0);
  for (auto _ : state) benchmark::DoNotOptimize(trap_root(spec, 2));
}
BENCHMARK(BM_TrapRoot);

void BM_TrapWavefunction(benchmark::State& state) {
  const TrapSpec spec = TrapSpec::sodium_default(100.0);
  const double x = trap_root(spec, 1);
  const RadialGrid grid = default_trap_grid(spec, 1);
  for (auto _ : state) benchmark::DoNotOptimize(trap_wavefunction(x, spec, grid));
}
BENCHMARK(BM_TrapWavefunction)->Unit(benchmark::kMillisecond);

void BM_SolveLevel(benchmark::State& state) {
  const PotentialModel m = sodium_model();
  for (auto _ : state) {
    const auto levels = solve_levels(m, {khz_to_au(900.0), khz_to_au(2500.0)});
    benchmark::DoNotOptimize(levels);
  }
}
BENCHMARK(BM_SolveLevel)->Unit(benchmark::kMillisecond);

void BM_FcBoundBound(benchmark::State& state) {
  const PotentialModel m = sodium_model();
  const auto levels = solve_levels(m, {khz_to_au(900.0), khz_to_au(2500.0)});
  const TrapSpec spec = TrapSpec::sodium_default(100.0);
  const auto tl = trap_levels(spec, 0);
  LaserSpec laser = LaserSpec::sodium_default();
  for (auto _ : state)
    benchmark::DoNotOptimize(fc_bound_bound(levels[0].wave, tl[0].wave, laser));
}
BENCHMARK(BM_FcBoundBound)->Unit(benchmark::kMillisecond);

void BM_FcFreeBound(benchmark::State& state) {
  const PotentialModel m = sodium_model();
  const auto levels = solve_levels(m, {khz_to_au(900.0), khz_to_au(2500.0)});
  LaserSpec laser = LaserSpec::sodium_default();
  const double eps = khz_to_au(150.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(fc_free_bound(levels[0].wave, eps, nm_to_au(3.94), m.mu, laser));
}
BENCHMARK(BM_FcFreeBound)->Unit(benchmark::kMillisecond);

void BM_MaxwellNodes(benchmark::State& state) {
  const double kt = uk_to_kt_au(10.0);
  for (auto _ : state) benchmark::DoNotOptimize(maxwell_nodes(kt, 64));
}
BENCHMARK(BM_MaxwellNodes);

}  // namespace

BENCHMARK_MAIN();
