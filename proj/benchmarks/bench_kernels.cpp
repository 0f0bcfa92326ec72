#include <benchmark/benchmark.h>

#include "muskat/config.hpp"
#include "muskat/curve.hpp"
#include "muskat/graph.hpp"
#include "muskat/norms.hpp"
#include "muskat/oracle.hpp"
#include "muskat/spectral.hpp"

namespace {

using namespace muskat;

GraphState slope_state(std::size_t n) {
  const PeriodicGrid grid(n, 6.283185307179586);
  return GraphState(slope_profile(grid, 0.9), 0.0, 3.141592653589793);
}

void BM_FluxRational(benchmark::State& st) {
  const GraphState s = slope_state(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(flux_rational(s, {}));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_FluxRational)->RangeMultiplier(2)->Range(128, 1024)->Complexity(benchmark::oNSquared);

void BM_FluxArctan(benchmark::State& st) {
  const GraphState s = slope_state(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(flux_arctan(s, {}));
}
BENCHMARK(BM_FluxArctan)->RangeMultiplier(2)->Range(128, 1024);

void BM_StepIfRk4(benchmark::State& st) {
  const GraphState s = slope_state(static_cast<std::size_t>(st.range(0)));
  const StepOptions opts{};
  const double dt = cfl_dt(s, opts.cfl_factor);
  for (auto _ : st) benchmark::DoNotOptimize(step(s, dt, opts));
}
BENCHMARK(BM_StepIfRk4)->Arg(256)->Arg(512);

void BM_OracleFlux(benchmark::State& st) {
  const GraphState s = slope_state(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(pv_flux_direct(s));
}
BENCHMARK(BM_OracleFlux)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_CurveVelocity(benchmark::State& st) {
  const PeriodicGrid grid(static_cast<std::size_t>(st.range(0)), 6.283185307179586);
  const InterfaceCurve c = turning_profile(grid, 0.9, 1.0, 3.141592653589793);
  for (auto _ : st) benchmark::DoNotOptimize(curve_velocity(c, {}));
}
BENCHMARK(BM_CurveVelocity)->Arg(256)->Arg(512);

void BM_ForwardTransform(benchmark::State& st) {
  const GraphState s = slope_state(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(forward_transform(s.f));
}
BENCHMARK(BM_ForwardTransform)->RangeMultiplier(4)->Range(256, 4096);

void BM_NormReport(benchmark::State& st) {
  const GraphState s = slope_state(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(norm_report(s.f, 0.0));
}
BENCHMARK(BM_NormReport)->Arg(512)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
