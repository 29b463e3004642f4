#include <benchmark/benchmark.h>

#include "hopfmod/charges.hpp"
#include "hopfmod/quantize.hpp"

using namespace hopf;

namespace {

void BM_Christoffel8(benchmark::State& st) {
  const auto vs = VaismanStructure::lck();
  const MetricField b = vs.metric();
  const Point p(vs.chart, (Vec(8) << 1.0, 0.3, -0.4, 0.2, 0.5, -0.1, 0.7, 0.25).finished());
  for (auto _ : st) benchmark::DoNotOptimize(christoffel(b, p, 1e-5, st.range(0) != 0));
}
BENCHMARK(BM_Christoffel8)->Arg(0)->Arg(1);

void BM_LeeIdentity(benchmark::State& st) {
  const auto vs = VaismanStructure::lck();
  const Point p(vs.chart, (Vec(8) << 1.0, 0.3, -0.4, 0.2, 0.5, -0.1, 0.7, 0.25).finished());
  for (auto _ : st) benchmark::DoNotOptimize(lee_identity_check(vs, p));
}
BENCHMARK(BM_LeeIdentity);

void BM_HolonomyLoop(benchmark::State& st) {
  const auto vs = VaismanStructure::lchk();
  Rng rng(1);
  const auto loops = sample_loops(vs, rng, 1, 0.1);
  const WeylConnection wc{vs, {}};
  for (auto _ : st)
    benchmark::DoNotOptimize(holonomy_block_check(wc, DistributionName::D, DistributionName::S, loops));
}
BENCHMARK(BM_HolonomyLoop)->Unit(benchmark::kMillisecond);

void BM_ParallelSpinor(benchmark::State& st) {
  const Chart region = Chart::box(Vec::Constant(4, -1.0), Vec::Constant(4, 1.0));
  ParallelSpinorOptions opt;
  opt.nodes_per_axis = static_cast<int>(st.range(0));
  for (auto _ : st)
    benchmark::DoNotOptimize(
        solve_parallel_spinor({Profile::constant(0.3)}, region, Chirality::L, DiracSpinor(0, 0, 1, 0), opt));
}
BENCHMARK(BM_ParallelSpinor)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_Tension(benchmark::State& st) {
  const auto vs = VaismanStructure::lck();
  const Chart region = Chart::box(Vec::Constant(4, -1.0), Vec::Constant(4, 1.0));
  const SpinorField one{SpinorField::Tag::L, [](const Vec&) { return DiracSpinor(0, 0, 1, 0); }};
  const SwannSection sec = build_section(one);
  const Point p(region, (Vec(4) << 0.1, 0.2, -0.3, 0.4).finished());
  for (auto _ : st) benchmark::DoNotOptimize(tension_field(sec, vs, PPWaveMetric{Profile::constant(0.3)}, p));
}
BENCHMARK(BM_Tension)->Unit(benchmark::kMillisecond);

void BM_CcrCar(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(check_ccr_car(static_cast<int>(st.range(0))));
}
BENCHMARK(BM_CcrCar)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ChargeTable(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(generate_table());
}
BENCHMARK(BM_ChargeTable);

}  // namespace

BENCHMARK_MAIN();
