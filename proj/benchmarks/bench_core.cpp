#include <benchmark/benchmark.h>

#include <cmath>

#include "dtunnel/amplitudes.hpp"
#include "dtunnel/oracle.hpp"
#include "dtunnel/scenarios.hpp"
#include "dtunnel/times.hpp"

using namespace dtunnel;

namespace {

const BarrierSystem kFig2A{1.0, 1.5, 0.7, 0.7};

// Width in units of the decay length; covers thin, opaque and deep-underflow barriers.
BarrierSystem with_qa(double qa) {
  BarrierSystem s = kFig2A;
  s.a = qa / std::sqrt(0.91);
  return s;
}

}  // namespace

static void BM_Scatter(benchmark::State& state) {
  const BarrierSystem s = with_qa(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(scatter(1.8, s));
}
BENCHMARK(BM_Scatter)->Arg(1)->Arg(25)->Arg(1000);

static void BM_PhaseTimeClosed(benchmark::State& state) {
  const BarrierSystem s = with_qa(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(phase_time_closed(1.8, s));
}
BENCHMARK(BM_PhaseTimeClosed)->Arg(1)->Arg(25)->Arg(1000);

static void BM_TimeReport(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(time_report(1.8, kFig2A));
}
BENCHMARK(BM_TimeReport);

static void BM_OracleSolve(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(oracle::tm_solve(1.8, kFig2A));
}
BENCHMARK(BM_OracleSolve);

static void BM_NumericPhaseTime(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(oracle::numeric_phase_time(1.8, kFig2A));
}
BENCHMARK(BM_NumericPhaseTime);

static void BM_DwellIntegral(benchmark::State& state) {
  const BarrierSystem s = with_qa(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::dwell_integral(1.8, s));
}
BENCHMARK(BM_DwellIntegral)->Arg(1)->Arg(25);

static void BM_FigureDataset(benchmark::State& state) {
  const auto id = static_cast<FigureId>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(figure_dataset(id));
}
BENCHMARK(BM_FigureDataset)
    ->Arg(static_cast<int>(FigureId::Fig2A))
    ->Arg(static_cast<int>(FigureId::Fig3B))
    ->Unit(benchmark::kMillisecond);

static void BM_FindResonances(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(find_resonances(kFig2A, 1.8, 0.01, 10.0));
}
BENCHMARK(BM_FindResonances)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
