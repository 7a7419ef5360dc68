#include <benchmark/benchmark.h>

#include "asid/airframe.hpp"
#include "asid/atmosphere.hpp"
#include "asid/decimal.hpp"
#include "asid/firmware.hpp"
#include "asid/pipeline.hpp"
#include "asid/synclink.hpp"
#include "asid/wxindices.hpp"

using namespace asid;

static void BM_IsaDensity(benchmark::State& state) {
  double h = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(atmosphere::isa_density(h));
    h = h + 7.3 > 11000.0 ? 0.0 : h + 7.3;
  }
}
BENCHMARK(BM_IsaDensity);

static void BM_ServiceCeiling(benchmark::State& state) {
  const auto cfg = airframe::reference_airframe();
  for (auto _ : state) benchmark::DoNotOptimize(airframe::service_ceiling(cfg));
}
BENCHMARK(BM_ServiceCeiling);

static void BM_MaxProgressiveSpeed(benchmark::State& state) {
  const auto cfg = airframe::reference_airframe();
  for (auto _ : state) benchmark::DoNotOptimize(airframe::max_progressive_speed(cfg));
}
BENCHMARK(BM_MaxProgressiveSpeed);

static void BM_FormatFixed(benchmark::State& state) {
  double v = 1013.25;
  for (auto _ : state) {
    benchmark::DoNotOptimize(format_fixed(v, 2));
    v += 0.0137;
  }
}
BENCHMARK(BM_FormatFixed);

static void BM_FormatRow(benchmark::State& state) {
  firmware::SensorSample s{"01.06.2021", "10:15:30", 25.3, 45.2, 25.1, 1005.25, 41.67};
  for (auto _ : state) benchmark::DoNotOptimize(firmware::format_row(s));
}
BENCHMARK(BM_FormatRow);

static void BM_HeatIndex(benchmark::State& state) {
  double t = 20.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(wx::heat_index(t, 65.0));
    t = t > 45.0 ? 20.0 : t + 0.1;
  }
}
BENCHMARK(BM_HeatIndex);

static void BM_Route(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(synclink::route("GET /download/air.csv HTTP/1.1\r\n"));
  }
}
BENCHMARK(BM_Route);

static void BM_ServeChunked(benchmark::State& state) {
  const std::string body(static_cast<std::size_t>(state.range(0)), 'x');
  for (auto _ : state) {
    firmware::SdCardImage sd;
    sd.write(firmware::kAirFile, body);
    synclink::InProcessTransport t(sd);
    benchmark::DoNotOptimize(synclink::fetch(t, synclink::Target::Air));
  }
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ServeChunked)->Arg(3521)->Arg(1 << 16);

static void BM_GoldenPipeline(benchmark::State& state) {
  const auto cfg = default_run_config();
  for (auto _ : state) benchmark::DoNotOptimize(simulate(cfg));
}
BENCHMARK(BM_GoldenPipeline)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
