#include <benchmark/benchmark.h>

#include "rmt/egf.hpp"
#include "rmt/oracle.hpp"
#include "rmt/parallel.hpp"
#include "rmt/wigner_mc.hpp"

namespace {

rmt::ContourJob edge_job(std::uint64_t n) {
  return rmt::ContourJob::with_defaults({1.0, 0.0, rmt::edge_point(0.0, n), rmt::edge_point(1.0, n)}, n);
}

void BM_ExtractParallel(benchmark::State& st) {
  const rmt::ContourJob job = edge_job(static_cast<std::uint64_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(rmt::extract_f(job));
}

void BM_ExtractSerial(benchmark::State& st) {
  const rmt::ContourJob job = edge_job(static_cast<std::uint64_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(rmt::reference::extract_f_serial(job));
}

void BM_OracleParallel(benchmark::State& st) {
  const auto e = rmt::Ensemble::real_symmetric;
  for (auto _ : st) benchmark::DoNotOptimize(rmt::oracle_f(e, rmt::MomentProfile::gaussian(e), 6, 0.2, 0.9));
}

void BM_OracleSerial(benchmark::State& st) {
  const auto e = rmt::Ensemble::real_symmetric;
  for (auto _ : st) {
    benchmark::DoNotOptimize(rmt::reference::oracle_f_serial(e, rmt::MomentProfile::gaussian(e), 6, 0.2, 0.9));
  }
}

rmt::MCConfig mc_config() {
  rmt::MCConfig c;
  c.n = 16;
  c.samples = 20000;
  c.points = {{0.5, -0.5}, {1.0, 2.0}};
  return c;
}

void BM_McParallel(benchmark::State& st) {
  const rmt::MCConfig c = mc_config();
  for (auto _ : st) benchmark::DoNotOptimize(rmt::estimate_f(c));
}

void BM_McSerial(benchmark::State& st) {
  const rmt::MCConfig c = mc_config();
  for (auto _ : st) benchmark::DoNotOptimize(rmt::reference::estimate_f_serial(c));
}

}  // namespace

BENCHMARK(BM_ExtractParallel)->Arg(1000)->Arg(64000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExtractSerial)->Arg(1000)->Arg(64000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_McParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_McSerial)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  rmt::configure_workers_from_env();
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
