#include <benchmark/benchmark.h>

#include <ilm/ilm.hpp>

namespace {

void BM_TruncatedScan(benchmark::State& state) {
  ilm::ScanRequest req;
  req.deltas = {0.2, 0.6};
  req.n_min = 1;
  req.n_max = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ilm::run_scan(req));
}
BENCHMARK(BM_TruncatedScan)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_Enumerate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ilm::enumerate_irreducible(n));
}
BENCHMARK(BM_Enumerate)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_NewtonSolve(benchmark::State& state) {
  const ilm::ModelParams prm{3, 4, 0.2, 0.02};
  const ilm::Code c = ilm::parse_code("A+,a-,A+,a+,A-");
  for (auto _ : state) benchmark::DoNotOptimize(ilm::solve_code(c, prm));
}
BENCHMARK(BM_NewtonSolve);

void BM_FullSpectrum(benchmark::State& state) {
  const ilm::ModelParams prm{3, 4, 0.2, 0.01};
  ilm::NewtonSettings ns;
  ns.buffer = static_cast<int>(state.range(0));
  const auto prof = ilm::solve_code(ilm::parse_code("A+,a-,A+"), prm, ns).profile;
  for (auto _ : state) benchmark::DoNotOptimize(ilm::analyze_full(prof, prm));
}
BENCHMARK(BM_FullSpectrum)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_Rk4(benchmark::State& state) {
  const ilm::ModelParams prm{3, 4, 0.2, 0.01};
  const auto prof = ilm::solve_code(ilm::parse_code("A+,A-"), prm).profile;
  const ilm::CVec u = ilm::perturb(prof, 1e-3, 1);
  for (auto _ : state) benchmark::DoNotOptimize(ilm::evolve(u, prm, 1.0, 1e-3));
}
BENCHMARK(BM_Rk4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
