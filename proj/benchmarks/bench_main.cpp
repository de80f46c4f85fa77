#include <benchmark/benchmark.h>

#include "icp/catalog.hpp"
#include "icp/constructions.hpp"
#include "icp/ensemble.hpp"
#include "icp/entropy.hpp"
#include "icp/random.hpp"

namespace {

void BM_ShannonEntropy(benchmark::State& state) {
  auto rng = icp::random::make_engine(1, 0);
  const auto p = icp::random::flat_simplex(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(icp::info::entropy_bits(p));
}
BENCHMARK(BM_ShannonEntropy)->Arg(4)->Arg(64)->Arg(1024);

void BM_VonNeumannEntropy(benchmark::State& state) {
  auto rng = icp::random::make_engine(2, 0);
  const auto rho = icp::random::random_density(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(icp::info::spectral_entropy_bits(rho));
}
BENCHMARK(BM_VonNeumannEntropy)->Arg(2)->Arg(4)->Arg(8);

void BM_EvaluateSbit(benchmark::State& state) {
  const auto cert = icp::constructions::sbit_violation();
  for (auto _ : state) benchmark::DoNotOptimize(icp::evaluate_icp(cert.ensemble, cert.assignment));
}
BENCHMARK(BM_EvaluateSbit);

void BM_EvaluateQubitRac(benchmark::State& state) {
  const auto cert = icp::constructions::qubit_rac_construction();
  for (auto _ : state) benchmark::DoNotOptimize(icp::evaluate_icp(cert.ensemble, cert.assignment));
}
BENCHMARK(BM_EvaluateQubitRac);

void BM_ObservedDimensionPolygon(benchmark::State& state) {
  const auto entry = icp::catalog::polygon(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(icp::observed_dimension(*entry.theory));
}
BENCHMARK(BM_ObservedDimensionPolygon)->Arg(3)->Arg(8)->Arg(20);

void BM_PgnstMinimum(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(icp::constructions::pgnst_min_entropy_sum(3.0));
}
BENCHMARK(BM_PgnstMinimum)->Unit(benchmark::kMillisecond);

void BM_PolygonViolation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(icp::constructions::polygon_violation(n));
}
BENCHMARK(BM_PolygonViolation)->Arg(6)->Arg(25)->Arg(50);

}  // namespace
BENCHMARK_MAIN();
