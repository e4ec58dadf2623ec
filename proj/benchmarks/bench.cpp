#include <benchmark/benchmark.h>

#include "wdd/arith.hpp"
#include "wdd/covering.hpp"
#include "wdd/cyclotomic.hpp"
#include "wdd/delicate.hpp"
#include "wdd/graham.hpp"

namespace {

using namespace wdd;

const covering::CoveringSystem& minus_three() {
  static const auto s = covering::load_covering(std::string(WDD_DATA_DIR) + "/cover_-3.txt").system();
  return s;
}

// The widest class of the d = -3 covering: 14325696 candidates, 47 congruences.
void BM_WidestClass(benchmark::State& state) {
  const auto red = covering::reduce_class(minus_three(), 1140, 75);
  for (auto _ : state) benchmark::DoNotOptimize(covering::first_uncovered(red));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(red.span));
}
BENCHMARK(BM_WidestClass)->Unit(benchmark::kMillisecond);

void BM_ReductionProfile(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(covering::reduction_profile(minus_three(), 1140));
}
BENCHMARK(BM_ReductionProfile)->Unit(benchmark::kMillisecond);

void BM_FastCover(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto s = covering::load_covering(std::string(WDD_DATA_DIR) + "/cover_" + std::to_string(d) + ".txt").system();
  for (auto _ : state) benchmark::DoNotOptimize(covering::is_covering_fast(s));
}
BENCHMARK(BM_FastCover)->Arg(-5)->Arg(3)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_IsPrime(benchmark::State& state) {
  // 2^n - 1 for n = 61 (deterministic range) and n = 127, 521 (probable).
  Natural n = (Natural(1) << static_cast<unsigned>(state.range(0))) - 1;
  for (auto _ : state) benchmark::DoNotOptimize(arith::is_prime(n));
}
BENCHMARK(BM_IsPrime)->Arg(61)->Arg(127)->Arg(521)->Unit(benchmark::kMicrosecond);

void BM_CyclotomicValue(benchmark::State& state) {
  const auto m = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cyclotomic::cyclotomic_value(m));
}
BENCHMARK(BM_CyclotomicValue)->Arg(60)->Arg(2888)->Arg(30030)->Unit(benchmark::kMicrosecond);

void BM_PrimesOfOrder(benchmark::State& state) {
  const auto m = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cyclotomic::primes_of_order(m));
}
BENCHMARK(BM_PrimesOfOrder)->Arg(32)->Arg(60)->Arg(90)->Unit(benchmark::kMillisecond);

void BM_DelicateScan(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(delicate::find_first_digitally_delicate(300000));
}
BENCHMARK(BM_DelicateScan)->Unit(benchmark::kMillisecond);

void BM_GrahamCover(benchmark::State& state) {
  const auto inst = graham::vsemirnov_instance();
  for (auto _ : state) benchmark::DoNotOptimize(graham::verify_cover(inst));
}
BENCHMARK(BM_GrahamCover)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
