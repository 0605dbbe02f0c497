#include <benchmark/benchmark.h>

#include <random>

#include "qsr/kernels.hpp"
#include "qsr/parser.hpp"
#include "qsr/solver.hpp"

using namespace qsr;

namespace {

const std::vector<std::vector<Element>>& ra_samples() {
  static const auto s = homotopy_samples(catalog().homotopy("ra"), 64, 1);
  return s;
}

PointRelation random_relation(std::size_t k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<WeakOrder> models;
  for (auto& w : enumerate_weak_orders(k)) {
    if (rng() % 2) models.push_back(std::move(w));
  }
  return PointRelation(k, std::vector<int>(k, 0), std::move(models));
}

std::vector<WeakOrder> outside(const PointRelation& R) {
  std::vector<WeakOrder> out;
  for (auto& w : enumerate_weak_orders(R.sorts())) {
    if (!R.contains(w)) out.push_back(std::move(w));
  }
  return out;
}

SlotProblem unsat_chain() {
  // five intervals each strictly before the next, closed into a cycle
  const auto inst = parse_instance(
      "algebra IA\nvars A B C D E\nA { p m } B\nB { p m } C\nC { p m } D\nD { p m } E\n"
      "E { p m o } A\n");
  return slot_problem(std::get<QualInstance>(inst));
}

}  // namespace

static void BM_HomotopySerial(benchmark::State& st) {
  const auto w = catalog().homotopy("ra");
  for (auto _ : st) benchmark::DoNotOptimize(kernels::homotopy_verdicts_serial(w, ra_samples()));
}
static void BM_HomotopyOmp(benchmark::State& st) {
  const auto w = catalog().homotopy("ra");
  for (auto _ : st) benchmark::DoNotOptimize(kernels::homotopy_verdicts_omp(w, ra_samples()));
}

static void BM_SeparationSerial(benchmark::State& st) {
  const auto R = random_relation(4, 3);
  const auto ex = outside(R);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::separation_serial(R, ex, HornClass::OrdHorn));
}
static void BM_SeparationOmp(benchmark::State& st) {
  const auto R = random_relation(4, 3);
  const auto ex = outside(R);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::separation_omp(R, ex, HornClass::OrdHorn));
}

static void BM_PreservationSerial(benchmark::State& st) {
  const auto R = implication_relation();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::preservation_serial(R, ThresholdOp::PP));
}
static void BM_PreservationOmp(benchmark::State& st) {
  const auto R = implication_relation();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::preservation_omp(R, ThresholdOp::PP));
}

static void BM_BruteForceSerial(benchmark::State& st) {
  const auto p = unsat_chain();
  for (auto _ : st) {
    SolveStats s;
    benchmark::DoNotOptimize(bruteforce_slots(p, 10, false, s));
  }
}
static void BM_BruteForceOmp(benchmark::State& st) {
  const auto p = unsat_chain();
  for (auto _ : st) {
    SolveStats s;
    benchmark::DoNotOptimize(bruteforce_slots(p, 10, true, s));
  }
}

BENCHMARK(BM_HomotopySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HomotopyOmp)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SeparationSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SeparationOmp)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PreservationSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PreservationOmp)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForceSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForceOmp)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
