// Serial reference kernels against their OpenMP counterparts.
// Arg 0 is the serial loop, arg 1 the parallel one.

#include <benchmark/benchmark.h>

#include "zdlab/batch.hpp"
#include "zdlab/cones.hpp"
#include "zdlab/fingenlab.hpp"
#include "zdlab/models.hpp"

using namespace zdlab;

namespace {

Execution mode(const benchmark::State& s) { return s.range(0) ? Execution::Parallel : Execution::Serial; }

QVec iv(std::initializer_list<long> xs) { return QVec::from_ints(xs); }

void BM_Hilbert(benchmark::State& s) {
  auto cone = cones::convert(
      cones::RationalCone::from_generators(3, {iv({1, 0, 0}), iv({0, 1, 0}), iv({1, 1, 2}), iv({2, 3, 7})}));
  for (auto _ : s) benchmark::DoNotOptimize(cones::hilbert_basis(cone, mode(s)));
}
BENCHMARK(BM_Hilbert)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Width(benchmark::State& s) {
  fingenlab::ConeSplit split(iv({3, 2}), make_rat(1, 3), make_rat(2, 5));
  for (auto _ : s) benchmark::DoNotOptimize(fingenlab::width_threshold(split, mode(s), 400));
}
BENCHMARK(BM_Width)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Fuzz(benchmark::State& s) {
  auto tri = cones::convert(
      cones::RationalPolytope::from_vertices(2, {iv({0, 0}), iv({3, 0}), iv({0, 3})}));
  auto cert = dioph::polytope_certificate(tri);
  for (auto _ : s) benchmark::DoNotOptimize(batch::fuzz_criterion(tri, cert, 20000, 1, mode(s)));
}
BENCHMARK(BM_Fuzz)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_OracleEquivalence(benchmark::State& s) {
  auto ds = batch::random_pseudoeffective(models::blp2x2(), 300, 1);
  for (auto _ : s) benchmark::DoNotOptimize(batch::oracle_equivalence(ds, mode(s)));
}
BENCHMARK(BM_OracleEquivalence)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Adjoint(benchmark::State& s) {
  auto inputs = batch::random_adjoint_inputs(models::blp2x2(), 200, 1);
  for (auto _ : s) benchmark::DoNotOptimize(batch::adjoint_trials(inputs, mode(s)));
}
BENCHMARK(BM_Adjoint)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
