#include <benchmark/benchmark.h>

#include "qhom/homotopy.hpp"
#include "qhom/homology.hpp"

using namespace qhom;

static void BM_BoundaryMatrix(benchmark::State& state) {
  Quandle q = dihedral(static_cast<int>(state.range(0)));
  const int n = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(boundary_matrix(q, Theory::Rack, n));
}
BENCHMARK(BM_BoundaryMatrix)->Args({3, 4})->Args({5, 3})->Args({5, 4})->Args({7, 3});

static void BM_SmithNormalForm(benchmark::State& state) {
  Quandle q = dihedral(static_cast<int>(state.range(0)));
  SparseIntMatrix m = boundary_matrix(q, Theory::Rack, static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Args({3, 4})->Args({5, 3})->Args({5, 4});

static void BM_SmithFirstNonzero(benchmark::State& state) {
  Quandle q = dihedral(static_cast<int>(state.range(0)));
  SparseIntMatrix m = boundary_matrix(q, Theory::Rack, static_cast<int>(state.range(1)));
  for (auto _ : state)
    benchmark::DoNotOptimize(smith_normal_form(m, false, PivotStrategy::FirstNonzero));
}
BENCHMARK(BM_SmithFirstNonzero)->Args({3, 4})->Args({5, 3});

static void BM_HomologyDegree(benchmark::State& state) {
  Quandle q = dihedral(static_cast<int>(state.range(0)));
  const int n = static_cast<int>(state.range(1));
  SparseIntMatrix out = boundary_matrix(q, Theory::Rack, n);
  SparseIntMatrix in = boundary_matrix(q, Theory::Rack, n + 1);
  for (auto _ : state) benchmark::DoNotOptimize(homology(out, in));
}
BENCHMARK(BM_HomologyDegree)->Args({3, 3})->Args({5, 3});

static void BM_VerifyGIdentity(benchmark::State& state) {
  Quandle q = dihedral(static_cast<int>(state.range(0)));
  const int n = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(verify_composite_G(q, n));
}
BENCHMARK(BM_VerifyGIdentity)->Args({3, 3})->Args({5, 3});

BENCHMARK_MAIN();
