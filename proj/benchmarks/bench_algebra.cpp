#include <benchmark/benchmark.h>

#include "slicesemi/algebra.hpp"
#include "slicesemi/operators.hpp"
#include "slicesemi/rng.hpp"

using namespace slicesemi;

static void BM_Mul(benchmark::State& state, const Algebra& alg) {
  Rng rng(42);
  Element x = random_element(alg, rng), y = random_element(alg, rng);
  for (auto _ : state) {
    Element z = mul(x, y);
    benchmark::DoNotOptimize(z);
  }
}
BENCHMARK_CAPTURE(BM_Mul, quaternion, Algebra::quaternion());
BENCHMARK_CAPTURE(BM_Mul, octonion, Algebra::octonion());
BENCHMARK_CAPTURE(BM_Mul, clifford3, Algebra::clifford(3));
BENCHMARK_CAPTURE(BM_Mul, clifford5, Algebra::clifford(5));

static void BM_ConeDecompose(benchmark::State& state) {
  Rng rng(42);
  Element q = random_cone_element(Algebra::quaternion(), rng);
  for (auto _ : state) {
    ConeParts p = cone_decompose(q);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_ConeDecompose);

static void BM_CliffordOpNorm(benchmark::State& state) {
  Rng rng(42);
  Element x = random_element(Algebra::clifford(static_cast<int>(state.range(0))), rng);
  for (auto _ : state) benchmark::DoNotOptimize(clifford_op_norm(x));
}
BENCHMARK(BM_CliffordOpNorm)->Arg(3)->Arg(5);
