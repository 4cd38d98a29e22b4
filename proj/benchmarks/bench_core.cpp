#include <benchmark/benchmark.h>

#include "qsu2/eigen.hpp"
#include "qsu2/metaplectic.hpp"
#include "qsu2/recoupling.hpp"
#include "qsu2/rng.hpp"
#include "qsu2/sphere_rep.hpp"
#include "qsu2/spectral.hpp"
#include "qsu2/torus_rep.hpp"

namespace {

using namespace qsu2;

void BM_ThetaDoublePath(benchmark::State& state) {
  Recoupling rec(RootParams::from_r(1000));
  for (auto _ : state) {
    auto v = rec.theta(20, 24, 28);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_ThetaDoublePath);

void BM_TetDoublePath(benchmark::State& state) {
  Recoupling rec(RootParams::from_r(1000));
  for (auto _ : state) {
    auto v = rec.tet(20, 20, 20, 20, 24, 16);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_TetDoublePath);

void BM_TetHighPrecision(benchmark::State& state) {
  Recoupling rec(RootParams::from_r(100000));
  auto l = state.range(0);
  for (auto _ : state) {
    auto v = rec.tet(l, l, l, l, l, l);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_TetHighPrecision)->Arg(60)->Arg(120)->Arg(200);

void BM_FMatrix(benchmark::State& state) {
  auto a = state.range(0);
  RootParams params = RootParams::from_r(1000000);
  for (auto _ : state) {
    Recoupling rec(params);  // cold cache, matches CLI usage
    FMatrix f = rec.f_matrix(a, a, a, a);
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(BM_FMatrix)->Arg(20)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_TorusBuildAndRenormalize(benchmark::State& state) {
  auto k = state.range(0);
  for (auto _ : state) {
    TorusRep lin = renormalize(build_torus_rep(k));
    benchmark::DoNotOptimize(lin);
  }
}
BENCHMARK(BM_TorusBuildAndRenormalize)->Arg(50)->Arg(120)->Unit(benchmark::kMillisecond);

void BM_DenseHermitianEigen(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  SplitMix64 rng(5);
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      complexd z{rng.next_gaussian(), i == j ? 0.0 : rng.next_gaussian()};
      a(i, j) = z;
      a(j, i) = std::conj(z);
    }
  for (auto _ : state) {
    auto res = hermitian_eigen(a);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_DenseHermitianEigen)->Arg(64)->Arg(192)->Unit(benchmark::kMillisecond);

void BM_TorusGapRow(benchmark::State& state) {
  std::vector<std::int64_t> ks = {state.range(0)};
  for (auto _ : state) {
    auto rows = gap_sweep(SweepFamily::torus, ks, {});
    benchmark::DoNotOptimize(rows);
  }
}
BENCHMARK(BM_TorusGapRow)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_QuantumSinPairing(benchmark::State& state) {
  auto k = state.range(0);
  FunctionDescriptor h1 = lookup_function("hermite1");
  StepEmbedding emb = step_embed(h1, k);
  RootParams params = RootParams::from_level(k);
  for (auto _ : state) {
    auto v = quantum_s_pairing(emb.values, params);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_QuantumSinPairing)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
