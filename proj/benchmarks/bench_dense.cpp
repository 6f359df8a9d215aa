#include <benchmark/benchmark.h>

#include <random>

#include "fgmplate/dense.hpp"

using namespace fgmplate;

namespace {

dense::Matrix random_spd(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  dense::Matrix A(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      A(i, j) = u(rng);
      A(j, i) = A(i, j);
    }
    A(i, i) += n;
  }
  return A;
}

void BM_gemm_nn(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<double> A(n * n, 0.5), B(n * n, 0.25), C(n * n, 0.0);
  for (auto _ : state) {
    dense::gemm_nn(n, n, n, 1.0, A.data(), n, B.data(), n, C.data(), n, 1);
    benchmark::DoNotOptimize(C.data());
  }
  state.counters["GFLOPS"] = benchmark::Counter(2.0 * n * n * n * state.iterations() / 1e9,
                                                benchmark::Counter::kIsRate);
}
BENCHMARK(BM_gemm_nn)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_cholesky(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const dense::Matrix A0 = random_spd(n, 3);
  for (auto _ : state) {
    dense::Matrix A = A0;
    dense::cholesky_lower(A, 0.0, 2);
    benchmark::DoNotOptimize(A.a.data());
  }
  state.counters["GFLOPS"] = benchmark::Counter(n / 3.0 * n * n * state.iterations() / 1e9,
                                                benchmark::Counter::kIsRate);
}
BENCHMARK(BM_cholesky)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_sygst(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const dense::Matrix K0 = random_spd(n, 5);
  dense::Matrix L = random_spd(n, 7);
  dense::cholesky_lower(L, 0.0, 2);
  for (auto _ : state) {
    dense::Matrix K = K0;
    dense::sygst_lower(K, L, 2);
    benchmark::DoNotOptimize(K.a.data());
  }
  state.counters["GFLOPS"] =
      benchmark::Counter(1.0 * n * n * n * state.iterations() / 1e9, benchmark::Counter::kIsRate);
}
BENCHMARK(BM_sygst)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_tridiagonalize(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const dense::Matrix A0 = random_spd(n, 11);
  std::vector<double> d, e, tau;
  for (auto _ : state) {
    dense::Matrix A = A0;
    dense::tridiagonalize_lower(A, d, e, tau, 2);
    benchmark::DoNotOptimize(d.data());
  }
  state.counters["GFLOPS"] = benchmark::Counter(4.0 / 3.0 * n * n * n * state.iterations() / 1e9,
                                                benchmark::Counter::kIsRate);
}
BENCHMARK(BM_tridiagonalize)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
