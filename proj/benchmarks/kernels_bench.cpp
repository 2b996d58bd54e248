// Benchmarks for the data-parallel kernels: profile-grid evaluation,
// dense convolution (serial / OpenMP / FFT), and Bromwich inversion.
// The serial reference is the baseline each parallel path is compared to.
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "lapdp/composition.hpp"
#include "lapdp/core.hpp"
#include "lapdp/fft.hpp"
#include "lapdp/laplace.hpp"
#include "lapdp/mechanisms.hpp"
#include "lapdp/parallel.hpp"

namespace {

using namespace lapdp;

std::vector<double> make_grid(int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = -4.0 + 10.0 * double(i) / double(n - 1);
  return g;
}

void BM_ProfileGridSerial(benchmark::State& state) {
  const auto prof = gaussian_profile_curve(GaussianParams{0.5});
  const auto grid = make_grid(int(state.range(0)));
  parallel::set_enabled(false);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_profile_grid(prof, grid));
  }
  parallel::set_enabled(true);
}
BENCHMARK(BM_ProfileGridSerial)->Arg(1 << 12)->Arg(1 << 15);

void BM_ProfileGridParallel(benchmark::State& state) {
  const auto prof = gaussian_profile_curve(GaussianParams{0.5});
  const auto grid = make_grid(int(state.range(0)));
  parallel::set_enabled(true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_profile_grid(prof, grid));
  }
}
BENCHMARK(BM_ProfileGridParallel)->Arg(1 << 12)->Arg(1 << 15);

std::vector<double> dense_kernel(int n) {
  std::vector<double> v(n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = -4.0 + 8.0 * double(i) / double(n - 1);
    v[i] = std::exp(-0.5 * x * x);
    total += v[i];
  }
  for (double& x : v) x /= total;
  return v;
}

void BM_ConvolveDirectSerial(benchmark::State& state) {
  const auto a = dense_kernel(int(state.range(0)));
  parallel::set_enabled(false);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fft::convolve_direct(a, a));
  }
  parallel::set_enabled(true);
}
BENCHMARK(BM_ConvolveDirectSerial)->Arg(1 << 11)->Arg(1 << 13);

void BM_ConvolveDirectParallel(benchmark::State& state) {
  const auto a = dense_kernel(int(state.range(0)));
  parallel::set_enabled(true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fft::convolve_direct(a, a));
  }
}
BENCHMARK(BM_ConvolveDirectParallel)->Arg(1 << 11)->Arg(1 << 13);

void BM_ConvolveFft(benchmark::State& state) {
  const auto a = dense_kernel(int(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fft::convolve(a, a));
  }
}
BENCHMARK(BM_ConvolveFft)->Arg(1 << 11)->Arg(1 << 13)->Arg(1 << 17);

void BM_BromwichSerial(benchmark::State& state) {
  const auto curve = gaussian_renyi_curve(GaussianParams{0.5});
  parallel::set_enabled(false);
  for (auto _ : state) {
    benchmark::DoNotOptimize(profile_from_renyi(curve, 1.0));
  }
  parallel::set_enabled(true);
}
BENCHMARK(BM_BromwichSerial);

void BM_BromwichParallel(benchmark::State& state) {
  const auto curve = gaussian_renyi_curve(GaussianParams{0.5});
  parallel::set_enabled(true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(profile_from_renyi(curve, 1.0));
  }
}
BENCHMARK(BM_BromwichParallel);

void BM_HomogeneousCompositionCurve(benchmark::State& state) {
  const std::vector<PointGuarantee> gs(std::size_t(state.range(0)),
                                       PointGuarantee{0.1, 1e-8});
  const SignedAtomBook book(gs);
  const auto grid = make_grid(1 << 10);
  for (auto _ : state) {
    std::vector<double> out(grid.size());
    parallel::for_each_index(std::ptrdiff_t(grid.size()),
                             [&](std::ptrdiff_t i) {
                               out[i] = book.evaluate(grid[i]);
                             });
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_HomogeneousCompositionCurve)->Arg(10)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
