#include <benchmark/benchmark.h>

#include "zenosta/generators.hpp"
#include "zenosta/operators.hpp"
#include "zenosta/random_family.hpp"
#include "zenosta/rng.hpp"
#include "zenosta/sme.hpp"
#include "zenosta/strobe.hpp"

using namespace zenosta;

static void BM_MatrixExponentialHermitian(benchmark::State& state) {
  auto gen = make_stream(1);
  const Mat h = random_hermitian(static_cast<int>(state.range(0)), gen);
  for (auto _ : state)
    benchmark::DoNotOptimize(matrix_exponential(h, -iu * 0.01, true));
}
BENCHMARK(BM_MatrixExponentialHermitian)->Arg(2)->Arg(8)->Arg(64);

static void BM_MatrixExponentialGeneral(benchmark::State& state) {
  auto gen = make_stream(2);
  const int d = static_cast<int>(state.range(0));
  const Mat a = random_hermitian(d, gen) - iu * random_hermitian(d, gen);
  for (auto _ : state)
    benchmark::DoNotOptimize(matrix_exponential(a, -iu * 0.01, false));
}
BENCHMARK(BM_MatrixExponentialGeneral)->Arg(2)->Arg(8)->Arg(64);

static void BM_StrobeStep(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  auto gen = make_stream(3);
  const Mat h = random_hermitian(d, gen);
  const auto fam = random_rotated_projector(d, d / 2, 1.0, 4);
  const Mat p0 = fam.eval(0.0)[0];
  const Mat p1 = fam.eval(0.01)[0];
  for (auto _ : state) benchmark::DoNotOptimize(strobe_step(h, p0, p1, 0.01));
}
BENCHMARK(BM_StrobeStep)->Arg(2)->Arg(8)->Arg(64);

static void BM_SmeStep(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  auto gen = make_stream(5);
  const Mat h = random_hermitian(d, gen);
  const Mat x = random_hermitian(d, gen);
  const Mat rho = random_density_matrix(d, gen);
  for (auto _ : state)
    benchmark::DoNotOptimize(sme_step(rho, h, x, 5.0, 1e-3, 1e-2));
}
BENCHMARK(BM_SmeStep)->Arg(2)->Arg(8);

static void BM_IntertwinerEvolve(benchmark::State& state) {
  const auto fam = random_rotated_projector(8, 3, 1.0, 6);
  const TimeGrid grid(1.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evolve_intertwiner(fam, grid));
}
BENCHMARK(BM_IntertwinerEvolve)->Arg(100)->Arg(1000);

BENCHMARK_MAIN();
