// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include <vector>

#include "siegel/kernels.hpp"
#include "siegel/random.hpp"
#include "siegel/reduction.hpp"

using namespace siegel;

namespace {

std::vector<SiegelPoint> orbit_points(int g, int n) {
  std::vector<SiegelPoint> pts;
  auto rng = make_stream(7);
  for (int i = 0; i < n; ++i) {
    RMatrix x(g, g), m(g, g);
    for (int r = 0; r < g; ++r)
      for (int c = 0; c < g; ++c) {
        x(r, c) = uniform(rng, -0.5, 0.5);
        m(r, c) = uniform(rng, -1.0, 1.0);
      }
    const SiegelPoint z = SiegelPoint::from_parts(x + x.transpose(), m * m.transpose() + RMatrix::Identity(g, g));
    pts.push_back(mobius_act(random_symplectic_word(g, 4, rng()), z));
  }
  return pts;
}

void BM_words_serial(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0));
  const auto words = words_up_to(g, 2);
  const auto pts = orbit_points(g, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::min_distance_over_words_serial(words, pts[0], pts[1]));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(words.size()));
}

void BM_words_parallel(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0));
  const auto words = words_up_to(g, 2);
  const auto pts = orbit_points(g, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::min_distance_over_words_parallel(words, pts[0], pts[1]));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(words.size()));
}

void BM_reduce_serial(benchmark::State& state) {
  const auto pts = orbit_points(static_cast<int>(state.range(0)), 256);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::batch_reduce_serial(pts, {}));
  state.SetItemsProcessed(state.iterations() * 256);
}

void BM_reduce_parallel(benchmark::State& state) {
  const auto pts = orbit_points(static_cast<int>(state.range(0)), 256);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::batch_reduce_parallel(pts, {}));
  state.SetItemsProcessed(state.iterations() * 256);
}

void BM_distance_serial(benchmark::State& state) {
  const auto a = orbit_points(static_cast<int>(state.range(0)), 512);
  const auto b = orbit_points(static_cast<int>(state.range(0)), 512);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::batch_distance_serial(a, b));
  state.SetItemsProcessed(state.iterations() * 512);
}

void BM_distance_parallel(benchmark::State& state) {
  const auto a = orbit_points(static_cast<int>(state.range(0)), 512);
  const auto b = orbit_points(static_cast<int>(state.range(0)), 512);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::batch_distance_parallel(a, b));
  state.SetItemsProcessed(state.iterations() * 512);
}

}  // namespace

BENCHMARK(BM_words_serial)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_words_parallel)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_reduce_serial)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_reduce_parallel)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_distance_serial)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_distance_parallel)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
