#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "realroots/condition.hpp"
#include "realroots/root_count.hpp"
#include "realroots/sphere_mesh.hpp"

namespace rr = realroots;

namespace {

rr::Matrix random_matrix(int m, int n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> g;
  rr::Matrix a(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = g(gen);
  return a;
}

void BM_SingularValues(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  rr::Matrix a = random_matrix(n, n, 7);
  for (auto _ : state) benchmark::DoNotOptimize(rr::min_singular_value(a));
}
BENCHMARK(BM_SingularValues)->Arg(2)->Arg(3)->Arg(5)->Arg(8);

void BM_ScaledSigmaMin(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int d = static_cast<int>(state.range(1));
  auto f = rr::sample_gaussian_system(n, std::vector<int>(static_cast<std::size_t>(n), d), 3).normalized();
  auto mesh = rr::build_mesh(n, 3);
  std::vector<double> values(static_cast<std::size_t>(n));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rr::scaled_sigma_min(f, mesh.data(i), values.data()));
    i = (i + 1) % mesh.count();
  }
}
BENCHMARK(BM_ScaledSigmaMin)->Args({2, 2})->Args({2, 4})->Args({3, 2})->Args({3, 3});

void BM_BuildMesh(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int t = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(rr::build_mesh(n, t).count());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rr::mesh_point_count(n, t)));
}
BENCHMARK(BM_BuildMesh)->Args({2, 5})->Args({2, 7})->Args({3, 4});

void BM_RootCount(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int d = static_cast<int>(state.range(1));
  auto f = rr::sample_gaussian_system(n, std::vector<int>(static_cast<std::size_t>(n), d), 11);
  for (auto _ : state) benchmark::DoNotOptimize(rr::root_count(f, 13).count);
}
BENCHMARK(BM_RootCount)->Args({1, 3})->Args({2, 2})->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
