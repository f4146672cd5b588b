#include <benchmark/benchmark.h>

#include "qmw/enumerate.hpp"
#include "qmw/mesh.hpp"
#include "qmw/quandle.hpp"

namespace {

void BM_Count2Reductive(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qmw::count_2reductive(n));
}
BENCHMARK(BM_Count2Reductive)->DenseRange(8, 13)->Unit(benchmark::kMillisecond);

void BM_DirectOrbitCount(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qmw::direct_orbit_count(n));
}
BENCHMARK(BM_DirectOrbitCount)->DenseRange(4, 6)->Unit(benchmark::kMillisecond);

void BM_EnumerateNon2Reductive(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qmw::enumerate_non2reductive(n).size());
}
BENCHMARK(BM_EnumerateNon2Reductive)->DenseRange(8, 12)->Unit(benchmark::kMillisecond);

void BM_CanonicalMeshAndHomology(benchmark::State& state) {
  // Aff(Z3, 2) x a projection quandle of size 4: four latin orbits.
  auto mesh = qmw::mesh_from_scalars({3, 3, 3, 3}, std::vector<std::vector<long long>>(4, std::vector<long long>(4, 2)),
                                     std::vector<std::vector<long long>>(4, std::vector<long long>(4, 0)));
  qmw::Quandle q = qmw::sum(mesh).quandle;
  for (auto _ : state) {
    auto canonical = qmw::canonical_mesh(q);
    benchmark::DoNotOptimize(qmw::homologous(canonical.mesh, mesh).has_value());
  }
}
BENCHMARK(BM_CanonicalMeshAndHomology);

void BM_BruteForceIso(benchmark::State& state) {
  auto mesh = qmw::mesh_from_scalars({3, 3}, {{2, 2}, {2, 2}}, {{0, 2}, {1, 0}});
  qmw::Quandle q = qmw::sum(mesh).quandle;
  std::vector<int> relabel{5, 3, 1, 0, 2, 4};
  qmw::Quandle r = q.relabelled(relabel);
  for (auto _ : state) benchmark::DoNotOptimize(qmw::brute_force_iso(q, r).has_value());
}
BENCHMARK(BM_BruteForceIso);

}  // namespace

BENCHMARK_MAIN();
