#include <benchmark/benchmark.h>

#include <cubelink/certifier.hpp>
#include <cubelink/engine.hpp>
#include <cubelink/oracle.hpp>

namespace {

using namespace cubelink;

std::vector<Pairing> batch(int d, int k, std::uint64_t n) {
  std::vector<Pairing> out;
  for (const auto& inst : sample_instances(HostGraph::cube(d), k, n, kDefaultSeed)) out.emplace_back(inst.pairs);
  return out;
}

void BM_SolveLinkage(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto instances = batch(d, (d + 1) / 2, 64);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_linkage(d, instances[i++ % instances.size()]));
  }
}
BENCHMARK(BM_SolveLinkage)->Arg(5)->Arg(6)->Arg(7)->Arg(10)->Unit(benchmark::kMicrosecond);

void BM_SolveStrong(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto instances = sample_instances(HostGraph::cube(d), d / 2, 64, kDefaultSeed, true);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& inst = instances[i++ % instances.size()];
    benchmark::DoNotOptimize(solve_strong(d, Pairing(inst.pairs), *inst.forbidden));
  }
}
BENCHMARK(BM_SolveStrong)->Arg(5)->Arg(6)->Unit(benchmark::kMicrosecond);

void BM_DecideLinked(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const HostGraph g = HostGraph::cube(d);
  const auto instances = batch(d, static_cast<int>(state.range(1)), 64);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(decide_linked(g, instances[i++ % instances.size()]));
  }
}
BENCHMARK(BM_DecideLinked)->Args({4, 2})->Args({5, 3})->Unit(benchmark::kMicrosecond);

void BM_Menger(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const HostGraph g = HostGraph::cube(d);
  const Cube cube(d);
  const auto a = cube.neighbors(0);
  const auto b = cube.neighbors(cube.opposite(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(menger_disjoint_paths(g, a, b, d));
  }
}
BENCHMARK(BM_Menger)->Arg(6)->Arg(10)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
