#include <benchmark/benchmark.h>

#include "rwinv/solvability.hpp"
#include "support.hpp"

namespace {

using namespace rwinv;

void BM_ProperTraces(benchmark::State& state) {
  const Graph g = testing::complete_graph(static_cast<int>(state.range(0)));
  const int cap = static_cast<int>(state.range(1));
  std::size_t count = 0;
  for (auto _ : state) {
    const auto traces = proper_traces(g, cap);
    count = traces.size();
    benchmark::DoNotOptimize(traces.data());
  }
  state.counters["traces"] = static_cast<double>(count);
}
BENCHMARK(BM_ProperTraces)->Args({4, 8})->Args({4, 16})->Args({5, 12})->Unit(benchmark::kMillisecond);

void BM_HullDimensionBipartite(benchmark::State& state) {
  const Graph g = Graph::build(6, testing::cycle_edges(6), 3, 0);
  for (auto _ : state) benchmark::DoNotOptimize(hull_dimension(g, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_HullDimensionBipartite)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_RelintMembership(benchmark::State& state) {
  const Graph g = testing::complete_graph(4);
  const OccupationVector r{expected_occupation_fixed_point(g, derived_weights(g, Eigen::Vector4d(1, 2, 1, 0.5))).values,
                           OccupationKind::Expected};
  for (auto _ : state) benchmark::DoNotOptimize(relint_membership(g, r));
}
BENCHMARK(BM_RelintMembership)->Unit(benchmark::kMillisecond);

void BM_SolveComplete(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Graph g = testing::complete_graph(n);
  testing::Rng rng(4);
  const OccupationVector r{expected_occupation_fixed_point(g, derived_weights(g, testing::random_weights(n, rng))).values,
                           OccupationKind::Expected};
  for (auto _ : state) benchmark::DoNotOptimize(solve_complete(g, r));
}
BENCHMARK(BM_SolveComplete)->Arg(4)->Arg(16)->Arg(64);

void BM_SolveReducibleTree(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  testing::Rng rng(6);
  const Graph g = testing::random_tree_leaf_out(n, rng);
  const OccupationVector r{expected_occupation_fixed_point(g, derived_weights(g, testing::random_weights(n, rng))).values,
                           OccupationKind::Expected};
  for (auto _ : state) benchmark::DoNotOptimize(solve_reducible(g, r));
}
BENCHMARK(BM_SolveReducibleTree)->Arg(8)->Arg(32);

}  // namespace
