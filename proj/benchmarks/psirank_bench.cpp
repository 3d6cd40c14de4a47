#include <benchmark/benchmark.h>

#include "psirank/emulator.hpp"
#include "psirank/generators.hpp"
#include "psirank/pagerank.hpp"
#include "psirank/propagation.hpp"
#include "psirank/simulator.hpp"
#include "psirank/solver.hpp"

using namespace psirank;

static void iterative_solve_bm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto system = build_system(generate_erdos_renyi(n, 3.0, 5), ActivityRates::homogeneous(n, 0.25, 1.0));
  SolveOptions opts;
  opts.tol = 1e-9;
  UserId label = 0;
  for (auto _ : state) {
    auto v = solve_iterative(system, label, opts);
    benchmark::DoNotOptimize(v.q.data());
    label = (label + 1) % n;
  }
}
BENCHMARK(iterative_solve_bm)->Arg(1000)->Arg(10000)->Arg(50000)->Unit(benchmark::kMillisecond);

static void dense_factor_bm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto system = build_system(generate_erdos_renyi(n, 3.0, 5), ActivityRates::homogeneous(n, 0.25, 1.0));
  for (auto _ : state) {
    DenseSolver solver(system);
    auto v = solver.solve(0);
    benchmark::DoNotOptimize(v.q.data());
  }
}
BENCHMARK(dense_factor_bm)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

static void pagerank_bm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto graph = generate_scale_free(n, 2.5, 3);
  for (auto _ : state) {
    auto r = pagerank(graph, 0.8);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(pagerank_bm)->Arg(10000)->Arg(50000)->Unit(benchmark::kMillisecond);

static void simulate_bm(benchmark::State& state) {
  const auto graph = generate_ring(200, 4.0, 9);
  const auto rates = ActivityRates::homogeneous(200, 0.3, 0.9);
  SimulationConfig config;
  config.events = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto r = simulate(graph, rates, config);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(simulate_bm)->Arg(100000)->Unit(benchmark::kMillisecond);

static void replay_bm(benchmark::State& state) {
  const auto graph = generate_ring(200, 4.0, 9);
  SimulationConfig config;
  config.wall_size = 1;
  config.events = static_cast<std::size_t>(state.range(0));
  config.record_trace = true;
  Simulator sim(graph, ActivityRates::homogeneous(200, 0.3, 0.9), config);
  sim.run();
  const auto& trace = sim.trace();
  for (auto _ : state) {
    auto r = replay(trace, graph.size());
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(trace.size()));
}
BENCHMARK(replay_bm)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
