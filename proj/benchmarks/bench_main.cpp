#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "stringnet/assignment.hpp"
#include "stringnet/clustering.hpp"
#include "stringnet/config_io.hpp"
#include "stringnet/engine.hpp"
#include "stringnet/random.hpp"

using namespace stringnet;

namespace {

// Defenders on a line, swarms in front of it, 6 defenders per swarm.
struct Instance {
  AttackerSummary attackers;
  DefenderSummary defenders;
};

Instance make_instance(int n_swarms, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Instance in;
  const int n = 6 * n_swarms;
  for (int j = 0; j < n; ++j) {
    in.defenders.positions.push_back({-0.75 * n + 1.5 * j + uniform(rng, -0.3, 0.3), 0.0});
    in.defenders.ids.push_back(j);
  }
  const double w = 1.5 * n;
  for (int k = 0; k < n_swarms; ++k) {
    in.attackers.centers.push_back({uniform(rng, -w, w), uniform(rng, 5.0, 5.0 + w)});
    in.attackers.sizes.push_back(6);
    in.attackers.ids.push_back(k);
  }
  return in;
}

void BM_SolveExact(benchmark::State &state) {
  const auto in = make_instance(static_cast<int>(state.range(0)), 11);
  const auto inst = stringnet::make_instance(in.attackers, in.defenders);
  for (auto _ : state) benchmark::DoNotOptimize(solve_exact(inst));
}
BENCHMARK(BM_SolveExact)->DenseRange(2, 10, 2)->Unit(benchmark::kMicrosecond);

void BM_SolveHierarchical(benchmark::State &state) {
  const auto in = make_instance(static_cast<int>(state.range(0)), 11);
  for (auto _ : state) benchmark::DoNotOptimize(solve_hierarchical(in.attackers, in.defenders, 4));
}
BENCHMARK(BM_SolveHierarchical)->DenseRange(2, 10, 2)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

void BM_Dbscan(benchmark::State &state) {
  std::mt19937_64 rng(3);
  std::vector<StatePoint> pts;
  for (int i = 0; i < state.range(0); ++i)
    pts.push_back({{uniform(rng, 0, 20), uniform(rng, 0, 20), uniform(rng, -1, 1), uniform(rng, -1, 1)}});
  for (auto _ : state) benchmark::DoNotOptimize(dbscan(pts, 1.0, 3, 0.25));
}
BENCHMARK(BM_Dbscan)->RangeMultiplier(2)->Range(16, 512);

void BM_SimulationTick(benchmark::State &state) {
  const auto cfg = load_config(std::string(STRINGNET_SCENARIO_DIR) + "/s18.json");
  Simulation sim(cfg);
  while (!sim.activated()) sim.tick();
  for (auto _ : state) {
    if (sim.finished()) {
      state.PauseTiming();
      sim = Simulation(cfg);
      while (!sim.activated()) sim.tick();
      state.ResumeTiming();
    }
    sim.tick();
  }
}
BENCHMARK(BM_SimulationTick);

}  // namespace
BENCHMARK_MAIN();
