#include <algorithm>
#include <ostream>

#include <CLI11.hpp>

#include "stringnet_cli/commands.hpp"

namespace stringnet::cli {

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Multi-swarm string-net herding: simulation, assignment benchmark and clustering"};
  app.name("stringnet");
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  std::string out_dir;
  app.add_option("--seed", seed, "RNG seed (overrides the scenario seed)");
  app.add_option("--out", out_dir, "Output directory");

  SimulateOptions sim;
  std::string scenario;
  auto *simulate = app.add_subcommand("simulate", "Run a herding scenario");
  simulate->fallthrough();
  simulate->add_option("--scenario", scenario, "Scenario JSON file")->required();
  simulate->add_option("--max-time", sim.max_time, "Simulated time limit in seconds");
  simulate->add_option("--log-stride", sim.log_stride, "Write trajectory rows every n ticks")->capture_default_str();
  bool no_plot = false;
  simulate->add_flag("--no-plot", no_plot, "Skip trajectory.svg");

  BenchAssignOptions bench;
  std::string timing = "wall";
  auto *bench_cmd = app.add_subcommand("bench-assign", "Compare the exact and hierarchical assignment solvers");
  bench_cmd->fallthrough();
  bench_cmd->add_option("--n-swarms-min", bench.n_swarms_min)->capture_default_str();
  bench_cmd->add_option("--n-swarms-max", bench.n_swarms_max)->capture_default_str();
  bench_cmd->add_option("--defenders", bench.defenders, "Defenders per instance (0: 6 per swarm)")->capture_default_str();
  bench_cmd->add_option("--instances", bench.instances, "Instances per swarm count")->capture_default_str();
  bench_cmd->add_option("--n-ac-min", bench.n_ac_min, "Hierarchical leaf size")->capture_default_str();
  bench_cmd->add_option("--timing", timing, "wall: measure run time, off: write zeros (byte-reproducible)")
      ->check(CLI::IsMember({"wall", "off"}))
      ->capture_default_str();

  ClusterOptions cluster;
  std::string input;
  auto *cluster_cmd = app.add_subcommand("cluster", "DBSCAN over id,r_x,r_y,v_x,v_y rows");
  cluster_cmd->fallthrough();
  cluster_cmd->add_option("input", input, "Input CSV")->required();
  cluster_cmd->add_option("--eps", cluster.eps, "Neighborhood radius")->required();
  cluster_cmd->add_option("--min-pts", cluster.min_pts)->capture_default_str();
  cluster_cmd->add_option("--phi", cluster.phi, "Velocity weight")->capture_default_str();

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << e.what() << "\n";
    return kExitInvalidInput;
  }

  if (simulate->parsed()) {
    sim.scenario = scenario;
    sim.plot = !no_plot;
    sim.seed = seed;
    if (!out_dir.empty()) sim.out = out_dir;
    return cmd_simulate(sim, out, err);
  }
  if (bench_cmd->parsed()) {
    if (seed) bench.seed = *seed;
    if (!out_dir.empty()) bench.out = out_dir;
    bench.timing = timing == "wall";
    return cmd_bench_assign(bench, out, err);
  }
  cluster.input = input;
  if (!out_dir.empty()) cluster.out = out_dir;
  return cmd_cluster(cluster, out, err);
}

}  // namespace stringnet::cli
