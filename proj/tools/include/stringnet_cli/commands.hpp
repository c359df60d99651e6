#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace stringnet::cli {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitRunFailed = 3;

struct SimulateOptions {
  std::filesystem::path scenario;
  std::filesystem::path out{"."};
  std::optional<std::uint64_t> seed;
  std::optional<double> max_time;  // s; defaults to the scenario's max_time
  int log_stride{1};               // trajectory rows every n ticks
  bool plot{true};
};

/// Writes trajectory.csv, events.csv, stretch.csv, metrics.json and
/// trajectory.svg into `out`. Exit 0 iff every swarm was herded.
int cmd_simulate(const SimulateOptions &opt, std::ostream &out, std::ostream &err);

struct BenchAssignOptions {
  int n_swarms_min{4};
  int n_swarms_max{12};
  int defenders{0};  // 0: 6 per swarm
  int instances{10};
  std::uint64_t seed{1};
  std::filesystem::path out{"."};
  bool timing{true};  // false writes 0 for the time columns
  int n_ac_min{4};
};

/// Writes bench_assign.csv and bench_assign.svg into `out`.
int cmd_bench_assign(const BenchAssignOptions &opt, std::ostream &out, std::ostream &err);

struct ClusterOptions {
  std::filesystem::path input;
  std::optional<std::filesystem::path> out;  // directory for clusters.csv; stdout when absent
  double eps{1.0};
  int min_pts{3};
  double phi{0.25};
};

/// Reads id,r_x,r_y,v_x,v_y rows and writes id,cluster_id (-1 = noise).
int cmd_cluster(const ClusterOptions &opt, std::ostream &out, std::ostream &err);

/// Full command line, argv[0] included.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace stringnet::cli
