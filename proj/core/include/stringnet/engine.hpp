#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "stringnet/clustering.hpp"
#include "stringnet/control.hpp"
#include "stringnet/geometry.hpp"
#include "stringnet/model.hpp"

namespace stringnet {

enum class Phase { Idle, Gather, Seek, EncloseOpen, EncloseClosed, Herd, Done };

[[nodiscard]] const char *phase_name(Phase p);

/// An attacker swarm the defenders track. Ids are never reused.
struct TrackedSwarm {
  int id{-1};
  std::vector<int> members;  // attacker indices, ascending
  Swarm summary;
  int group_id{-1};
};

/// Defenders acting together on one or more swarms. `members` is the
/// group's path order; formation slot l is served by members[l].
struct DefenderGroup {
  int id{-1};
  Phase phase{Phase::Gather};
  std::vector<int> members;
  std::vector<int> swarm_ids;
  StringNetGraph net;             // empty until the open net is established
  std::vector<Vec2> goals;
  Vec2 goal_velocity;
  double rho_sn{0.0};
  double theta_e{0.0};
  Vec2 virtual_center;
  int safe_area{-1};
  double entered_phase_at{0.0};
};

struct Event {
  std::int64_t tick{0};
  double t{0.0};
  std::string kind;
  int group_id{-1};
  int swarm_id{-1};
  std::string detail;
};

/// Per-group milestones, keyed by group id in RunMetrics.
struct GroupTimes {
  double seek{-1.0};
  double enclose{-1.0};   // closed net established
  double herd_done{-1.0};
  int size{0};
  int safe_area{-1};
};

struct RunMetrics {
  bool herd_success{false};
  bool timed_out{false};
  double final_time{0.0};
  double time_to_gather{-1.0};
  std::map<int, GroupTimes> groups;
  int split_event_count{0};
  int breach_count{0};
  int closed_nets_formed{0};
  std::vector<double> max_string_stretch;  // per tick, longest established string / r_bar_s
  double max_closed_edge{0.0};             // longest closed-net string at any tick
  int containment_violations{0};           // assigned attackers outside their closed net after a tick
  int string_projections{0};               // backstop activations
  int containment_projections{0};
  int crossing_reflections{0};
  int attackers_in_safe_areas{0};
};

/// Deterministic multi-group herding simulation.
///
/// Defenders hold position until an attacker comes within rho_d_s of the
/// protected area. From then on they see every attacker, gather on a line
/// across the attackers' expected path, split into one group per detected
/// swarm, and each group seeks, encloses and herds its swarm into the
/// nearest safe area.
class Simulation {
 public:
  /// Throws ConfigError for invalid configurations and for n_d != n_a.
  explicit Simulation(ScenarioConfig cfg);

  /// Advances one step. No-op once finished().
  void tick();

  /// Ticks until finished() or the time limit, then finalizes metrics.
  /// `after_tick` is called after every tick.
  const RunMetrics &run(double max_time, const std::function<void(const Simulation &)> &after_tick = {});

  [[nodiscard]] bool finished() const { return finished_; }
  [[nodiscard]] bool activated() const { return activated_; }
  [[nodiscard]] double time() const { return static_cast<double>(tick_) * cfg_.dt; }
  [[nodiscard]] std::int64_t tick_count() const { return tick_; }
  [[nodiscard]] const ScenarioConfig &config() const { return cfg_; }
  [[nodiscard]] const std::vector<AgentState> &attackers() const { return attackers_; }
  [[nodiscard]] const std::vector<AgentState> &defenders() const { return defenders_; }
  [[nodiscard]] const std::vector<Vec2> &last_attacker_inputs() const { return u_attackers_; }
  [[nodiscard]] const std::vector<Vec2> &last_defender_inputs() const { return u_defenders_; }
  [[nodiscard]] const std::vector<DefenderGroup> &groups() const { return groups_; }
  [[nodiscard]] const std::vector<TrackedSwarm> &swarms() const { return swarms_; }
  [[nodiscard]] const std::vector<Event> &events() const { return events_; }
  [[nodiscard]] const RunMetrics &metrics() const { return metrics_; }

  /// Group and swarm of each agent (-1 when none) and the phase shown for it.
  [[nodiscard]] int group_of_defender(int j) const;
  [[nodiscard]] int swarm_of_attacker(int i) const;
  [[nodiscard]] int group_of_attacker(int i) const;
  [[nodiscard]] Phase phase_of_group(int group_id) const;

  /// All established strings as defender index pairs.
  [[nodiscard]] std::vector<StringNetGraph::Edge> strings() const;

  /// Recomputes end-of-run metrics; run() calls this.
  void finalize(bool timed_out);

 private:
  void log(std::string kind, int group_id, int swarm_id, std::string detail);
  void activate();
  void update_swarms();
  void reassign(int group_id);
  void split_group(DefenderGroup &g);
  void update_phases();
  void update_goals(DefenderGroup &g);
  void set_phase(DefenderGroup &g, Phase to);
  void compute_controls();
  void integrate();
  void enforce_strings();
  void enforce_barriers(const std::vector<AgentState> &attackers_before, const std::vector<AgentState> &defenders_before);
  void complete_herds();
  void record_metrics();
  void update_attacker_scripts();

  [[nodiscard]] DefenderGroup *find_group(int id);
  [[nodiscard]] const DefenderGroup *find_group(int id) const;
  [[nodiscard]] TrackedSwarm *find_swarm(int id);
  [[nodiscard]] std::vector<Vec2> attacker_positions() const;
  [[nodiscard]] std::vector<Vec2> member_positions(const DefenderGroup &g) const;
  [[nodiscard]] std::vector<int> group_attackers(const DefenderGroup &g) const;
  [[nodiscard]] Swarm group_swarm_summary(const DefenderGroup &g) const;
  [[nodiscard]] bool within_goals(const DefenderGroup &g, std::size_t begin, std::size_t end) const;
  [[nodiscard]] bool pair_establishable(int a, int b) const;

  ScenarioConfig cfg_;
  std::vector<AgentState> attackers_;
  std::vector<AgentState> defenders_;
  std::vector<Vec2> u_attackers_;
  std::vector<Vec2> u_defenders_;

  // Scripted attacker behavior.
  std::vector<int> flock_of_;
  std::vector<std::vector<Vec2>> waypoints_;
  std::vector<std::size_t> next_waypoint_;
  std::vector<bool> split_fired_;

  std::vector<TrackedSwarm> swarms_;
  std::vector<DefenderGroup> groups_;
  std::vector<Event> events_;
  RunMetrics metrics_;

  std::mt19937_64 rng_;
  std::int64_t tick_{0};
  bool activated_{false};
  bool finished_{false};
  int next_swarm_id_{0};
  int next_group_id_{0};
  double eps_nb_{0.0};
};

}  // namespace stringnet
