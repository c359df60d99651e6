#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stringnet/geometry.hpp"

namespace stringnet {

/// Position/velocity pair of one agent.
struct AgentState {
  Vec2 r;
  Vec2 v;
  friend bool operator==(const AgentState &, const AgentState &) = default;
};

enum class NetKind { Open, Closed };

/// Defenders joined by string barriers. Open nets are path graphs over the
/// members in order, closed nets are cycles.
class StringNetGraph {
 public:
  using Edge = std::pair<int, int>;

  StringNetGraph() = default;

  static StringNetGraph open(std::vector<int> members);
  /// Requires at least three members.
  static StringNetGraph closed(std::vector<int> members);

  [[nodiscard]] NetKind kind() const { return kind_; }
  [[nodiscard]] const std::vector<int> &members() const { return members_; }
  [[nodiscard]] const std::vector<Edge> &edges() const { return edges_; }
  [[nodiscard]] bool empty() const { return members_.empty(); }

  friend bool operator==(const StringNetGraph &, const StringNetGraph &) = default;

 private:
  NetKind kind_{NetKind::Open};
  std::vector<int> members_;
  std::vector<Edge> edges_;
};

/// A string can be tied between two defenders only when they are within
/// r_under_s of each other and their velocities differ by at most eps_v.
[[nodiscard]] bool string_establishable(const AgentState &a, const AgentState &b, double r_under_s,
                                        double eps_v);

/// Terminal speed of the drag-limited double integrator, sqrt(u_bar / c_d).
/// Throws std::domain_error for non-positive input.
[[nodiscard]] double speed_bound(double u_bar, double c_d);

enum class AttackerPolicyKind { Flock, SplitOnBlock };

/// Scripted split: at `time` the listed attackers leave their current flock,
/// fly through `waypoints` in order and then resume toward the protected area.
struct AttackerSplit {
  double time{0.0};
  std::vector<int> members;
  std::vector<Vec2> waypoints;
  friend bool operator==(const AttackerSplit &, const AttackerSplit &) = default;
};

struct AttackerPolicyConfig {
  AttackerPolicyKind kind{AttackerPolicyKind::Flock};
  // All gains are fractions of u_bar_a unless noted.
  double goal_gain{1.0};
  double cohesion_gain{1.5};
  double alignment_gain{0.5};       // per (m/s) of velocity mismatch
  double separation_gain{1.0};
  double separation_distance{0.7};  // m
  double avoidance_gain{0.3};       // repulsion from sensed defenders
  double wander_gain{0.0};
  double waypoint_radius{2.0};      // m
  // SplitOnBlock parameters.
  double blockage_cone{0.6};        // half-angle, rad
  double divergence_gain{0.8};
  std::vector<AttackerSplit> splits;
  friend bool operator==(const AttackerPolicyConfig &, const AttackerPolicyConfig &) = default;
};

enum class EpsRule { Chain, HalfMinPts };
enum class ReassignScope { Group, Global };

/// Every physical, geometric and algorithmic parameter of a run plus the
/// initial conditions. Lengths in m, times in s.
struct ScenarioConfig {
  int n_a{0};
  int n_d{0};
  double c_d{1.0};
  double u_bar_a{3.0};
  double u_bar_d{5.0};
  double rho_a{0.15};
  double rho_d{0.15};
  double rho_d_s{100.0};
  double rho_a_s{6.0};
  Disk protected_area{{0.0, 0.0}, 5.0};
  std::vector<Disk> safe_areas;
  double r_bar_s{3.0};
  double r_under_s{2.0};
  double eps_v{0.1};
  double b_d{0.5};
  std::optional<double> r_hat_spacing;  // defaults to 0.9 * r_under_s
  double phi{0.25};
  int m_pts{3};
  std::optional<double> rho_df_g;       // nullopt = bisection ("auto")
  AttackerPolicyConfig attacker_policy;
  std::vector<AgentState> attackers;
  std::vector<AgentState> defenders;
  double dt{0.01};
  std::uint64_t seed{0};

  // Engine tunables.
  double k_p{4.0};
  double k_v{4.0};
  int n_ac_min{4};
  double v_herd_ratio{0.5};
  EpsRule eps_rule{EpsRule::Chain};
  ReassignScope reassign_scope{ReassignScope::Group};
  std::optional<double> d_act;          // defaults to 3 * rho_a
  double max_time{600.0};

  [[nodiscard]] double v_bar_a() const { return speed_bound(u_bar_a, c_d); }
  [[nodiscard]] double v_bar_d() const { return speed_bound(u_bar_d, c_d); }
  [[nodiscard]] double spacing() const { return r_hat_spacing.value_or(0.9 * r_under_s); }
  [[nodiscard]] double activation_distance() const { return d_act.value_or(3.0 * rho_a); }

  friend bool operator==(const ScenarioConfig &, const ScenarioConfig &) = default;
};

/// Every violated standing assumption of cfg; empty iff acceptable.
[[nodiscard]] std::vector<std::string> validate_config(const ScenarioConfig &cfg);

/// Raised when a scenario cannot be run; what() lists the violations.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> violations);
  [[nodiscard]] const std::vector<std::string> &violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

}  // namespace stringnet
