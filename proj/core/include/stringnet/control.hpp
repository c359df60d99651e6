#pragma once

#include <span>

#include "stringnet/geometry.hpp"
#include "stringnet/model.hpp"

namespace stringnet {

/// String barrier between two defenders, by endpoint position.
struct Segment {
  Vec2 a;
  Vec2 b;
};

struct DefenderControlParams {
  double k_p{4.0};
  double k_v{4.0};
  double c_d{1.0};
  double u_bar{5.0};
  double r_bar_s{3.0};
  // Strings longer than string_slack * r_bar_s pull the pair together.
  double string_slack{0.8};
  double string_gain{1.0};     // fraction of u_bar at full stretch
  double group_margin{0.8};    // m, activation margin around other groups
  double group_gain{0.5};      // fraction of u_bar at the circle boundary
};

/// Saturated tracking command
///   u = sat(k_p (goal - r) + k_v (goal_velocity - v) + c_d |v| v + string + repulsion, u_bar)
/// `string_neighbors` are the positions of the defenders this one shares a
/// string with; `other_groups` are bounding circles of the other defender groups.
[[nodiscard]] Vec2 defender_control(const AgentState &self, Vec2 goal, Vec2 goal_velocity,
                                    std::span<const Vec2> string_neighbors, std::span<const Disk> other_groups,
                                    const DefenderControlParams &p);

/// Bounding circle of a set of points around their mean.
[[nodiscard]] Disk bounding_circle(std::span<const Vec2> pts);

/// Repulsion from the nearest string within d_act, pointing away from it and
/// rising linearly from 0 at d_act to u_bar on the string itself, or the
/// braking needed to stop the approach before contact when that is larger.
/// Capped at u_bar. Zero when every string is farther than d_act.
[[nodiscard]] Vec2 string_constraint_force(const AgentState &attacker, std::span<const Segment> edges, double d_act,
                                           double u_bar);

/// Everything one attacker perceives in a tick.
struct AttackerView {
  AgentState self;
  Vec2 target;                          // current waypoint or protected-area center
  std::span<const AgentState> flockmates;  // same flock, self excluded
  std::span<const Vec2> sensed_defenders;  // already limited to the sensing radius
  std::span<const Segment> net_edges;
  Vec2 wander;                          // unit vector or zero
  int index{0};
};

struct AttackerControlParams {
  double u_bar{3.0};
  double sensing_radius{6.0};
  double d_act{0.45};
};

/// Saturated attacker command: goal seeking, flocking with its flockmates,
/// avoidance of sensed defenders and strings, optional wander. Within d_act
/// of a string the component pushing into it is dropped and the string
/// repulsion gets priority over the tangential part. SplitOnBlock
/// adds a sideways divergence when a sensed defender lies inside the
/// blockage cone around the goal direction.
[[nodiscard]] Vec2 attacker_control(const AttackerView &view, const AttackerPolicyConfig &policy,
                                    const AttackerControlParams &p);

}  // namespace stringnet
