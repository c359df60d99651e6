#pragma once

#include <array>
#include <span>
#include <vector>

#include "stringnet/geometry.hpp"
#include "stringnet/model.hpp"

namespace stringnet {

/// Stacked (r_x, r_y, v_x, v_y) of one attacker.
struct StatePoint {
  std::array<double, 4> x{};

  static StatePoint from(const AgentState &s) { return {{s.r.x, s.r.y, s.v.x, s.v.y}}; }
  [[nodiscard]] Vec2 position() const { return {x[0], x[1]}; }
};

/// One identified swarm. `hull_center` is the centroid of the convex hull of
/// member positions and is the reference point for radius, assignment cost
/// and enclosing formations.
struct Swarm {
  std::vector<int> members;  // ascending
  Vec2 center_of_mass;
  Vec2 hull_center;
  double radius{0.0};
};

struct SwarmPartition {
  std::vector<Swarm> clusters;
  std::vector<int> noise;  // ascending
};

/// sqrt(dr.dr + phi * dv.dv).
[[nodiscard]] double weighted_distance(const StatePoint &a, const StatePoint &b, double phi);

/// Radius of the largest circle inscribed in a Closed-StringNet of n
/// defenders with strings of length r_bar_s: (r_bar_s / 2) cot(pi / n).
/// Throws std::domain_error for n < 3.
[[nodiscard]] double max_enclosable_radius(double r_bar_s, int n);

/// Neighborhood radius for DBSCAN.
///   Chain:      rho_bar * (m_pts - 1) / (n_a - 1)
///   HalfMinPts: rho_bar * floor(m_pts / 2) / (n_a - 1)
/// with rho_bar = max_enclosable_radius(r_bar_s, n_d).
[[nodiscard]] double dbscan_eps(double r_bar_s, int n_d, int n_a, int m_pts, EpsRule rule = EpsRule::Chain);

/// Per-point cluster label (0-based, in order of discovery) or -1 for noise.
///
/// Closed neighborhoods that include the point itself: a point is core when
/// at least m_pts points (itself included) lie within eps. Points are scanned
/// in ascending index order and clusters are expanded breadth-first, so a
/// border point reachable from two clusters lands in the one discovered first.
[[nodiscard]] std::vector<int> dbscan_labels(std::span<const StatePoint> points, double eps, int m_pts, double phi);

/// dbscan_labels plus a Swarm summary for each cluster. Member indices refer
/// to positions in `points`.
[[nodiscard]] SwarmPartition dbscan(std::span<const StatePoint> points, double eps, int m_pts, double phi);

/// Summary of the listed members of `positions`.
[[nodiscard]] Swarm summarize_swarm(std::span<const Vec2> positions, std::vector<int> members);

/// Size-scaled connectivity radius of a swarm with `swarm_size` members.
[[nodiscard]] double connectivity_radius(double r_bar_s, int n_d, int n_a, int swarm_size);

/// True iff the swarm radius strictly exceeds its connectivity radius.
[[nodiscard]] bool recluster_trigger(const Swarm &swarm, double r_bar_s, int n_d, int n_a);

}  // namespace stringnet
