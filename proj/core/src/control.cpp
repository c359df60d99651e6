#include "stringnet/control.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stringnet/dynamics.hpp"

namespace stringnet {

namespace {

Vec2 left_normal(Vec2 d) { return {-d.y, d.x}; }

}  // namespace

Disk bounding_circle(std::span<const Vec2> pts) {
  Disk d{mean(pts), 0.0};
  for (const auto &p : pts) d.radius = std::max(d.radius, distance(p, d.center));
  return d;
}

Vec2 defender_control(const AgentState &self, Vec2 goal, Vec2 goal_velocity, std::span<const Vec2> string_neighbors,
                      std::span<const Disk> other_groups, const DefenderControlParams &p) {
  Vec2 u = p.k_p * (goal - self.r) + p.k_v * (goal_velocity - self.v) + self.v * (p.c_d * self.v.norm());

  const double slack = p.string_slack * p.r_bar_s;
  const double span = std::max(p.r_bar_s - slack, 1e-9);
  for (const auto &n : string_neighbors) {
    const double d = distance(n, self.r);
    if (d > slack) u += normalized_or_zero(n - self.r) * (p.string_gain * p.u_bar * std::min(1.0, (d - slack) / span));
  }

  for (const auto &g : other_groups) {
    const double gap = distance(self.r, g.center) - g.radius;
    if (gap < p.group_margin) {
      const double w = std::min(1.0, (p.group_margin - gap) / p.group_margin);
      u += normalized_or_zero(self.r - g.center) * (p.group_gain * p.u_bar * w);
    }
  }
  return saturate(u, p.u_bar);
}

Vec2 string_constraint_force(const AgentState &attacker, std::span<const Segment> edges, double d_act,
                             double u_bar) {
  double best = std::numeric_limits<double>::infinity();
  const Segment *nearest = nullptr;
  Vec2 foot;
  for (const auto &e : edges) {
    const Vec2 c = closest_point_on_segment(attacker.r, e.a, e.b);
    const double d = distance(c, attacker.r);
    if (d < best) {
      best = d;
      nearest = &e;
      foot = c;
    }
  }
  if (!nearest || best > d_act) return {};

  Vec2 away = normalized_or_zero(attacker.r - foot);
  if (away == Vec2{}) {
    // On the string: push against the direction of travel.
    const Vec2 n = normalized_or_zero(left_normal(nearest->b - nearest->a));
    away = dot(n, attacker.v) > 0.0 ? -n : n;
  }
  // Ramp up toward the string, or the constant deceleration that stops the
  // approach before contact if that is larger.
  const double approach = std::max(0.0, -dot(attacker.v, away));
  const double brake = best > 0.0 ? approach * approach / (2.0 * best) : u_bar;
  return away * std::min(u_bar, std::max(u_bar * (1.0 - best / d_act), brake));
}

Vec2 attacker_control(const AttackerView &view, const AttackerPolicyConfig &policy, const AttackerControlParams &p) {
  const AgentState &s = view.self;
  const Vec2 goal_dir = normalized_or_zero(view.target - s.r);
  const double parity_side = view.index % 2 == 0 ? 1.0 : -1.0;
  Vec2 u = goal_dir * (policy.goal_gain * p.u_bar);

  Vec2 flock_center = s.r;
  if (!view.flockmates.empty()) {
    Vec2 c, v;
    for (const auto &m : view.flockmates) {
      c += m.r;
      v += m.v;
      const double d = distance(m.r, s.r);
      if (d < policy.separation_distance)
        u += normalized_or_zero(s.r - m.r) * (policy.separation_gain * p.u_bar * (1.0 - d / policy.separation_distance));
    }
    const double n = static_cast<double>(view.flockmates.size());
    c /= n;
    v /= n;
    u += policy.cohesion_gain * (c - s.r) + policy.alignment_gain * (v - s.v);
    flock_center = (c * n + s.r) / (n + 1.0);
  }

  bool blocked = false;
  for (const auto &d : view.sensed_defenders) {
    const Vec2 to_d = d - s.r;
    const double dist = to_d.norm();
    if (dist > p.sensing_radius) continue;
    const double w = policy.avoidance_gain * p.u_bar * (1.0 - dist / p.sensing_radius);
    const Vec2 dir = normalized_or_zero(to_d);
    u -= dir * w;
    const double ahead = dot(goal_dir, dir);
    if (ahead > 0.0) {
      double side = -cross(goal_dir, to_d);
      side = side > 0.0 ? 1.0 : side < 0.0 ? -1.0 : parity_side;
      u += left_normal(goal_dir) * (side * w * ahead);
    }
    if (dist > 0.0 && ahead >= std::cos(policy.blockage_cone)) blocked = true;
  }

  if (policy.kind == AttackerPolicyKind::SplitOnBlock && blocked) {
    double side = cross(goal_dir, s.r - flock_center);
    side = side > 0.0 ? 1.0 : side < 0.0 ? -1.0 : parity_side;
    u += left_normal(goal_dir) * (side * policy.divergence_gain * p.u_bar);
  }

  u += view.wander * (policy.wander_gain * p.u_bar);

  // A nearby string takes the normal component first: no push into the
  // string survives, and the tangential remainder gets what is left of u_bar.
  const Vec2 f = string_constraint_force(s, view.net_edges, p.d_act, p.u_bar);
  if (f == Vec2{}) return saturate(u, p.u_bar);
  const Vec2 n = normalized_or_zero(f);
  const double normal = std::min(p.u_bar, std::max(dot(u, n), f.norm()));
  const Vec2 tangential = u - n * dot(u, n);
  return n * normal + saturate(tangential, std::sqrt(std::max(0.0, p.u_bar * p.u_bar - normal * normal)));
}

}  // namespace stringnet
