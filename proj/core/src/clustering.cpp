#include "stringnet/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace stringnet {

double weighted_distance(const StatePoint &a, const StatePoint &b, double phi) {
  const double dx = a.x[0] - b.x[0];
  const double dy = a.x[1] - b.x[1];
  const double dvx = a.x[2] - b.x[2];
  const double dvy = a.x[3] - b.x[3];
  return std::sqrt(dx * dx + dy * dy + phi * (dvx * dvx + dvy * dvy));
}

double max_enclosable_radius(double r_bar_s, int n) {
  if (n < 3) throw std::domain_error("an enclosing circle needs at least 3 defenders");
  return 0.5 * r_bar_s / std::tan(kPi / n);
}

double dbscan_eps(double r_bar_s, int n_d, int n_a, int m_pts, EpsRule rule) {
  if (n_a < 2) throw std::domain_error("dbscan_eps needs n_a >= 2");
  if (m_pts < 2) throw std::domain_error("dbscan_eps needs m_pts >= 2");
  const double rho_bar = max_enclosable_radius(r_bar_s, n_d);
  const double factor = rule == EpsRule::Chain ? static_cast<double>(m_pts - 1) : static_cast<double>(m_pts / 2);
  return rho_bar * factor / static_cast<double>(n_a - 1);
}

namespace {

constexpr int kUnvisited = -2;
constexpr int kNoise = -1;

std::vector<int> region_query(std::span<const StatePoint> pts, std::size_t i, double eps, double phi) {
  std::vector<int> out;
  for (std::size_t j = 0; j < pts.size(); ++j)
    if (weighted_distance(pts[i], pts[j], phi) <= eps) out.push_back(static_cast<int>(j));
  return out;
}

}  // namespace

std::vector<int> dbscan_labels(std::span<const StatePoint> points, double eps, int m_pts, double phi) {
  const auto min_pts = static_cast<std::size_t>(std::max(m_pts, 1));
  std::vector<int> label(points.size(), kUnvisited);
  int next_cluster = 0;

  for (std::size_t i = 0; i < points.size(); ++i) {
    if (label[i] != kUnvisited) continue;
    auto nbrs = region_query(points, i, eps, phi);
    if (nbrs.size() < min_pts) {
      label[i] = kNoise;
      continue;
    }
    const int c = next_cluster++;
    label[i] = c;
    std::deque<int> frontier(nbrs.begin(), nbrs.end());
    while (!frontier.empty()) {
      const int q = frontier.front();
      frontier.pop_front();
      if (label[q] == kNoise) label[q] = c;  // border point
      if (label[q] != kUnvisited) continue;
      label[q] = c;
      auto q_nbrs = region_query(points, static_cast<std::size_t>(q), eps, phi);
      if (q_nbrs.size() >= min_pts) frontier.insert(frontier.end(), q_nbrs.begin(), q_nbrs.end());
    }
  }
  return label;
}

SwarmPartition dbscan(std::span<const StatePoint> points, double eps, int m_pts, double phi) {
  const auto labels = dbscan_labels(points, eps, m_pts, phi);
  std::vector<Vec2> positions;
  positions.reserve(points.size());
  for (const auto &p : points) positions.push_back(p.position());

  int n_clusters = 0;
  for (int l : labels) n_clusters = std::max(n_clusters, l + 1);
  std::vector<std::vector<int>> members(static_cast<std::size_t>(n_clusters));

  SwarmPartition out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0) out.noise.push_back(static_cast<int>(i));
    else members[static_cast<std::size_t>(labels[i])].push_back(static_cast<int>(i));
  }
  for (auto &m : members) out.clusters.push_back(summarize_swarm(positions, std::move(m)));
  return out;
}

Swarm summarize_swarm(std::span<const Vec2> positions, std::vector<int> members) {
  if (members.empty()) throw std::invalid_argument("swarm must have at least one member");
  std::sort(members.begin(), members.end());
  std::vector<Vec2> pts;
  pts.reserve(members.size());
  for (int i : members) pts.push_back(positions[static_cast<std::size_t>(i)]);

  Swarm s;
  s.center_of_mass = mean(pts);
  s.hull_center = hull_centroid(pts);
  for (const auto &p : pts) s.radius = std::max(s.radius, distance(p, s.hull_center));
  s.members = std::move(members);
  return s;
}

double connectivity_radius(double r_bar_s, int n_d, int n_a, int swarm_size) {
  if (n_a < 2) throw std::domain_error("connectivity_radius needs n_a >= 2");
  return max_enclosable_radius(r_bar_s, n_d) * static_cast<double>(swarm_size - 1) / static_cast<double>(n_a - 1);
}

bool recluster_trigger(const Swarm &swarm, double r_bar_s, int n_d, int n_a) {
  return swarm.radius > connectivity_radius(r_bar_s, n_d, n_a, static_cast<int>(swarm.members.size()));
}

}  // namespace stringnet
