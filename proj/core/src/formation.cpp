#include "stringnet/formation.hpp"

#include <cmath>

namespace stringnet {

namespace {

void require_count(int n) {
  if (n < 2) throw FormationError("formation needs at least 2 goals");
}

std::vector<Vec2> circle_points(Vec2 center, double rho, int n, auto &&angle_of) {
  std::vector<Vec2> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int l = 1; l <= n; ++l) out.push_back(center + unit_at(angle_of(l)) * rho);
  return out;
}

}  // namespace

std::vector<Vec2> gather_goals(Vec2 center, double orientation, int n, double spacing) {
  require_count(n);
  if (!(spacing > 0.0)) throw FormationError("line spacing must be positive");
  const Vec2 dir = unit_at(orientation + 0.5 * kPi);
  std::vector<Vec2> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int l = 1; l <= n; ++l) out.push_back(center + dir * (spacing * (n - 2 * l + 1) * 0.5));
  return out;
}

std::vector<Vec2> enclose_open_goals(Vec2 center, double orientation, int n, double rho_sn, double min_radius) {
  require_count(n);
  if (!(rho_sn > min_radius) || !(rho_sn > 0.0))
    throw FormationError("enclosing radius must exceed the swarm radius plus tracking error");
  const double step = kPi / (n - 1);
  return circle_points(center, rho_sn, n, [&](int l) { return orientation + 0.5 * kPi + step * (l - 1); });
}

std::vector<Vec2> enclose_closed_goals(Vec2 center, double orientation, int n, double rho_sn, double max_chord,
                                       double min_radius) {
  require_count(n);
  if (!(rho_sn > min_radius) || !(rho_sn > 0.0))
    throw FormationError("enclosing radius must exceed the swarm radius plus tracking error");
  const double chord = 2.0 * rho_sn * std::sin(kPi / n);
  if (chord > max_chord * (1.0 + 1e-12)) throw FormationError("closed formation chord exceeds the string length");
  return circle_points(center, rho_sn, n, [&](int l) { return orientation + kPi * (2 * l - 1) / n; });
}

std::vector<Vec2> herd_goals(Vec2 virtual_center, double orientation, int n, double rho_sn, double max_chord) {
  return enclose_closed_goals(virtual_center, orientation, n, rho_sn, max_chord);
}

std::vector<Vec2> formation_goals(const FormationSpec &spec) {
  switch (spec.kind) {
    case FormationKind::GatherLine:
    case FormationKind::SeekLine:
      return gather_goals(spec.center, spec.orientation, spec.count, spec.size);
    case FormationKind::EncloseOpen:
      return enclose_open_goals(spec.center, spec.orientation, spec.count, spec.size);
    case FormationKind::EncloseClosed:
    case FormationKind::Herd:
      require_count(spec.count);
      return circle_points(spec.center, spec.size, spec.count,
                           [&](int l) { return spec.orientation + kPi * (2 * l - 1) / spec.count; });
  }
  return {};
}

std::size_t closest_safe_area(Vec2 p, std::span<const Disk> safe_areas) {
  if (safe_areas.empty()) throw std::invalid_argument("no safe areas");
  std::size_t best = 0;
  double best_d = distance(p, safe_areas[0].center);
  for (std::size_t m = 1; m < safe_areas.size(); ++m) {
    const double d = distance(p, safe_areas[m].center);
    if (d < best_d) {
      best = m;
      best_d = d;
    }
  }
  return best;
}

double max_net_radius(int n, double max_chord) {
  require_count(n);
  return max_chord / (2.0 * std::sin(kPi / n));
}

}  // namespace stringnet
