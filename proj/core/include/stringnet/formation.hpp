#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "stringnet/geometry.hpp"

namespace stringnet {

class FormationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class FormationKind { GatherLine, SeekLine, EncloseOpen, EncloseClosed, Herd };

/// Desired formation for one defender group. `size` is the spacing for the
/// line kinds and the circle radius otherwise. `velocity` is the rigid-body
/// feed-forward velocity shared by every goal.
struct FormationSpec {
  FormationKind kind{FormationKind::GatherLine};
  Vec2 center;
  double orientation{0.0};
  int count{2};
  double size{1.0};
  Vec2 velocity;
};

/// Line of n static goals through `center`, normal to `orientation`:
///   xi_l = center + spacing * (n - 2l + 1) / 2 * o(orientation + pi/2),  l = 1..n
[[nodiscard]] std::vector<Vec2> gather_goals(Vec2 center, double orientation, int n, double spacing);

/// Semicircle of radius rho_sn opposite to `orientation`:
///   theta_l = orientation + pi/2 + pi (l - 1) / (n - 1)
/// Throws FormationError unless rho_sn > min_radius.
[[nodiscard]] std::vector<Vec2> enclose_open_goals(Vec2 center, double orientation, int n, double rho_sn,
                                                   double min_radius = 0.0);

/// Full circle: theta_l = orientation + pi (2l - 1) / n.
/// Throws FormationError when the chord 2 rho_sn sin(pi / n) exceeds
/// max_chord or rho_sn <= min_radius.
[[nodiscard]] std::vector<Vec2> enclose_closed_goals(Vec2 center, double orientation, int n, double rho_sn,
                                                     double max_chord, double min_radius = 0.0);

/// Closed circle carried by the herding virtual agent. Same geometry as
/// enclose_closed_goals about the virtual center.
[[nodiscard]] std::vector<Vec2> herd_goals(Vec2 virtual_center, double orientation, int n, double rho_sn,
                                           double max_chord);

/// Goal positions for any formation kind (circles are not chord-checked here).
[[nodiscard]] std::vector<Vec2> formation_goals(const FormationSpec &spec);

/// Index of the safe area whose center is nearest to p; ties go to the lowest index.
[[nodiscard]] std::size_t closest_safe_area(Vec2 p, std::span<const Disk> safe_areas);

/// Largest circle radius whose n-gon chord does not exceed max_chord.
[[nodiscard]] double max_net_radius(int n, double max_chord);

}  // namespace stringnet
