#include "stringnet/model.hpp"

#include <cmath>
#include <sstream>

namespace stringnet {

StringNetGraph StringNetGraph::open(std::vector<int> members) {
  StringNetGraph g;
  g.kind_ = NetKind::Open;
  for (std::size_t i = 1; i < members.size(); ++i) g.edges_.emplace_back(members[i - 1], members[i]);
  g.members_ = std::move(members);
  return g;
}

StringNetGraph StringNetGraph::closed(std::vector<int> members) {
  if (members.size() < 3) throw std::invalid_argument("closed StringNet needs at least 3 members");
  StringNetGraph g;
  g.kind_ = NetKind::Closed;
  for (std::size_t i = 0; i < members.size(); ++i)
    g.edges_.emplace_back(members[i], members[(i + 1) % members.size()]);
  g.members_ = std::move(members);
  return g;
}

bool string_establishable(const AgentState &a, const AgentState &b, double r_under_s, double eps_v) {
  return distance(a.r, b.r) <= r_under_s && distance(a.v, b.v) <= eps_v;
}

double speed_bound(double u_bar, double c_d) {
  if (!(u_bar > 0.0) || !(c_d > 0.0)) throw std::domain_error("speed_bound needs u_bar > 0 and c_d > 0");
  return std::sqrt(u_bar / c_d);
}

namespace {

std::string fmt_state(const char *cls, std::size_t i) {
  std::ostringstream os;
  os << cls << '[' << i << ']';
  return os.str();
}

bool finite_state(const AgentState &s) { return s.r.is_finite() && s.v.is_finite(); }

}  // namespace

std::vector<std::string> validate_config(const ScenarioConfig &cfg) {
  std::vector<std::string> out;
  auto require = [&out](bool ok, std::string what) {
    if (!ok) out.push_back(std::move(what));
  };

  require(cfg.n_a > 0, "n_a must be positive");
  require(cfg.n_d > 0, "n_d must be positive");
  require(cfg.n_d >= cfg.n_a, "defenders must be no fewer than attackers (n_d >= n_a)");
  require(cfg.c_d > 0.0, "c_d must be positive");
  require(cfg.u_bar_a > 0.0 && cfg.u_bar_d > 0.0, "acceleration bounds must be positive");
  require(cfg.u_bar_a < cfg.u_bar_d, "defenders must be faster than attackers (u_bar_a < u_bar_d)");
  require(cfg.rho_a > 0.0 && cfg.rho_d > 0.0, "agent radii must be positive");
  require(cfg.rho_d <= cfg.rho_a, "defender radius must not exceed attacker radius (rho_d <= rho_a)");
  require(cfg.rho_d_s > 0.0 && cfg.rho_a_s > 0.0, "sensing radii must be positive");
  require(cfg.protected_area.radius > 0.0, "protected area radius must be positive");
  require(!cfg.safe_areas.empty(), "at least one safe area is required");
  for (std::size_t m = 0; m < cfg.safe_areas.size(); ++m)
    require(cfg.safe_areas[m].radius > 0.0, "safe area " + std::to_string(m) + " radius must be positive");
  require(cfg.r_under_s > 0.0, "r_under_s must be positive");
  require(cfg.r_under_s < cfg.r_bar_s, "establishment length must be below max string length (r_under_s < r_bar_s)");
  require(cfg.eps_v > 0.0, "eps_v must be positive");
  require(cfg.b_d > 0.0, "b_d must be positive");
  require(cfg.spacing() > 0.0, "r_hat_spacing must be positive");
  require(cfg.phi > 0.0 && cfg.phi < 1.0, "phi must satisfy 0 < phi < 1");
  require(cfg.m_pts >= 2, "m_pts must be at least 2");
  if (cfg.rho_df_g)
    require(*cfg.rho_df_g > cfg.protected_area.radius, "gathering distance must exceed protected radius (rho_df_g > rho_p)");

  // Protected and safe areas pairwise disjoint.
  bool disjoint = true;
  for (const auto &s : cfg.safe_areas)
    if (disks_overlap(s, cfg.protected_area)) disjoint = false;
  for (std::size_t i = 0; i < cfg.safe_areas.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.safe_areas.size(); ++j)
      if (disks_overlap(cfg.safe_areas[i], cfg.safe_areas[j])) disjoint = false;
  require(disjoint, "protected area and safe areas must be pairwise disjoint");

  require(cfg.attackers.size() == static_cast<std::size_t>(std::max(cfg.n_a, 0)),
          "attackers list length must equal n_a");
  require(cfg.defenders.size() == static_cast<std::size_t>(std::max(cfg.n_d, 0)),
          "defenders list length must equal n_d");
  require(cfg.dt > 0.0, "dt must be positive");
  require(cfg.k_p > 0.0 && cfg.k_v > 0.0, "controller gains must be positive");
  require(cfg.n_ac_min >= 1, "n_ac_min must be at least 1");
  require(cfg.v_herd_ratio > 0.0 && cfg.v_herd_ratio < 1.0, "v_herd_ratio must lie in (0, 1)");
  require(cfg.activation_distance() > 0.0, "d_act must be positive");
  require(cfg.max_time > 0.0, "max_time must be positive");

  const auto &pol = cfg.attacker_policy;
  require(pol.goal_gain >= 0.0 && pol.cohesion_gain >= 0.0 && pol.alignment_gain >= 0.0 &&
              pol.separation_gain >= 0.0 && pol.avoidance_gain >= 0.0 && pol.wander_gain >= 0.0 &&
              pol.divergence_gain >= 0.0,
          "attacker policy gains must be non-negative");
  for (const auto &split : pol.splits)
    for (int m : split.members)
      require(m >= 0 && m < cfg.n_a, "attacker split member index out of range");

  if (cfg.c_d > 0.0 && cfg.u_bar_a > 0.0 && cfg.u_bar_d > 0.0) {
    const double va = std::sqrt(cfg.u_bar_a / cfg.c_d);
    const double vd = std::sqrt(cfg.u_bar_d / cfg.c_d);
    for (std::size_t i = 0; i < cfg.attackers.size(); ++i) {
      const auto &s = cfg.attackers[i];
      require(finite_state(s), fmt_state("attackers", i) + " must be finite");
      require(s.v.norm() < va, fmt_state("attackers", i) + " initial speed must be below v_bar_a");
    }
    for (std::size_t j = 0; j < cfg.defenders.size(); ++j) {
      const auto &s = cfg.defenders[j];
      require(finite_state(s), fmt_state("defenders", j) + " must be finite");
      require(s.v.norm() < vd, fmt_state("defenders", j) + " initial speed must be below v_bar_d");
    }
  }
  return out;
}

namespace {

std::string join_violations(const std::vector<std::string> &v) {
  std::string s = "invalid scenario:";
  for (const auto &x : v) s += "\n  - " + x;
  return s;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error(join_violations(violations)), violations_(std::move(violations)) {}

}  // namespace stringnet
