#include "stringnet/engine.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <set>
#include <stdexcept>

#include "stringnet/assignment.hpp"
#include "stringnet/dynamics.hpp"
#include "stringnet/formation.hpp"
#include "stringnet/random.hpp"

namespace stringnet {

const char *phase_name(Phase p) {
  switch (p) {
    case Phase::Idle: return "idle";
    case Phase::Gather: return "gather";
    case Phase::Seek: return "seek";
    case Phase::EncloseOpen: return "enclose_open";
    case Phase::EncloseClosed: return "enclose_closed";
    case Phase::Herd: return "herd";
    case Phase::Done: return "done";
  }
  return "?";
}

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::string join_sizes(const std::vector<std::vector<int>> &parts) {
  std::string s;
  for (const auto &p : parts) {
    if (!s.empty()) s += '+';
    s += std::to_string(p.size());
  }
  return s;
}

// Clusters of `members` (global attacker indices); noise joins the cluster
// with the nearest hull center. Empty when DBSCAN finds no cluster at all.
std::vector<std::vector<int>> cluster_members(const std::vector<AgentState> &attackers, const std::vector<int> &members,
                                              double eps, int m_pts, double phi) {
  std::vector<StatePoint> pts;
  pts.reserve(members.size());
  for (int i : members) pts.push_back(StatePoint::from(attackers[static_cast<std::size_t>(i)]));
  const auto part = dbscan(pts, eps, m_pts, phi);
  std::vector<std::vector<int>> out;
  for (const auto &c : part.clusters) out.push_back(c.members);
  if (out.empty()) return out;
  for (int local : part.noise) {
    const Vec2 p = pts[static_cast<std::size_t>(local)].position();
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < part.clusters.size(); ++k) {
      const double d = distance(p, part.clusters[k].hull_center);
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    out[best].push_back(local);
  }
  for (auto &c : out) {
    for (int &m : c) m = members[static_cast<std::size_t>(m)];
    std::sort(c.begin(), c.end());
  }
  return out;
}

std::vector<Vec2> polygon_of(const std::vector<AgentState> &defenders, const std::vector<int> &members) {
  std::vector<Vec2> poly;
  poly.reserve(members.size());
  for (int j : members) poly.push_back(defenders[static_cast<std::size_t>(j)].r);
  return poly;
}

}  // namespace

Simulation::Simulation(ScenarioConfig cfg) : cfg_(std::move(cfg)), rng_(cfg_.seed) {
  auto violations = validate_config(cfg_);
  if (cfg_.n_d != cfg_.n_a) violations.push_back("the engine requires n_d == n_a (one defender per attacker)");
  if (cfg_.m_pts < 3) violations.push_back("the engine requires m_pts >= 3 (swarms of fewer than 3 attackers)");
  if (cfg_.n_a < 3) violations.push_back("the engine requires n_a >= 3");
  if (!violations.empty()) throw ConfigError(std::move(violations));

  attackers_ = cfg_.attackers;
  defenders_ = cfg_.defenders;
  u_attackers_.assign(attackers_.size(), {});
  u_defenders_.assign(defenders_.size(), {});
  flock_of_.assign(attackers_.size(), 0);
  waypoints_.assign(attackers_.size(), {});
  next_waypoint_.assign(attackers_.size(), 0);
  split_fired_.assign(cfg_.attacker_policy.splits.size(), false);
  eps_nb_ = dbscan_eps(cfg_.r_bar_s, cfg_.n_d, cfg_.n_a, cfg_.m_pts, cfg_.eps_rule);
}

// --- lookups -----------------------------------------------------------------

DefenderGroup *Simulation::find_group(int id) {
  for (auto &g : groups_)
    if (g.id == id) return &g;
  return nullptr;
}

const DefenderGroup *Simulation::find_group(int id) const {
  for (const auto &g : groups_)
    if (g.id == id) return &g;
  return nullptr;
}

TrackedSwarm *Simulation::find_swarm(int id) {
  for (auto &s : swarms_)
    if (s.id == id) return &s;
  return nullptr;
}

int Simulation::group_of_defender(int j) const {
  for (const auto &g : groups_)
    if (std::find(g.members.begin(), g.members.end(), j) != g.members.end()) return g.id;
  return -1;
}

int Simulation::swarm_of_attacker(int i) const {
  for (const auto &s : swarms_)
    if (std::binary_search(s.members.begin(), s.members.end(), i)) return s.id;
  return -1;
}

int Simulation::group_of_attacker(int i) const {
  for (const auto &s : swarms_)
    if (std::binary_search(s.members.begin(), s.members.end(), i)) return s.group_id;
  return -1;
}

Phase Simulation::phase_of_group(int group_id) const {
  const auto *g = find_group(group_id);
  return g ? g->phase : Phase::Idle;
}

std::vector<StringNetGraph::Edge> Simulation::strings() const {
  std::vector<StringNetGraph::Edge> out;
  for (const auto &g : groups_) out.insert(out.end(), g.net.edges().begin(), g.net.edges().end());
  return out;
}

std::vector<Vec2> Simulation::attacker_positions() const {
  std::vector<Vec2> p;
  p.reserve(attackers_.size());
  for (const auto &a : attackers_) p.push_back(a.r);
  return p;
}

std::vector<Vec2> Simulation::member_positions(const DefenderGroup &g) const { return polygon_of(defenders_, g.members); }

std::vector<int> Simulation::group_attackers(const DefenderGroup &g) const {
  std::vector<int> out;
  for (int sid : g.swarm_ids)
    for (const auto &s : swarms_)
      if (s.id == sid) out.insert(out.end(), s.members.begin(), s.members.end());
  std::sort(out.begin(), out.end());
  return out;
}

Swarm Simulation::group_swarm_summary(const DefenderGroup &g) const {
  return summarize_swarm(attacker_positions(), group_attackers(g));
}

bool Simulation::within_goals(const DefenderGroup &g, std::size_t begin, std::size_t end) const {
  for (std::size_t l = begin; l < end; ++l)
    if (distance(defenders_[static_cast<std::size_t>(g.members[l])].r, g.goals[l]) > cfg_.b_d) return false;
  return true;
}

bool Simulation::pair_establishable(int a, int b) const {
  return string_establishable(defenders_[static_cast<std::size_t>(a)], defenders_[static_cast<std::size_t>(b)],
                              cfg_.r_under_s, cfg_.eps_v);
}

void Simulation::log(std::string kind, int group_id, int swarm_id, std::string detail) {
  events_.push_back({tick_, time(), std::move(kind), group_id, swarm_id, std::move(detail)});
}

// --- tick --------------------------------------------------------------------

void Simulation::tick() {
  if (finished_) return;

  update_attacker_scripts();
  if (!activated_) {
    for (const auto &a : attackers_)
      if (distance(a.r, cfg_.protected_area.center) <= cfg_.rho_d_s) {
        activate();
        break;
      }
  }
  if (activated_) {
    update_swarms();
    update_phases();
  }

  compute_controls();
  const auto attackers_before = attackers_;
  const auto defenders_before = defenders_;
  integrate();
  enforce_strings();
  enforce_barriers(attackers_before, defenders_before);
  ++tick_;

  for (std::size_t i = 0; i < attackers_.size(); ++i) {
    if (cfg_.protected_area.contains(attackers_[i].r)) {
      ++metrics_.breach_count;
      log("breach", group_of_attacker(static_cast<int>(i)), swarm_of_attacker(static_cast<int>(i)),
          "attacker " + std::to_string(i));
      finished_ = true;
    }
  }
  complete_herds();
  record_metrics();

  if (activated_ && !groups_.empty() &&
      std::all_of(groups_.begin(), groups_.end(), [](const DefenderGroup &g) { return g.phase == Phase::Done; }))
    finished_ = true;
}

const RunMetrics &Simulation::run(double max_time, const std::function<void(const Simulation &)> &after_tick) {
  while (!finished_ && time() < max_time - 0.5 * cfg_.dt) {
    tick();
    if (after_tick) after_tick(*this);
  }
  const bool timed_out = !finished_;
  if (timed_out) log("timeout", -1, -1, "t=" + num(time()));
  finalize(timed_out);
  return metrics_;
}

void Simulation::finalize(bool timed_out) {
  metrics_.timed_out = timed_out;
  metrics_.final_time = time();
  int in_safe = 0;
  for (const auto &a : attackers_)
    if (std::any_of(cfg_.safe_areas.begin(), cfg_.safe_areas.end(), [&](const Disk &d) { return d.contains(a.r); }))
      ++in_safe;
  metrics_.attackers_in_safe_areas = in_safe;
  const bool all_done =
      activated_ && !groups_.empty() &&
      std::all_of(groups_.begin(), groups_.end(), [](const DefenderGroup &g) { return g.phase == Phase::Done; });
  metrics_.herd_success = all_done && metrics_.breach_count == 0 && in_safe == static_cast<int>(attackers_.size());
}

// --- attacker scripts --------------------------------------------------------

void Simulation::update_attacker_scripts() {
  const auto &splits = cfg_.attacker_policy.splits;
  for (std::size_t k = 0; k < splits.size(); ++k) {
    if (split_fired_[k] || time() + 1e-12 < splits[k].time) continue;
    split_fired_[k] = true;
    const int flock = static_cast<int>(k) + 1;
    for (int i : splits[k].members) {
      const auto idx = static_cast<std::size_t>(i);
      flock_of_[idx] = flock;
      waypoints_[idx] = splits[k].waypoints;
      next_waypoint_[idx] = 0;
    }
    log("attacker_split", -1, -1, std::to_string(splits[k].members.size()) + " attackers leave their flock");
  }
  for (std::size_t i = 0; i < attackers_.size(); ++i)
    while (next_waypoint_[i] < waypoints_[i].size() &&
           distance(attackers_[i].r, waypoints_[i][next_waypoint_[i]]) <= cfg_.attacker_policy.waypoint_radius)
      ++next_waypoint_[i];
}

// --- activation and swarm tracking -------------------------------------------

void Simulation::activate() {
  activated_ = true;
  log("activated", -1, -1, "attacker within defender sensing range");

  std::vector<int> all(attackers_.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  auto parts = cluster_members(attackers_, all, eps_nb_, cfg_.m_pts, cfg_.phi);
  if (parts.empty()) parts.push_back(all);

  DefenderGroup g;
  g.id = next_group_id_++;
  g.phase = Phase::Gather;
  g.entered_phase_at = time();
  const auto positions = attacker_positions();
  for (auto &p : parts) {
    TrackedSwarm s;
    s.id = next_swarm_id_++;
    s.summary = summarize_swarm(positions, p);
    s.members = std::move(p);
    s.group_id = g.id;
    g.swarm_ids.push_back(s.id);
    swarms_.push_back(std::move(s));
  }
  {
    std::vector<std::vector<int>> sizes;
    for (const auto &s : swarms_) sizes.push_back(s.members);
    log("partition", g.id, -1, join_sizes(sizes));
  }

  const Vec2 com = mean(positions);
  const double theta_acm = heading(cfg_.protected_area.center - com);
  std::vector<Vec2> dpos;
  for (const auto &d : defenders_) dpos.push_back(d.r);

  Vec2 center;
  GoalAssignment ga;
  if (cfg_.rho_df_g) {
    center = cfg_.protected_area.center + unit_at(theta_acm + kPi) * *cfg_.rho_df_g;
    const auto goals = gather_goals(center, theta_acm + kPi, cfg_.n_d, cfg_.spacing());
    ga = gather_goal_assignment(dpos, goals, cfg_.v_bar_d());
    log("gather_center", g.id, -1, "rho=" + num(*cfg_.rho_df_g) + " fixed");
  } else {
    const auto gc = gathering_center(cfg_, dpos, com, theta_acm);
    center = gc.center;
    ga = gc.assignment;
    if (!gc.feasible) {
      const auto goals = gather_goals(center, theta_acm + kPi, cfg_.n_d, cfg_.spacing());
      ga = gather_goal_assignment(dpos, goals, cfg_.v_bar_d());
      log("gather_infeasible", g.id, -1, "falling back to rho=" + num(gc.rho));
    }
    log("gather_center", g.id, -1, "rho=" + num(gc.rho) + " makespan=" + num(ga.makespan));
  }
  g.goals = gather_goals(center, theta_acm + kPi, cfg_.n_d, cfg_.spacing());
  g.members = ga.defender_for_goal;
  g.theta_e = theta_acm + kPi;
  metrics_.groups[g.id].size = static_cast<int>(g.members.size());
  groups_.push_back(std::move(g));
  log("phase", groups_.back().id, -1, "idle->gather");
}

void Simulation::update_swarms() {
  const auto positions = attacker_positions();
  for (auto &s : swarms_) s.summary = summarize_swarm(positions, s.members);

  std::set<int> touched;
  const auto ids = [&] {
    std::vector<int> v;
    for (const auto &s : swarms_) v.push_back(s.id);
    return v;
  }();
  for (int id : ids) {
    auto *s = find_swarm(id);
    const auto *g = find_group(s->group_id);
    if (g && (g->phase == Phase::Herd || g->phase == Phase::Done)) continue;
    if (!recluster_trigger(s->summary, cfg_.r_bar_s, cfg_.n_d, cfg_.n_a)) continue;

    auto parts = cluster_members(attackers_, s->members, eps_nb_, cfg_.m_pts, cfg_.phi);
    if (parts.size() <= 1) continue;

    const int group_id = s->group_id;
    ++metrics_.split_event_count;
    log("split_detected", group_id, id, join_sizes(parts));
    std::vector<int> new_ids;
    std::vector<TrackedSwarm> fresh;
    for (auto &p : parts) {
      TrackedSwarm t;
      t.id = next_swarm_id_++;
      t.summary = summarize_swarm(positions, p);
      t.members = std::move(p);
      t.group_id = group_id;
      new_ids.push_back(t.id);
      fresh.push_back(std::move(t));
    }
    swarms_.erase(std::find_if(swarms_.begin(), swarms_.end(), [&](const TrackedSwarm &x) { return x.id == id; }));
    for (auto &t : fresh) {
      log("swarm", group_id, t.id, std::to_string(t.members.size()) + " attackers");
      swarms_.push_back(std::move(t));
    }
    if (auto *gg = find_group(group_id)) {
      auto it = std::find(gg->swarm_ids.begin(), gg->swarm_ids.end(), id);
      it = gg->swarm_ids.erase(it);
      gg->swarm_ids.insert(it, new_ids.begin(), new_ids.end());
      touched.insert(group_id);
    }
  }
  for (int gid : touched) reassign(gid);
}

void Simulation::reassign(int group_id) {
  auto *g = find_group(group_id);
  if (!g || g->swarm_ids.size() < 2) return;
  if (g->phase == Phase::Gather) {
    log("reassign_deferred", g->id, -1, "open net not yet established");
    return;
  }
  if (cfg_.reassign_scope == ReassignScope::Global) {
    // Pool every group that has not closed its net into one path.
    DefenderGroup pooled;
    pooled.phase = Phase::Seek;
    std::vector<int> absorbed;
    for (const auto &o : groups_) {
      if (o.phase == Phase::Seek || o.phase == Phase::EncloseOpen || o.phase == Phase::EncloseClosed) {
        pooled.members.insert(pooled.members.end(), o.members.begin(), o.members.end());
        pooled.swarm_ids.insert(pooled.swarm_ids.end(), o.swarm_ids.begin(), o.swarm_ids.end());
        absorbed.push_back(o.id);
      }
    }
    for (int id : absorbed) {
      metrics_.groups.erase(id);
      groups_.erase(std::find_if(groups_.begin(), groups_.end(), [&](const DefenderGroup &x) { return x.id == id; }));
    }
    pooled.id = next_group_id_++;
    pooled.net = StringNetGraph::open(pooled.members);
    groups_.push_back(std::move(pooled));
    log("reassign", groups_.back().id, -1, "global over " + std::to_string(absorbed.size()) + " groups");
    split_group(groups_.back());
    return;
  }
  split_group(*g);
}

void Simulation::split_group(DefenderGroup &g) {
  AttackerSummary a;
  for (int sid : g.swarm_ids) {
    const auto *s = find_swarm(sid);
    a.centers.push_back(s->summary.hull_center);
    a.sizes.push_back(static_cast<int>(s->members.size()));
    a.ids.push_back(sid);
  }
  DefenderSummary d;
  for (int j : g.members) {
    d.positions.push_back(defenders_[static_cast<std::size_t>(j)].r);
    d.ids.push_back(j);
  }
  const auto delta = solve_hierarchical(a, d, cfg_.n_ac_min);
  const auto blocks = delta.block_map();
  const auto order = delta.block_order();

  const int parent = g.id;
  const bool had_net = !g.net.empty();
  std::vector<DefenderGroup> children;
  std::string detail;
  for (int k : order) {
    DefenderGroup c;
    c.id = next_group_id_ + static_cast<int>(children.size());
    c.phase = Phase::Seek;
    c.entered_phase_at = time();
    for (int pos : blocks[static_cast<std::size_t>(k)]) c.members.push_back(d.ids[static_cast<std::size_t>(pos)]);
    c.swarm_ids = {a.ids[static_cast<std::size_t>(k)]};
    if (had_net) c.net = StringNetGraph::open(c.members);
    find_swarm(a.ids[static_cast<std::size_t>(k)])->group_id = c.id;
    if (!detail.empty()) detail += ' ';
    detail += "group " + std::to_string(c.id) + ": " + std::to_string(c.members.size()) + " defenders -> swarm " +
              std::to_string(c.swarm_ids[0]);
    children.push_back(std::move(c));
  }
  next_group_id_ += static_cast<int>(children.size());

  metrics_.groups.erase(parent);
  groups_.erase(std::find_if(groups_.begin(), groups_.end(), [&](const DefenderGroup &x) { return x.id == parent; }));
  log("reassign", parent, -1, detail);
  for (auto &c : children) {
    auto &t = metrics_.groups[c.id];
    t.size = static_cast<int>(c.members.size());
    t.seek = time();
    log("phase", c.id, c.swarm_ids[0], "split->seek");
    groups_.push_back(std::move(c));
  }
}

// --- phases ------------------------------------------------------------------

void Simulation::set_phase(DefenderGroup &g, Phase to) {
  log("phase", g.id, g.swarm_ids.size() == 1 ? g.swarm_ids[0] : -1,
      std::string(phase_name(g.phase)) + "->" + phase_name(to));
  g.phase = to;
  g.entered_phase_at = time();
  auto &t = metrics_.groups[g.id];
  if (to == Phase::Seek) t.seek = time();
  if (to == Phase::Herd) t.enclose = time();
  if (to == Phase::Done) t.herd_done = time();
}

void Simulation::update_phases() {
  std::vector<int> to_split;
  std::vector<int> lost;
  for (auto &g : groups_) {
    const std::size_t n = g.members.size();
    switch (g.phase) {
      case Phase::Gather: {
        bool ready = within_goals(g, 0, n);
        for (std::size_t l = 0; ready && l + 1 < n; ++l) ready = pair_establishable(g.members[l], g.members[l + 1]);
        if (ready) {
          g.net = StringNetGraph::open(g.members);
          log("net_established", g.id, -1, "open, " + std::to_string(n) + " defenders");
          if (metrics_.time_to_gather < 0.0) metrics_.time_to_gather = time();
          set_phase(g, Phase::Seek);
          if (g.swarm_ids.size() > 1) to_split.push_back(g.id);
        }
        break;
      }
      case Phase::Seek: {
        update_goals(g);
        const Swarm s = group_swarm_summary(g);
        const Vec2 centroid = mean(member_positions(g));
        // Only enclose a swarm the net can actually surround.
        const bool fits = s.radius + cfg_.b_d + cfg_.rho_a < g.rho_sn;
        if (fits && distance(centroid, s.hull_center) <= g.rho_sn + 1.0) {
          g.theta_e = heading(s.hull_center - centroid);
          log("enclose", g.id, g.swarm_ids[0], "rho_sn=" + num(g.rho_sn));
          set_phase(g, Phase::EncloseOpen);
        }
        break;
      }
      case Phase::EncloseOpen:
      case Phase::EncloseClosed: {
        const Swarm s = group_swarm_summary(g);
        if (s.radius > g.rho_sn - cfg_.rho_a) {
          lost.push_back(g.id);
          break;
        }
        update_goals(g);
        if (g.phase == Phase::EncloseOpen) {
          if (within_goals(g, 0, 1) && within_goals(g, n - 1, n)) set_phase(g, Phase::EncloseClosed);
          break;
        }
        if (!within_goals(g, 0, n) || !pair_establishable(g.members.back(), g.members.front())) break;
        const auto poly = member_positions(g);
        const auto atk = group_attackers(g);
        const bool inside = std::all_of(atk.begin(), atk.end(), [&](int i) {
          return point_in_polygon(attackers_[static_cast<std::size_t>(i)].r, poly);
        });
        if (!inside) break;
        g.net = StringNetGraph::closed(g.members);
        ++metrics_.closed_nets_formed;
        log("net_established", g.id, g.swarm_ids[0], "closed, " + std::to_string(n) + " defenders");
        g.virtual_center = s.hull_center;
        g.safe_area = static_cast<int>(closest_safe_area(g.virtual_center, cfg_.safe_areas));
        metrics_.groups[g.id].safe_area = g.safe_area;
        set_phase(g, Phase::Herd);
        break;
      }
      case Phase::Herd: {
        const Disk &safe = cfg_.safe_areas[static_cast<std::size_t>(g.safe_area)];
        const Vec2 to = safe.center - g.virtual_center;
        const double v_herd = cfg_.v_herd_ratio * cfg_.v_bar_a();
        const double step_len = v_herd * cfg_.dt;
        Vec2 vel;
        if (to.norm() <= step_len) {
          g.virtual_center = safe.center;
        } else {
          vel = to / to.norm() * v_herd;
          g.virtual_center += vel * cfg_.dt;
        }
        g.goals = herd_goals(g.virtual_center, g.theta_e, static_cast<int>(n), g.rho_sn, cfg_.r_bar_s);
        g.goal_velocity = vel;
        break;
      }
      case Phase::Idle:
      case Phase::Done:
        g.goal_velocity = {};
        break;
    }
  }

  for (int id : lost) {
    auto *g = find_group(id);
    log("containment_lost", g->id, g->swarm_ids[0], "swarm outgrew the enclosing circle");
    // A fresh group keeps phases monotone per group id.
    DefenderGroup c;
    c.id = next_group_id_++;
    c.phase = Phase::Seek;
    c.entered_phase_at = time();
    c.members = g->members;
    c.swarm_ids = g->swarm_ids;
    c.net = StringNetGraph::open(c.members);
    for (int sid : c.swarm_ids) find_swarm(sid)->group_id = c.id;
    metrics_.groups.erase(id);
    auto &t = metrics_.groups[c.id];
    t.size = static_cast<int>(c.members.size());
    t.seek = time();
    groups_.erase(std::find_if(groups_.begin(), groups_.end(), [&](const DefenderGroup &x) { return x.id == id; }));
    log("phase", c.id, c.swarm_ids[0], "lost->seek");
    groups_.push_back(std::move(c));
    update_goals(groups_.back());
  }
  for (int id : to_split)
    if (auto *g = find_group(id)) split_group(*g);
  for (auto &g : groups_)
    if (g.goals.size() != g.members.size()) update_goals(g);
}

void Simulation::update_goals(DefenderGroup &g) {
  const int n = static_cast<int>(g.members.size());
  if (g.phase == Phase::Gather || g.phase == Phase::Herd || g.phase == Phase::Done) return;
  const Swarm s = group_swarm_summary(g);
  Vec2 swarm_velocity;
  for (int i : s.members) swarm_velocity += attackers_[static_cast<std::size_t>(i)].v;
  swarm_velocity /= static_cast<double>(s.members.size());
  g.goal_velocity = swarm_velocity;

  if (g.phase == Phase::Seek) {
    g.rho_sn = std::min(s.radius + cfg_.b_d + cfg_.rho_a + cfg_.rho_d + 0.1, max_net_radius(n, cfg_.r_under_s));
    const Vec2 centroid = mean(member_positions(g));
    Vec2 e = normalized_or_zero(s.hull_center - centroid);
    if (e == Vec2{}) e = unit_at(g.theta_e);
    const double theta_s = heading(e);
    g.theta_e = theta_s;
    g.goals = gather_goals(s.hull_center - e * (g.rho_sn + 0.5), theta_s, n, cfg_.spacing());
  } else if (g.phase == Phase::EncloseOpen) {
    g.goals = enclose_open_goals(s.hull_center, g.theta_e, n, g.rho_sn);
  } else if (g.phase == Phase::EncloseClosed) {
    g.goals = enclose_closed_goals(s.hull_center, g.theta_e, n, g.rho_sn, cfg_.r_bar_s);
  }
}

// Checked on post-step positions so a finished group's attackers are inside
// the safe area in the state that is reported.
void Simulation::complete_herds() {
  for (auto &g : groups_) {
    if (g.phase != Phase::Herd) continue;
    const Disk &safe = cfg_.safe_areas[static_cast<std::size_t>(g.safe_area)];
    const auto atk = group_attackers(g);
    const bool all_in = std::all_of(atk.begin(), atk.end(), [&](int i) {
      return safe.contains(attackers_[static_cast<std::size_t>(i)].r);
    });
    if (!safe.contains(g.virtual_center) || !all_in) continue;
    g.goal_velocity = {};
    log("herd_complete", g.id, g.swarm_ids[0], "safe area " + std::to_string(g.safe_area));
    set_phase(g, Phase::Done);
  }
}

// --- controls and integration ------------------------------------------------

void Simulation::compute_controls() {
  DefenderControlParams dp;
  dp.k_p = cfg_.k_p;
  dp.k_v = cfg_.k_v;
  dp.c_d = cfg_.c_d;
  dp.u_bar = cfg_.u_bar_d;
  dp.r_bar_s = cfg_.r_bar_s;
  dp.group_margin = 2.0 * cfg_.rho_d + 0.5;

  if (!activated_) {
    for (std::size_t j = 0; j < defenders_.size(); ++j)
      u_defenders_[j] = defender_control(defenders_[j], cfg_.defenders[j].r, {}, {}, {}, dp);
  } else {
    std::vector<Disk> circles;
    for (const auto &g : groups_) circles.push_back(bounding_circle(member_positions(g)));
    for (std::size_t gi = 0; gi < groups_.size(); ++gi) {
      const auto &g = groups_[gi];
      std::vector<Disk> others;
      for (std::size_t o = 0; o < groups_.size(); ++o)
        if (o != gi) others.push_back(circles[o]);
      const std::size_t n = g.members.size();
      const bool cyclic = g.net.kind() == NetKind::Closed;
      for (std::size_t l = 0; l < n; ++l) {
        std::vector<Vec2> nbrs;
        if (!g.net.empty()) {
          if (l > 0) nbrs.push_back(defenders_[static_cast<std::size_t>(g.members[l - 1])].r);
          else if (cyclic) nbrs.push_back(defenders_[static_cast<std::size_t>(g.members[n - 1])].r);
          if (l + 1 < n) nbrs.push_back(defenders_[static_cast<std::size_t>(g.members[l + 1])].r);
          else if (cyclic) nbrs.push_back(defenders_[static_cast<std::size_t>(g.members[0])].r);
        }
        const auto j = static_cast<std::size_t>(g.members[l]);
        u_defenders_[j] = defender_control(defenders_[j], g.goals[l], g.goal_velocity, nbrs, others, dp);
      }
    }
  }

  std::vector<Segment> edges;
  for (const auto &[a, b] : strings())
    edges.push_back({defenders_[static_cast<std::size_t>(a)].r, defenders_[static_cast<std::size_t>(b)].r});

  AttackerControlParams ap;
  ap.u_bar = cfg_.u_bar_a;
  ap.sensing_radius = cfg_.rho_a_s;
  ap.d_act = cfg_.activation_distance();
  const auto &policy = cfg_.attacker_policy;
  for (std::size_t i = 0; i < attackers_.size(); ++i) {
    std::vector<AgentState> mates;
    for (std::size_t m = 0; m < attackers_.size(); ++m)
      if (m != i && flock_of_[m] == flock_of_[i]) mates.push_back(attackers_[m]);
    std::vector<Vec2> sensed;
    for (const auto &d : defenders_)
      if (distance(d.r, attackers_[i].r) <= cfg_.rho_a_s) sensed.push_back(d.r);

    AttackerView view;
    view.self = attackers_[i];
    view.target = next_waypoint_[i] < waypoints_[i].size() ? waypoints_[i][next_waypoint_[i]]
                                                            : cfg_.protected_area.center;
    view.flockmates = mates;
    view.sensed_defenders = sensed;
    view.net_edges = edges;
    view.index = static_cast<int>(i);
    if (policy.wander_gain > 0.0) view.wander = unit_at(uniform(rng_, 0.0, 2.0 * kPi));
    u_attackers_[i] = attacker_control(view, policy, ap);
  }
}

void Simulation::integrate() {
  for (std::size_t i = 0; i < attackers_.size(); ++i)
    attackers_[i] = step(attackers_[i], {u_attackers_[i], cfg_.u_bar_a}, cfg_.c_d, cfg_.dt);
  for (std::size_t j = 0; j < defenders_.size(); ++j)
    defenders_[j] = step(defenders_[j], {u_defenders_[j], cfg_.u_bar_d}, cfg_.c_d, cfg_.dt);
}

// Strings cannot stretch beyond r_bar_s: pull both ends together and drop the
// separating velocity of each end.
void Simulation::enforce_strings() {
  const double limit = cfg_.r_bar_s;
  const double target = limit * (1.0 - 1e-12);
  const auto edges = strings();
  for (int pass = 0; pass < 50; ++pass) {
    bool changed = false;
    for (const auto &[a, b] : edges) {
      auto &da = defenders_[static_cast<std::size_t>(a)];
      auto &db = defenders_[static_cast<std::size_t>(b)];
      const Vec2 ab = db.r - da.r;
      const double d = ab.norm();
      if (d <= limit) continue;
      const Vec2 n = ab / d;
      const double half = 0.5 * (d - target);
      da.r += n * half;
      db.r -= n * half;
      const double va = dot(da.v, n);
      if (va < 0.0) da.v -= n * va;
      const double vb = dot(db.v, n);
      if (vb > 0.0) db.v -= n * vb;
      ++metrics_.string_projections;
      changed = true;
    }
    if (!changed) break;
  }
}

void Simulation::enforce_barriers(const std::vector<AgentState> &attackers_before,
                                  const std::vector<AgentState> &defenders_before) {
  const auto edges = strings();
  const double margin = 0.5 * cfg_.rho_a;

  // No attacker may pass through a string, whichever of the two moved.
  for (std::size_t i = 0; i < attackers_.size(); ++i) {
    auto &at = attackers_[i];
    const Vec2 p0 = attackers_before[i].r;
    for (const auto &[a, b] : edges) {
      const Vec2 a0 = defenders_before[static_cast<std::size_t>(a)].r;
      const Vec2 b0 = defenders_before[static_cast<std::size_t>(b)].r;
      const Vec2 a1 = defenders_[static_cast<std::size_t>(a)].r;
      const Vec2 b1 = defenders_[static_cast<std::size_t>(b)].r;
      const double s0 = cross(b0 - a0, p0 - a0);
      const double s1 = cross(b1 - a1, at.r - a1);
      if (!(s0 * s1 < 0.0)) continue;
      if (!segments_intersect(p0, at.r, a1, b1) && !segments_intersect(p0, at.r, a0, b0)) continue;
      Vec2 n = normalized_or_zero(Vec2{-(b1 - a1).y, (b1 - a1).x});
      if (s0 < 0.0) n = -n;
      at.r = closest_point_on_segment(at.r, a1, b1) + n * margin;
      const double vn = dot(at.v, n);
      if (vn < 0.0) at.v -= n * vn;
      ++metrics_.crossing_reflections;
    }
  }

  // Enclosed attackers stay inside their closed net.
  for (const auto &g : groups_) {
    if (g.net.kind() != NetKind::Closed) continue;
    const auto poly = member_positions(g);
    const Vec2 c = mean(poly);
    for (int i : group_attackers(g)) {
      auto &at = attackers_[static_cast<std::size_t>(i)];
      if (point_in_polygon(at.r, poly)) continue;
      double best = std::numeric_limits<double>::infinity();
      Vec2 foot;
      for (std::size_t l = 0; l < poly.size(); ++l) {
        const Vec2 f = closest_point_on_segment(at.r, poly[l], poly[(l + 1) % poly.size()]);
        const double d = distance(f, at.r);
        if (d < best) {
          best = d;
          foot = f;
        }
      }
      const Vec2 inward = normalized_or_zero(c - foot);
      at.r = foot + inward * std::min(margin, 0.5 * distance(c, foot));
      const double vn = dot(at.v, inward);
      if (vn < 0.0) at.v -= inward * vn;
      ++metrics_.containment_projections;
    }
  }
}

void Simulation::record_metrics() {
  double longest = 0.0;
  for (const auto &[a, b] : strings())
    longest = std::max(longest, distance(defenders_[static_cast<std::size_t>(a)].r, defenders_[static_cast<std::size_t>(b)].r));
  metrics_.max_string_stretch.push_back(longest / cfg_.r_bar_s);

  for (const auto &g : groups_) {
    if (g.phase != Phase::EncloseClosed && g.phase != Phase::Herd && g.phase != Phase::Done) continue;
    for (const auto &[a, b] : g.net.edges())
      metrics_.max_closed_edge = std::max(
          metrics_.max_closed_edge,
          distance(defenders_[static_cast<std::size_t>(a)].r, defenders_[static_cast<std::size_t>(b)].r));
    if (g.net.kind() != NetKind::Closed) continue;
    const auto poly = member_positions(g);
    for (int i : group_attackers(g))
      if (!point_in_polygon(attackers_[static_cast<std::size_t>(i)].r, poly)) ++metrics_.containment_violations;
  }
}

}  // namespace stringnet
