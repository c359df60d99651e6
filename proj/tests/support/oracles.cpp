#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>

#include "stringnet/random.hpp"

namespace oracle {

namespace {

using hp = boost::multiprecision::cpp_dec_float_50;

double dist(Vec2 a, Vec2 b) { return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y)); }

}  // namespace

double uniform(std::mt19937_64 &rng, double lo, double hi) { return stringnet::uniform(rng, lo, hi); }
int uniform_int(std::mt19937_64 &rng, int lo, int hi) { return stringnet::uniform_int(rng, lo, hi); }

double block_order_cost(const stringnet::C2GAPInstance &inst, std::span<const int> order) {
  double cost = 0.0;
  std::size_t j = 0;
  for (int k : order)
    for (int c = 0; c < inst.capacities[static_cast<std::size_t>(k)]; ++c, ++j)
      cost += dist(inst.defender_positions[j], inst.swarm_centers[static_cast<std::size_t>(k)]);
  return cost;
}

double c2gap_enumerate(const stringnet::C2GAPInstance &inst, std::vector<int> *best_order) {
  std::vector<int> order(inst.swarm_centers.size());
  std::iota(order.begin(), order.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    const double c = block_order_cost(inst, order);
    if (c < best) {
      best = c;
      if (best_order) *best_order = order;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

stringnet::C2GAPInstance random_c2gap(std::mt19937_64 &rng, int n_swarms, int n_defenders) {
  stringnet::C2GAPInstance inst;
  const double width = 1.5 * n_defenders;
  for (int j = 0; j < n_defenders; ++j)
    inst.defender_positions.push_back(
        {-0.5 * width + 1.5 * j + uniform(rng, -0.3, 0.3), uniform(rng, -0.3, 0.3)});
  for (int k = 0; k < n_swarms; ++k) inst.swarm_centers.push_back({uniform(rng, -width, width), uniform(rng, 5.0, 5.0 + width)});
  inst.capacities.assign(static_cast<std::size_t>(n_swarms), 1);
  for (int extra = n_defenders - n_swarms; extra > 0; --extra)
    ++inst.capacities[static_cast<std::size_t>(uniform_int(rng, 0, n_swarms - 1))];
  return inst;
}

stringnet::AttackerSummary attackers_of(const stringnet::C2GAPInstance &inst) {
  stringnet::AttackerSummary a;
  a.centers = inst.swarm_centers;
  a.sizes = inst.capacities;
  for (std::size_t k = 0; k < inst.swarm_centers.size(); ++k) a.ids.push_back(static_cast<int>(k));
  return a;
}

stringnet::DefenderSummary defenders_of(const stringnet::C2GAPInstance &inst) {
  stringnet::DefenderSummary d;
  d.positions = inst.defender_positions;
  for (std::size_t j = 0; j < inst.defender_positions.size(); ++j) d.ids.push_back(static_cast<int>(j));
  return d;
}

Bijection goal_assignment_bruteforce(std::span<const Vec2> defenders, std::span<const Vec2> goals) {
  std::vector<int> perm(goals.size());
  std::iota(perm.begin(), perm.end(), 0);
  Bijection best;
  best.bottleneck = std::numeric_limits<double>::infinity();
  best.total = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0, total = 0.0;
    for (std::size_t g = 0; g < goals.size(); ++g) {
      const double d = dist(goals[g], defenders[static_cast<std::size_t>(perm[g])]);
      worst = std::max(worst, d);
      total += d;
    }
    if (worst < best.bottleneck || (worst == best.bottleneck && total < best.total)) {
      best.bottleneck = worst;
      best.total = total;
      best.defender_for_goal = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double gathering_rho_grid(const stringnet::ScenarioConfig &cfg, std::span<const Vec2> defenders, Vec2 com,
                          double theta_acm, int samples) {
  const double lo = cfg.protected_area.radius;
  const double hi = dist(com, cfg.protected_area.center);
  const double v_d = std::sqrt(cfg.u_bar_d / cfg.c_d);
  const double v_a = std::sqrt(cfg.u_bar_a / cfg.c_d);
  const double back = theta_acm + boost::math::constants::pi<double>();
  const Vec2 dir{std::cos(back), std::sin(back)};
  const Vec2 along{-dir.y, dir.x};
  const int n = static_cast<int>(defenders.size());
  double best = -1.0;
  for (int s = 0; s < samples; ++s) {
    const double rho = lo + (hi - lo) * s / (samples - 1);
    const Vec2 center = cfg.protected_area.center + dir * rho;
    std::vector<Vec2> goals;
    for (int l = 1; l <= n; ++l) goals.push_back(center + along * (cfg.spacing() * (n - 2 * l + 1) * 0.5));
    const double makespan = goal_assignment_bruteforce(defenders, goals).bottleneck / v_d;
    if (makespan < dist(com, center) / v_a) best = rho;
  }
  return best;
}

stringnet::AgentState integrate_fine(stringnet::AgentState s, Vec2 u, double c_d, double duration, int substeps) {
  const double h = duration / substeps;
  auto accel = [&](Vec2 v) {
    const double sp = std::sqrt(v.x * v.x + v.y * v.y);
    return Vec2{u.x - c_d * sp * v.x, u.y - c_d * sp * v.y};
  };
  for (int i = 0; i < substeps; ++i) {
    const Vec2 a1 = accel(s.v);
    const Vec2 vm{s.v.x + 0.5 * h * a1.x, s.v.y + 0.5 * h * a1.y};
    const Vec2 a2 = accel(vm);
    s.r = {s.r.x + h * vm.x, s.r.y + h * vm.y};
    s.v = {s.v.x + h * a2.x, s.v.y + h * a2.y};
  }
  return s;
}

double sqrt_ratio_hp(const char *num, const char *den) {
  const hp r = boost::multiprecision::sqrt(hp(num) / hp(den));
  return r.convert_to<double>();
}

double dbscan_eps_hp(const char *r_bar_s, int n_d, int n_a, int m_pts) {
  const hp pi = boost::math::constants::pi<hp>();
  const hp angle = pi / n_d;
  const hp cot = boost::multiprecision::cos(angle) / boost::multiprecision::sin(angle);
  const hp r = hp(r_bar_s) / 2 * cot * (m_pts - 1) / (n_a - 1);
  return r.convert_to<double>();
}

}  // namespace oracle
