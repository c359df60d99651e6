#include "stringnet/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "stringnet/formation.hpp"

namespace stringnet {

// --- AssignmentMatrix --------------------------------------------------------

AssignmentMatrix::AssignmentMatrix(int n_defenders, int n_swarms)
    : n_defenders_(n_defenders),
      n_swarms_(n_swarms),
      delta_(static_cast<std::size_t>(std::max(n_defenders, 0)) * static_cast<std::size_t>(std::max(n_swarms, 0)), 0) {
  if (n_defenders < 0 || n_swarms < 0) throw std::invalid_argument("negative assignment matrix dimension");
}

AssignmentMatrix AssignmentMatrix::from_block_order(std::span<const int> swarm_order, std::span<const int> capacities) {
  const int n = std::accumulate(capacities.begin(), capacities.end(), 0);
  AssignmentMatrix a(n, static_cast<int>(capacities.size()));
  int j = 0;
  for (int k : swarm_order)
    for (int c = 0; c < capacities[static_cast<std::size_t>(k)]; ++c) a.set(j++, k, true);
  return a;
}

std::vector<std::vector<int>> AssignmentMatrix::block_map() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n_swarms_));
  for (int j = 0; j < n_defenders_; ++j)
    for (int k = 0; k < n_swarms_; ++k)
      if ((*this)(j, k)) out[static_cast<std::size_t>(k)].push_back(j);
  return out;
}

int AssignmentMatrix::swarm_of(int j) const {
  for (int k = 0; k < n_swarms_; ++k)
    if ((*this)(j, k)) return k;
  return -1;
}

std::vector<int> AssignmentMatrix::block_order() const {
  std::vector<int> order;
  for (int j = 0; j < n_defenders_; ++j) {
    const int k = swarm_of(j);
    if (k >= 0 && (order.empty() || order.back() != k)) order.push_back(k);
  }
  return order;
}

// --- feasibility and cost ----------------------------------------------------

void check_instance(const C2GAPInstance &inst) {
  if (inst.capacities.size() != inst.swarm_centers.size())
    throw InfeasibleInstance("one capacity per swarm center is required");
  if (inst.swarm_centers.empty()) throw InfeasibleInstance("at least one swarm is required");
  long total = 0;
  for (int c : inst.capacities) {
    if (c < 1) throw InfeasibleInstance("every capacity must be at least 1");
    total += c;
  }
  if (total != static_cast<long>(inst.defender_positions.size()))
    throw InfeasibleInstance("capacities (" + std::to_string(total) + ") must sum to the number of defenders (" +
                             std::to_string(inst.defender_positions.size()) + ")");
}

bool is_feasible(const C2GAPInstance &inst, const AssignmentMatrix &a) {
  const int n = static_cast<int>(inst.defender_positions.size());
  const int m = static_cast<int>(inst.swarm_centers.size());
  if (a.n_defenders() != n || a.n_swarms() != m || inst.capacities.size() != static_cast<std::size_t>(m)) return false;
  for (int j = 0; j < n; ++j) {
    int row = 0;
    for (int k = 0; k < m; ++k) row += a(j, k) ? 1 : 0;
    if (row != 1) return false;
  }
  for (int k = 0; k < m; ++k) {
    int col = 0;
    int adjacent = 0;
    for (int j = 0; j < n; ++j) {
      col += a(j, k) ? 1 : 0;
      if (j + 1 < n && a(j, k) && a(j + 1, k)) ++adjacent;
    }
    const int cap = inst.capacities[static_cast<std::size_t>(k)];
    if (col != cap) return false;
    if (adjacent < cap - 1) return false;
  }
  return true;
}

double assignment_cost(const C2GAPInstance &inst, const AssignmentMatrix &a) {
  if (!is_feasible(inst, a)) throw InfeasibleAssignment("assignment violates the C2GAP constraints");
  double cost = 0.0;
  for (int k = 0; k < a.n_swarms(); ++k)
    for (int j = 0; j < a.n_defenders(); ++j)
      if (a(j, k))
        cost += distance(inst.swarm_centers[static_cast<std::size_t>(k)],
                         inst.defender_positions[static_cast<std::size_t>(j)]);
  return cost;
}

// --- exact solver ------------------------------------------------------------

namespace {

thread_local ExactSolveStats g_stats;

class OrderSearch {
 public:
  explicit OrderSearch(const C2GAPInstance &inst)
      : n_(static_cast<int>(inst.defender_positions.size())),
        m_(static_cast<int>(inst.swarm_centers.size())),
        caps_(inst.capacities),
        dist_(static_cast<std::size_t>(m_) * static_cast<std::size_t>(n_)),
        prefix_(static_cast<std::size_t>(m_) * static_cast<std::size_t>(n_ + 1), 0.0) {
    for (int k = 0; k < m_; ++k) {
      for (int j = 0; j < n_; ++j) {
        const double d = distance(inst.swarm_centers[static_cast<std::size_t>(k)],
                                  inst.defender_positions[static_cast<std::size_t>(j)]);
        dist_[idx(k, j)] = d;
        prefix_[pidx(k, j + 1)] = prefix_[pidx(k, j)] + d;
      }
    }
    used_.assign(static_cast<std::size_t>(m_), false);
  }

  std::vector<int> run() {
    best_ = std::numeric_limits<double>::infinity();
    order_.clear();
    dfs(0, 0.0);
    return best_order_;
  }

 private:
  std::size_t idx(int k, int j) const { return static_cast<std::size_t>(k) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j); }
  std::size_t pidx(int k, int j) const {
    return static_cast<std::size_t>(k) * static_cast<std::size_t>(n_ + 1) + static_cast<std::size_t>(j);
  }

  // Margin a candidate must beat the incumbent by; infinite before the first leaf.
  double threshold() const {
    if (!std::isfinite(best_)) return best_;
    return best_ - 1e-12 * std::max(1.0, std::abs(best_));
  }

  // Each remaining defender at its nearest remaining swarm center.
  double lower_bound(int pos) const {
    double lb = 0.0;
    for (int j = pos; j < n_; ++j) {
      double best = std::numeric_limits<double>::infinity();
      for (int k = 0; k < m_; ++k)
        if (!used_[static_cast<std::size_t>(k)]) best = std::min(best, dist_[idx(k, j)]);
      lb += best;
    }
    return lb;
  }

  void dfs(int pos, double partial) {
    ++g_stats.nodes;
    if (static_cast<int>(order_.size()) == m_) {
      ++g_stats.leaves;
      if (partial < threshold()) {
        best_ = partial;
        best_order_ = order_;
      }
      return;
    }
    for (int k = 0; k < m_; ++k) {
      if (used_[static_cast<std::size_t>(k)]) continue;
      const int end = pos + caps_[static_cast<std::size_t>(k)];
      const double c = partial + (prefix_[pidx(k, end)] - prefix_[pidx(k, pos)]);
      used_[static_cast<std::size_t>(k)] = true;
      if (c + lower_bound(end) < threshold()) {
        order_.push_back(k);
        dfs(end, c);
        order_.pop_back();
      }
      used_[static_cast<std::size_t>(k)] = false;
    }
  }

  int n_;
  int m_;
  std::vector<int> caps_;
  std::vector<double> dist_;
  std::vector<double> prefix_;
  std::vector<bool> used_;
  std::vector<int> order_;
  std::vector<int> best_order_;
  double best_{0.0};
};

}  // namespace

AssignmentMatrix solve_exact(const C2GAPInstance &inst) {
  check_instance(inst);
  g_stats = {};
  OrderSearch search(inst);
  const auto order = search.run();
  return AssignmentMatrix::from_block_order(order, inst.capacities);
}

ExactSolveStats last_exact_solve_stats() { return g_stats; }

// --- hierarchical ------------------------------------------------------------

int AttackerSummary::total() const { return std::accumulate(sizes.begin(), sizes.end(), 0); }

C2GAPInstance make_instance(const AttackerSummary &attackers, const DefenderSummary &defenders) {
  return {defenders.positions, attackers.centers, attackers.sizes};
}

namespace {

struct SplitIndices {
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  std::size_t n_left_defenders{0};
};

SplitIndices split_indices(const AttackerSummary &a, const DefenderSummary &d) {
  const std::size_t n = a.count();
  if (n < 2) throw std::invalid_argument("split_equal needs at least two swarms");
  if (d.positions.empty()) throw std::invalid_argument("split_equal needs defenders");

  const Vec2 r_dc = mean(d.positions);
  Vec2 ref;
  for (const auto &c : a.centers) ref += c - r_dc;
  ref /= static_cast<double>(n);
  if (ref.norm() < 1e-12) ref = {1.0, 0.0};

  std::vector<double> psi(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 rel = a.centers[k] - r_dc;
    psi[k] = std::atan2(cross(ref, rel), dot(ref, rel));
  }
  std::vector<std::size_t> sorted(n);
  std::iota(sorted.begin(), sorted.end(), std::size_t{0});
  std::stable_sort(sorted.begin(), sorted.end(), [&](std::size_t x, std::size_t y) { return psi[x] > psi[y]; });

  const int total = a.total();
  const int half = (total + 1) / 2;
  std::vector<bool> is_left(n, false);
  int cum = 0;
  std::size_t taken = 0;
  for (std::size_t k : sorted) {
    if (cum >= half) break;
    is_left[k] = true;
    cum += a.sizes[k];
    ++taken;
  }
  if (taken == n) {
    is_left[sorted.back()] = false;
    cum -= a.sizes[sorted.back()];
  }

  SplitIndices out;
  for (std::size_t k = 0; k < n; ++k) (is_left[k] ? out.left : out.right).push_back(k);
  out.n_left_defenders = static_cast<std::size_t>(cum);
  if (out.n_left_defenders > d.count()) throw InfeasibleInstance("left split needs more defenders than available");
  return out;
}

AttackerSummary pick(const AttackerSummary &a, const std::vector<std::size_t> &idx) {
  AttackerSummary out;
  for (std::size_t k : idx) {
    out.centers.push_back(a.centers[k]);
    out.sizes.push_back(a.sizes[k]);
    out.ids.push_back(k < a.ids.size() ? a.ids[k] : static_cast<int>(k));
  }
  return out;
}

DefenderSummary slice(const DefenderSummary &d, std::size_t begin, std::size_t end) {
  DefenderSummary out;
  out.positions.assign(d.positions.begin() + static_cast<std::ptrdiff_t>(begin),
                       d.positions.begin() + static_cast<std::ptrdiff_t>(end));
  if (!d.ids.empty())
    out.ids.assign(d.ids.begin() + static_cast<std::ptrdiff_t>(begin), d.ids.begin() + static_cast<std::ptrdiff_t>(end));
  return out;
}

// Owner (index into `a`) for each path position of `d`.
std::vector<int> hierarchical_owners(const AttackerSummary &a, const DefenderSummary &d, int n_ac_min) {
  if (static_cast<int>(a.count()) <= n_ac_min || a.count() < 2) {
    const auto inst = make_instance(a, d);
    const auto sol = solve_exact(inst);
    std::vector<int> owner(d.count());
    for (std::size_t j = 0; j < d.count(); ++j) owner[j] = sol.swarm_of(static_cast<int>(j));
    return owner;
  }
  const auto s = split_indices(a, d);
  const auto left = hierarchical_owners(pick(a, s.left), slice(d, 0, s.n_left_defenders), n_ac_min);
  const auto right = hierarchical_owners(pick(a, s.right), slice(d, s.n_left_defenders, d.count()), n_ac_min);
  std::vector<int> owner;
  owner.reserve(d.count());
  for (int o : left) owner.push_back(static_cast<int>(s.left[static_cast<std::size_t>(o)]));
  for (int o : right) owner.push_back(static_cast<int>(s.right[static_cast<std::size_t>(o)]));
  return owner;
}

}  // namespace

SplitResult split_equal(const AttackerSummary &attackers, const DefenderSummary &defenders) {
  const auto s = split_indices(attackers, defenders);
  return {pick(attackers, s.left), slice(defenders, 0, s.n_left_defenders), pick(attackers, s.right),
          slice(defenders, s.n_left_defenders, defenders.count())};
}

AssignmentMatrix solve_hierarchical(const AttackerSummary &attackers, const DefenderSummary &defenders, int n_ac_min) {
  if (n_ac_min < 1) throw std::invalid_argument("n_ac_min must be at least 1");
  check_instance(make_instance(attackers, defenders));
  const auto owner = hierarchical_owners(attackers, defenders, n_ac_min);
  AssignmentMatrix a(static_cast<int>(defenders.count()), static_cast<int>(attackers.count()));
  for (std::size_t j = 0; j < owner.size(); ++j) a.set(static_cast<int>(j), owner[j], true);
  return a;
}

// --- defender-goal assignment ------------------------------------------------

namespace {

using Matrix = std::vector<std::vector<double>>;

bool try_augment(int g, const Matrix &d, double limit, std::vector<int> &match_def, std::vector<char> &seen) {
  const std::size_t n = d.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (seen[j] || d[static_cast<std::size_t>(g)][j] > limit) continue;
    seen[j] = 1;
    if (match_def[j] < 0 || try_augment(match_def[j], d, limit, match_def, seen)) {
      match_def[j] = g;
      return true;
    }
  }
  return false;
}

bool has_perfect_matching(const Matrix &d, double limit) {
  const std::size_t n = d.size();
  std::vector<int> match_def(n, -1);
  for (std::size_t g = 0; g < n; ++g) {
    std::vector<char> seen(n, 0);
    if (!try_augment(static_cast<int>(g), d, limit, match_def, seen)) return false;
  }
  return true;
}

// Minimum-sum assignment, rows to columns.
std::vector<int> hungarian(const Matrix &cost) {
  const std::size_t n = cost.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (std::size_t j = 1; j <= n; ++j)
    if (p[j] != 0) row_to_col[p[j] - 1] = static_cast<int>(j - 1);
  return row_to_col;
}

}  // namespace

GoalAssignment gather_goal_assignment(std::span<const Vec2> defenders, std::span<const Vec2> goals, double speed) {
  if (defenders.size() != goals.size())
    throw std::invalid_argument("gather_goal_assignment needs as many goals as defenders");
  if (!(speed > 0.0)) throw std::invalid_argument("gather_goal_assignment needs a positive speed");
  const std::size_t n = goals.size();
  GoalAssignment out;
  if (n == 0) return out;

  Matrix d(n, std::vector<double>(n));
  std::vector<double> values;
  values.reserve(n * n);
  double total = 0.0;
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t j = 0; j < n; ++j) {
      d[g][j] = distance(goals[g], defenders[j]);
      values.push_back(d[g][j]);
      total += d[g][j];
    }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  std::size_t lo = 0, hi = values.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (has_perfect_matching(d, values[mid])) hi = mid;
    else lo = mid + 1;
  }
  const double limit = values[lo];

  // Forbidden pairs cost more than any all-allowed perfect matching.
  const double forbidden = 2.0 * total + 1.0;
  Matrix cost(n, std::vector<double>(n));
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t j = 0; j < n; ++j) cost[g][j] = d[g][j] <= limit ? d[g][j] : forbidden;

  out.defender_for_goal = hungarian(cost);
  double worst = 0.0;
  for (std::size_t g = 0; g < n; ++g) worst = std::max(worst, d[g][static_cast<std::size_t>(out.defender_for_goal[g])]);
  out.makespan = worst / speed;
  return out;
}

// --- gathering center --------------------------------------------------------

bool gathering_feasible(const ScenarioConfig &cfg, std::span<const Vec2> defenders, Vec2 attacker_com,
                        double theta_acm, double rho, GoalAssignment *assignment) {
  const double theta_df = theta_acm + kPi;
  const Vec2 center = cfg.protected_area.center + unit_at(theta_df) * rho;
  const auto goals = gather_goals(center, theta_df, static_cast<int>(defenders.size()), cfg.spacing());
  auto ga = gather_goal_assignment(defenders, goals, cfg.v_bar_d());
  const double attacker_time = distance(attacker_com, center) / cfg.v_bar_a();
  const bool ok = ga.makespan < attacker_time;
  if (assignment) *assignment = std::move(ga);
  return ok;
}

GatheringCenter gathering_center(const ScenarioConfig &cfg, std::span<const Vec2> defenders, Vec2 attacker_com,
                                 double theta_acm) {
  const double rho_p = cfg.protected_area.radius;
  const double tol = 1e-3 * rho_p;
  double lo = rho_p;
  double hi = distance(attacker_com, cfg.protected_area.center);

  GatheringCenter out;
  GoalAssignment ga;
  out.feasible = hi > lo && gathering_feasible(cfg, defenders, attacker_com, theta_acm, lo, &ga);
  if (out.feasible) {
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      if (gathering_feasible(cfg, defenders, attacker_com, theta_acm, mid)) lo = mid;
      else hi = mid;
    }
    (void)gathering_feasible(cfg, defenders, attacker_com, theta_acm, lo, &ga);
  }
  out.rho = lo;
  out.center = cfg.protected_area.center + unit_at(theta_acm + kPi) * lo;
  out.assignment = std::move(ga);
  return out;
}

GatheringCenter gathering_center(const ScenarioConfig &cfg, Vec2 attacker_com, double theta_acm) {
  std::vector<Vec2> pos;
  pos.reserve(cfg.defenders.size());
  for (const auto &s : cfg.defenders) pos.push_back(s.r);
  return gathering_center(cfg, pos, attacker_com, theta_acm);
}

}  // namespace stringnet
