#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "stringnet/geometry.hpp"
#include "stringnet/model.hpp"

namespace stringnet {

/// Instance of the connectivity-constrained generalized assignment problem.
/// Defenders are listed in Open-StringNet path order; `capacities[k]` is the
/// number of defenders swarm k must receive.
struct C2GAPInstance {
  std::vector<Vec2> defender_positions;
  std::vector<Vec2> swarm_centers;
  std::vector<int> capacities;
};

/// Capacities do not cover the defenders, or a capacity is not positive.
class InfeasibleInstance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A matrix that does not satisfy the assignment constraints was passed where
/// a feasible one is required.
class InfeasibleAssignment : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Binary decision matrix delta(j, k) = 1 iff path-position j serves swarm k.
class AssignmentMatrix {
 public:
  AssignmentMatrix() = default;
  AssignmentMatrix(int n_defenders, int n_swarms);

  /// Consecutive blocks along the path: swarm_order[0] gets the first
  /// capacities[swarm_order[0]] defenders, and so on.
  static AssignmentMatrix from_block_order(std::span<const int> swarm_order, std::span<const int> capacities);

  [[nodiscard]] int n_defenders() const { return n_defenders_; }
  [[nodiscard]] int n_swarms() const { return n_swarms_; }
  [[nodiscard]] bool operator()(int j, int k) const { return delta_[index(j, k)] != 0; }
  void set(int j, int k, bool value) { delta_[index(j, k)] = value ? 1 : 0; }

  /// For each swarm, its path positions in ascending order.
  [[nodiscard]] std::vector<std::vector<int>> block_map() const;
  /// Swarm served by path position j, or -1.
  [[nodiscard]] int swarm_of(int j) const;
  /// Swarms in the order their blocks appear along the path.
  [[nodiscard]] std::vector<int> block_order() const;

  friend bool operator==(const AssignmentMatrix &, const AssignmentMatrix &) = default;

 private:
  [[nodiscard]] std::size_t index(int j, int k) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(n_swarms_) + static_cast<std::size_t>(k);
  }

  int n_defenders_{0};
  int n_swarms_{0};
  std::vector<std::uint8_t> delta_;
};

/// Throws InfeasibleInstance unless every capacity is positive and they sum
/// to the number of defenders.
void check_instance(const C2GAPInstance &inst);

/// True when rows sum to one, column k sums to capacities[k] and every
/// column's ones form one consecutive run.
[[nodiscard]] bool is_feasible(const C2GAPInstance &inst, const AssignmentMatrix &a);

/// Sum over assigned pairs of |center_k - defender_j|. Throws
/// InfeasibleAssignment if `a` is not feasible for `inst`.
[[nodiscard]] double assignment_cost(const C2GAPInstance &inst, const AssignmentMatrix &a);

/// Optimal C2GAP assignment.
///
/// Contiguity plus exact cover force every feasible assignment to be a split
/// of the path into one consecutive block per swarm, with the block sizes
/// fixed by the capacities. The feasible set is therefore exactly the
/// N_ac! orderings of swarms along the path. This walks those orderings
/// depth-first in lexicographic order and prunes a prefix once its cost plus
/// an admissible bound (each remaining defender at its nearest remaining
/// center) cannot beat the incumbent. The first optimum found is kept, so
/// ties resolve to the lexicographically smallest ordering.
[[nodiscard]] AssignmentMatrix solve_exact(const C2GAPInstance &inst);

/// Search statistics of the last solve_exact call on this thread.
struct ExactSolveStats {
  std::uint64_t nodes{0};
  std::uint64_t leaves{0};
};
[[nodiscard]] ExactSolveStats last_exact_solve_stats();

/// Attacker side of the hierarchical assignment.
struct AttackerSummary {
  std::vector<Vec2> centers;  // hull centers
  std::vector<int> sizes;     // attackers per swarm, also the capacities
  std::vector<int> ids;       // caller's swarm identifiers
  [[nodiscard]] int total() const;
  [[nodiscard]] std::size_t count() const { return centers.size(); }
};

/// Defender side: positions and identifiers in current path order.
struct DefenderSummary {
  std::vector<Vec2> positions;
  std::vector<int> ids;
  [[nodiscard]] std::size_t count() const { return positions.size(); }
};

struct SplitResult {
  AttackerSummary left_attackers;
  DefenderSummary left_defenders;
  AttackerSummary right_attackers;
  DefenderSummary right_defenders;
};

/// Splits swarms into two groups of roughly half the attackers each.
///
/// Each swarm's angle is measured from the mean swarm direction, as seen from
/// the defenders' centroid, to its own direction. Swarms are taken in
/// descending angle (ties by position in the summary) into the left group
/// until it holds at least ceil(total / 2) attackers. The left defenders are
/// the first sum-of-left-capacities defenders in path order. If the rule
/// would leave the right side empty, the last left swarm moves right.
[[nodiscard]] SplitResult split_equal(const AttackerSummary &attackers, const DefenderSummary &defenders);

/// Divide-and-conquer assignment: solve exactly once at most n_ac_min swarms
/// remain, otherwise split_equal and recurse on both halves. Rows of the
/// result follow `defenders` path order, columns follow `attackers`.
[[nodiscard]] AssignmentMatrix solve_hierarchical(const AttackerSummary &attackers, const DefenderSummary &defenders,
                                                  int n_ac_min);

/// C2GAP instance with capacities equal to the swarm sizes.
[[nodiscard]] C2GAPInstance make_instance(const AttackerSummary &attackers, const DefenderSummary &defenders);

/// Goal l is served by defender defender_for_goal[l].
struct GoalAssignment {
  std::vector<int> defender_for_goal;
  double makespan{0.0};
};

/// Bottleneck assignment on straight-line travel time distance / speed.
/// Among bijections with the optimal makespan, the one with the least total
/// distance is returned. Throws std::invalid_argument on size mismatch.
[[nodiscard]] GoalAssignment gather_goal_assignment(std::span<const Vec2> defenders, std::span<const Vec2> goals,
                                                    double speed);

struct GatheringCenter {
  Vec2 center;
  double rho{0.0};
  bool feasible{false};
  GoalAssignment assignment;
};

/// Feasibility of placing the gathering line at distance rho from the
/// protected center on the attackers' expected path: the defenders' makespan
/// must beat the attackers' straight-line arrival time at that center.
[[nodiscard]] bool gathering_feasible(const ScenarioConfig &cfg, std::span<const Vec2> defenders, Vec2 attacker_com,
                                      double theta_acm, double rho, GoalAssignment *assignment = nullptr);

/// Largest feasible rho in (rho_p, |attacker_com - r_p|) by bisection to
/// 1e-3 rho_p, with the resulting center and goal assignment. `feasible` is
/// false when even rho_p fails.
[[nodiscard]] GatheringCenter gathering_center(const ScenarioConfig &cfg, std::span<const Vec2> defenders,
                                               Vec2 attacker_com, double theta_acm);

/// Uses the scenario's initial defender positions.
[[nodiscard]] GatheringCenter gathering_center(const ScenarioConfig &cfg, Vec2 attacker_com, double theta_acm);

}  // namespace stringnet
