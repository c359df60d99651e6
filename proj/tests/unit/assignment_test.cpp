#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "stringnet/assignment.hpp"

using namespace stringnet;

namespace {

C2GAPInstance four_defenders() {
  return {{{0, 0}, {1, 0}, {2, 0}, {3, 0}}, {{0.5, 1}, {2.5, 1}}, {2, 2}};
}

// Independent structural check of the assignment constraints.
bool structurally_feasible(const C2GAPInstance &inst, const AssignmentMatrix &a) {
  const int n = static_cast<int>(inst.defender_positions.size());
  const int m = static_cast<int>(inst.swarm_centers.size());
  if (a.n_defenders() != n || a.n_swarms() != m) return false;
  for (int j = 0; j < n; ++j) {
    int row = 0;
    for (int k = 0; k < m; ++k) row += a(j, k);
    if (row != 1) return false;
  }
  for (int k = 0; k < m; ++k) {
    int first = -1, last = -1, count = 0;
    for (int j = 0; j < n; ++j)
      if (a(j, k)) {
        if (first < 0) first = j;
        last = j;
        ++count;
      }
    if (count != inst.capacities[static_cast<std::size_t>(k)]) return false;
    if (last - first + 1 != count) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("assignment_cost") {
  C2GAPInstance one{{{1, 0}, {0, 1}}, {{0, 0}}, {2}};
  CHECK(assignment_cost(one, AssignmentMatrix::from_block_order(std::vector<int>{0}, one.capacities)) == 2.0);

  C2GAPInstance zero{{{0, 0}, {5, 5}}, {{0, 0}, {5, 5}}, {1, 1}};
  CHECK(assignment_cost(zero, AssignmentMatrix::from_block_order(std::vector<int>{0, 1}, zero.capacities)) == 0.0);

  const auto inst = four_defenders();
  const auto a = AssignmentMatrix::from_block_order(std::vector<int>{0, 1}, inst.capacities);
  CHECK(assignment_cost(inst, a) == doctest::Approx(4 * std::sqrt(1.25)));
  CHECK(assignment_cost(inst, a) == doctest::Approx(oracle::c2gap_enumerate(inst)));

  AssignmentMatrix gap(4, 2);
  gap.set(0, 0, true);
  gap.set(2, 0, true);
  gap.set(1, 1, true);
  gap.set(3, 1, true);
  CHECK_FALSE(is_feasible(inst, gap));
  CHECK_THROWS_AS((void)assignment_cost(inst, gap), InfeasibleAssignment);
}

TEST_CASE("solve_exact small cases") {
  const auto inst = four_defenders();
  const auto a = solve_exact(inst);
  CHECK(a.block_map() == std::vector<std::vector<int>>{{0, 1}, {2, 3}});
  CHECK(assignment_cost(inst, a) == doctest::Approx(4.47213595499958));
  CHECK(assignment_cost(inst, AssignmentMatrix::from_block_order(std::vector<int>{1, 0}, inst.capacities)) >
        assignment_cost(inst, a));

  C2GAPInstance single{{{0, 0}, {1, 2}, {3, 1}}, {{1, 1}}, {3}};
  const auto s = solve_exact(single);
  CHECK(s.block_map() == std::vector<std::vector<int>>{{0, 1, 2}});
  CHECK(assignment_cost(single, s) ==
        doctest::Approx(distance({0, 0}, {1, 1}) + distance({1, 2}, {1, 1}) + distance({3, 1}, {1, 1})));

  C2GAPInstance bad = inst;
  bad.capacities = {2, 3};
  CHECK_THROWS_AS((void)solve_exact(bad), InfeasibleInstance);
  bad.capacities = {4, 0};
  CHECK_THROWS_AS((void)solve_exact(bad), InfeasibleInstance);
}

TEST_CASE("solve_exact matches ordering enumeration") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 150; ++trial) {
    const int m = oracle::uniform_int(rng, 1, 6);
    const int n = oracle::uniform_int(rng, std::max(m, 6), 18);
    const auto inst = oracle::random_c2gap(rng, m, n);
    std::vector<int> order;
    const double best = oracle::c2gap_enumerate(inst, &order);
    const auto a = solve_exact(inst);
    CHECK(structurally_feasible(inst, a));
    CHECK(std::abs(assignment_cost(inst, a) - best) <= 1e-9);
    CHECK(a.block_order() == order);
  }
}

TEST_CASE("split_equal") {
  SUBCASE("symmetric pair") {
    AttackerSummary a{{{-5, 5}, {5, 5}}, {3, 3}, {10, 11}};
    DefenderSummary d{{{-2.5, 0}, {-1.5, 0}, {-0.5, 0}, {0.5, 0}, {1.5, 0}, {2.5, 0}}, {0, 1, 2, 3, 4, 5}};
    const auto s = split_equal(a, d);
    CHECK(s.left_attackers.ids == std::vector<int>{10});
    CHECK(s.right_attackers.ids == std::vector<int>{11});
    CHECK(s.left_defenders.ids == std::vector<int>{0, 1, 2});
    CHECK(s.right_defenders.ids == std::vector<int>{3, 4, 5});
  }
  SUBCASE("three equal swarms") {
    AttackerSummary a{{{-10, 10}, {0, 10}, {10, 10}}, {6, 6, 6}, {0, 1, 2}};
    DefenderSummary d;
    for (int j = 0; j < 18; ++j) {
      d.positions.push_back({-8.5 + j, 0});
      d.ids.push_back(j);
    }
    const auto s = split_equal(a, d);
    CHECK(s.left_attackers.ids == std::vector<int>{0, 1});
    CHECK(s.right_attackers.ids == std::vector<int>{2});
    CHECK(s.left_defenders.count() == 12);
    CHECK(s.right_defenders.ids == std::vector<int>{12, 13, 14, 15, 16, 17});
  }
  SUBCASE("identical angles still give a valid partition") {
    AttackerSummary a{{{0, 5}, {0, 10}, {0, 15}}, {2, 2, 2}, {0, 1, 2}};
    DefenderSummary d{{{-2.5, 0}, {-1.5, 0}, {-0.5, 0}, {0.5, 0}, {1.5, 0}, {2.5, 0}}, {0, 1, 2, 3, 4, 5}};
    const auto s = split_equal(a, d);
    CHECK(s.left_attackers.count() >= 1);
    CHECK(s.right_attackers.count() >= 1);
    CHECK(s.left_attackers.count() + s.right_attackers.count() == 3);
    CHECK(s.left_defenders.count() == static_cast<std::size_t>(s.left_attackers.total()));
    CHECK(s.right_defenders.count() == static_cast<std::size_t>(s.right_attackers.total()));
  }
}

TEST_CASE("solve_hierarchical") {
  SUBCASE("base case equals exact") {
    C2GAPInstance inst{{{-1.5, 0}, {-0.5, 0}, {0.5, 0}, {1.5, 0}}, {{-3, 4}, {3, 4}}, {2, 2}};
    CHECK(solve_hierarchical(oracle::attackers_of(inst), oracle::defenders_of(inst), 2) == solve_exact(inst));
  }
  SUBCASE("collinear symmetric swarms") {
    C2GAPInstance inst;
    for (int j = 0; j < 8; ++j) inst.defender_positions.push_back({-3.5 + j, 0});
    inst.swarm_centers = {{-6, 6}, {-2, 6}, {2, 6}, {6, 6}};
    inst.capacities = {2, 2, 2, 2};
    const auto h = solve_hierarchical(oracle::attackers_of(inst), oracle::defenders_of(inst), 2);
    CHECK(structurally_feasible(inst, h));
    CHECK(h.block_order() == std::vector<int>{0, 1, 2, 3});
    CHECK(assignment_cost(inst, h) == doctest::Approx(oracle::c2gap_enumerate(inst)));
  }
  SUBCASE("random instances are feasible and dominated by exact") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      const auto inst = oracle::random_c2gap(rng, 10, 30);
      const auto h = solve_hierarchical(oracle::attackers_of(inst), oracle::defenders_of(inst), 3);
      CHECK(structurally_feasible(inst, h));
      CHECK(assignment_cost(inst, h) >= assignment_cost(inst, solve_exact(inst)) - 1e-9);
    }
  }
}

TEST_CASE("gather_goal_assignment") {
  const std::vector<Vec2> same{{0, 0}, {1, 0}, {2, 0}};
  const auto id = gather_goal_assignment(same, same, 2.0);
  CHECK(id.defender_for_goal == std::vector<int>{0, 1, 2});
  CHECK(id.makespan == 0.0);

  const std::vector<Vec2> d{{0, 0}, {10, 0}};
  const std::vector<Vec2> g{{9, 0}, {1, 0}};
  const auto x = gather_goal_assignment(d, g, 2.0);
  CHECK(x.defender_for_goal == std::vector<int>{1, 0});
  CHECK(x.makespan == doctest::Approx(0.5));

  CHECK_THROWS_AS((void)gather_goal_assignment(d, same, 1.0), std::invalid_argument);

  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = oracle::uniform_int(rng, 1, 6);
    std::vector<Vec2> dp, gp;
    for (int i = 0; i < n; ++i) {
      dp.push_back({oracle::uniform(rng, -10, 10), oracle::uniform(rng, -10, 10)});
      gp.push_back({oracle::uniform(rng, -10, 10), oracle::uniform(rng, -10, 10)});
    }
    const auto got = gather_goal_assignment(dp, gp, 1.0);
    const auto ref = oracle::goal_assignment_bruteforce(dp, gp);
    double total = 0.0;
    for (int l = 0; l < n; ++l) total += distance(gp[static_cast<std::size_t>(l)], dp[static_cast<std::size_t>(got.defender_for_goal[static_cast<std::size_t>(l)])]);
    CHECK(got.makespan == doctest::Approx(ref.bottleneck).epsilon(1e-12));
    CHECK(total == doctest::Approx(ref.total).epsilon(1e-12));
  }
}

TEST_CASE("gathering_center") {
  auto cfg = fixture::small_config(6);
  const Vec2 com{0, 40};
  const double theta = heading(cfg.protected_area.center - com);

  SUBCASE("defenders far away and attackers adjacent: infeasible") {
    std::vector<Vec2> far;
    for (int j = 0; j < 6; ++j) far.push_back({500.0 + j, -500.0});
    const auto gc = gathering_center(cfg, far, {0, 6}, heading(cfg.protected_area.center - Vec2{0, 6}));
    CHECK_FALSE(gc.feasible);
  }
  SUBCASE("defenders already on the path far ahead: feasible near the upper bound") {
    std::vector<Vec2> on_path;
    for (int l = 1; l <= 6; ++l) on_path.push_back({cfg.spacing() * (6 - 2 * l + 1) * 0.5, 38.0});
    const auto gc = gathering_center(cfg, on_path, com, theta);
    CHECK(gc.feasible);
    CHECK(gc.rho > 35.0);
  }
  SUBCASE("mid-range agrees with a dense grid search") {
    std::vector<Vec2> dpos;
    for (const auto &s : cfg.defenders) dpos.push_back(s.r);
    const auto gc = gathering_center(cfg, dpos, com, theta);
    const double grid = oracle::gathering_rho_grid(cfg, dpos, com, theta, 10000);
    REQUIRE(gc.feasible);
    CHECK(std::abs(gc.rho - grid) <= 1e-3 * cfg.protected_area.radius);
    CHECK(gathering_feasible(cfg, dpos, com, theta, gc.rho));
  }
}
