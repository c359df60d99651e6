#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "stringnet/formation.hpp"

using namespace stringnet;

namespace {

void check_points(const std::vector<Vec2> &got, const std::vector<Vec2> &want, double tol = 1e-12) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    CHECK(std::abs(got[i].x - want[i].x) <= tol);
    CHECK(std::abs(got[i].y - want[i].y) <= tol);
  }
}

std::vector<Vec2> on_circle(Vec2 c, double rho, std::initializer_list<double> degrees) {
  std::vector<Vec2> out;
  for (double d : degrees) out.push_back(c + unit_at(d * kPi / 180.0) * rho);
  return out;
}

}  // namespace

TEST_CASE("gather_goals") {
  check_points(gather_goals({-5, 0}, kPi, 2, 2), {{-5, -1}, {-5, 1}});
  check_points(gather_goals({-5, 0}, kPi, 3, 2), {{-5, -2}, {-5, 0}, {-5, 2}});
  const auto ten = gather_goals({1, 2}, 0.3, 10, 1.5);
  for (std::size_t i = 0; i + 1 < ten.size(); ++i) CHECK(distance(ten[i], ten[i + 1]) == doctest::Approx(1.5).epsilon(1e-12));
  for (std::size_t i = 0; i < ten.size(); ++i) {
    const Vec2 mid = (ten[i] + ten[ten.size() - 1 - i]) * 0.5;
    CHECK(distance(mid, {1, 2}) < 1e-12);
  }
  CHECK_THROWS_AS((void)gather_goals({0, 0}, 0, 1, 1), FormationError);
  CHECK_THROWS_AS((void)gather_goals({0, 0}, 0, 3, 0), FormationError);
}

TEST_CASE("enclose_open_goals") {
  check_points(enclose_open_goals({0, 0}, 0, 3, 1), {{0, 1}, {-1, 0}, {0, -1}});
  check_points(enclose_open_goals({0, 0}, 0, 2, 1), {{0, 1}, {0, -1}});
  const auto five = enclose_open_goals({0, 0}, 0.4, 5, 2);
  for (std::size_t i = 0; i < five.size(); ++i) CHECK(five[i].norm() == doctest::Approx(2.0).epsilon(1e-12));
  for (std::size_t i = 0; i + 1 < five.size(); ++i) {
    const double gap = wrap_angle(heading(five[i + 1]) - heading(five[i]));
    CHECK(gap == doctest::Approx(kPi / 4).epsilon(1e-12));
  }
  CHECK_THROWS_AS((void)enclose_open_goals({0, 0}, 0, 3, 1.0, 1.0), FormationError);
}

TEST_CASE("enclose_closed_goals") {
  check_points(enclose_closed_goals({0, 0}, 0, 4, 1, 10), on_circle({0, 0}, 1, {45, 135, 225, 315}));
  check_points(enclose_closed_goals({0, 0}, 0, 3, 1, 10), on_circle({0, 0}, 1, {60, 180, 300}));
  CHECK_NOTHROW((void)enclose_closed_goals({0, 0}, 0, 6, 1, 1));
  CHECK_THROWS_AS((void)enclose_closed_goals({0, 0}, 0, 6, 1.001, 1), FormationError);
  CHECK(max_net_radius(6, 1) == doctest::Approx(1.0));
}

TEST_CASE("open to closed switch keeps slot order") {
  // Slot l sits on the same side of the enclosing axis in both formations,
  // so no two defenders swap sides at the switch.
  for (int n = 3; n <= 12; ++n) {
    const auto open = enclose_open_goals({0, 0}, 0, n, 2);
    const auto closed = enclose_closed_goals({0, 0}, 0, n, 2, 10);
    for (int l = 0; l < n; ++l) {
      const double a = open[static_cast<std::size_t>(l)].y, b = closed[static_cast<std::size_t>(l)].y;
      if (std::abs(a) > 1e-9 && std::abs(b) > 1e-9) CHECK((a > 0) == (b > 0));
    }
    CHECK(open.front().y > 0);
    CHECK(closed.front().y > 0);
    CHECK(open.back().y < 0);
    CHECK(closed.back().y < 0);
  }
}

TEST_CASE("herd_goals translate with the virtual center") {
  const auto base = enclose_closed_goals({0, 0}, 0.7, 5, 1.5, 3);
  check_points(herd_goals({0, 0}, 0.7, 5, 1.5, 3), base);
  const auto moved = herd_goals({1, 2}, 0.7, 5, 1.5, 3);
  for (std::size_t i = 0; i < base.size(); ++i) {
    CHECK(std::abs(moved[i].x - base[i].x - 1.0) <= 1e-12);
    CHECK(std::abs(moved[i].y - base[i].y - 2.0) <= 1e-12);
  }
  // Goals carried by a center moving at (0.5, 0) move at (0.5, 0).
  const double dt = 0.1;
  const auto later = herd_goals(Vec2{1, 2} + Vec2{0.5, 0} * dt, 0.7, 5, 1.5, 3);
  for (std::size_t i = 0; i < base.size(); ++i) {
    const Vec2 vel = (later[i] - moved[i]) / dt;
    CHECK(vel.x == doctest::Approx(0.5));
    CHECK(std::abs(vel.y) < 1e-9);
  }
}

TEST_CASE("closest_safe_area") {
  const std::vector<Disk> two{{{1, 0}, 0.5}, {{5, 0}, 0.5}};
  CHECK(closest_safe_area({0, 0}, two) == 0);
  const std::vector<Disk> tie{{{1, 0}, 0.5}, {{-1, 0}, 0.5}};
  CHECK(closest_safe_area({0, 0}, tie) == 0);
  CHECK_THROWS_AS((void)closest_safe_area({0, 0}, std::vector<Disk>{}), std::invalid_argument);

  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Disk> areas;
    for (int m = 0; m < 5; ++m) areas.push_back({{oracle::uniform(rng, -50, 50), oracle::uniform(rng, -50, 50)}, 1});
    const Vec2 p{oracle::uniform(rng, -50, 50), oracle::uniform(rng, -50, 50)};
    std::size_t best = 0;
    for (std::size_t m = 1; m < areas.size(); ++m)
      if (distance(p, areas[m].center) < distance(p, areas[best].center)) best = m;
    CHECK(closest_safe_area(p, areas) == best);
  }
}

TEST_CASE("formation_goals dispatches by kind") {
  FormationSpec s;
  s.kind = FormationKind::EncloseOpen;
  s.center = {3, 4};
  s.orientation = 1.0;
  s.count = 4;
  s.size = 2;
  check_points(formation_goals(s), enclose_open_goals({3, 4}, 1.0, 4, 2));
  s.kind = FormationKind::SeekLine;
  check_points(formation_goals(s), gather_goals({3, 4}, 1.0, 4, 2));
  s.kind = FormationKind::Herd;
  check_points(formation_goals(s), enclose_closed_goals({3, 4}, 1.0, 4, 2, 10));
}
