#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "stringnet/control.hpp"
#include "stringnet/dynamics.hpp"
#include "stringnet/formation.hpp"

using namespace stringnet;

namespace {

DefenderControlParams dparams() {
  DefenderControlParams p;
  p.u_bar = 5.0;
  return p;
}

struct Net {
  std::vector<Vec2> vertices;
  std::vector<Segment> edges;
};

Net closed_net(Vec2 c, int n, double rho) {
  Net net;
  net.vertices = enclose_closed_goals(c, 0.0, n, rho, 10.0);
  for (std::size_t i = 0; i < net.vertices.size(); ++i)
    net.edges.push_back({net.vertices[i], net.vertices[(i + 1) % net.vertices.size()]});
  return net;
}

int crossings(Vec2 p0, Vec2 p1, const Net &net) {
  int k = 0;
  for (const auto &e : net.edges)
    if (segments_intersect(p0, p1, e.a, e.b)) ++k;
  return k;
}

}  // namespace

TEST_CASE("defender_control tracking law") {
  const auto p = dparams();
  const AgentState at_goal{{1, 1}, {0.5, 0}};
  const Vec2 u = defender_control(at_goal, {1, 1}, {0.5, 0}, {}, {}, p);
  CHECK(u.x == doctest::Approx(p.c_d * 0.5 * 0.5));
  CHECK(u.y == doctest::Approx(0.0));

  const Vec2 back = defender_control({{2, 0}, {0, 0}}, {0, 0}, {}, {}, {}, p);
  CHECK(back.x < 0);
  CHECK(back.y == doctest::Approx(0.0));

  std::mt19937_64 rng(3);
  for (int i = 0; i < 5000; ++i) {
    const AgentState s{{oracle::uniform(rng, -50, 50), oracle::uniform(rng, -50, 50)},
                       {oracle::uniform(rng, -2, 2), oracle::uniform(rng, -2, 2)}};
    const std::vector<Vec2> nbrs{{oracle::uniform(rng, -50, 50), oracle::uniform(rng, -50, 50)}};
    const std::vector<Disk> others{{{oracle::uniform(rng, -50, 50), oracle::uniform(rng, -50, 50)}, 3}};
    const Vec2 g{oracle::uniform(rng, -50, 50), oracle::uniform(rng, -50, 50)};
    CHECK(defender_control(s, g, {}, nbrs, others, p).norm() <= p.u_bar * (1 + 1e-15));
  }
}

TEST_CASE("defender_control string and group terms") {
  const auto p = dparams();
  const AgentState s{{0, 0}, {0, 0}};
  // A neighbor near full stretch pulls toward itself.
  const std::vector<Vec2> far{{2.9, 0}};
  CHECK(defender_control(s, {0, 0}, {}, far, {}, p).x > 0);
  const std::vector<Vec2> near{{1.0, 0}};
  CHECK(defender_control(s, {0, 0}, {}, near, {}, p).norm() == doctest::Approx(0.0));
  // Another group's circle close by pushes away from it.
  const std::vector<Disk> others{{{0, 1.2}, 1.0}};
  CHECK(defender_control(s, {0, 0}, {}, {}, others, p).y < 0);
}

TEST_CASE("bounding_circle") {
  const std::vector<Vec2> pts{{0, 0}, {2, 0}, {1, 3}};
  const auto d = bounding_circle(pts);
  CHECK(d.center.x == doctest::Approx(1.0));
  CHECK(d.center.y == doctest::Approx(1.0));
  CHECK(d.radius == doctest::Approx(2.0));
}

TEST_CASE("attacker_control goal seeking and avoidance") {
  AttackerPolicyConfig pol;
  AttackerControlParams p;
  AttackerView v;
  v.self = {{3, 4}, {0, 0}};
  v.target = {0, 0};
  const Vec2 u = attacker_control(v, pol, p);
  CHECK(u.norm() == doctest::Approx(p.u_bar));
  CHECK(u.x == doctest::Approx(-0.6 * p.u_bar));
  CHECK(u.y == doctest::Approx(-0.8 * p.u_bar));

  v.self = {{0, 10}, {0, 0}};
  const std::vector<Vec2> ahead{{0, 8}};
  v.sensed_defenders = ahead;
  const Vec2 w = attacker_control(v, pol, p);
  CHECK(std::abs(w.x) > 1e-6);

  pol.kind = AttackerPolicyKind::SplitOnBlock;
  const Vec2 s = attacker_control(v, pol, p);
  CHECK(std::abs(s.x) > std::abs(w.x));
}

TEST_CASE("string_constraint_force") {
  const std::vector<Segment> edge{{{-1, 0}, {1, 0}}};
  CHECK(string_constraint_force({{0, 5}, {0, 0}}, edge, 0.45, 3.0) == Vec2{});
  const Vec2 f = string_constraint_force({{0, 0.225}, {0, -1}}, edge, 0.45, 3.0);
  CHECK(f.x == doctest::Approx(0.0));
  CHECK(f.y > 0);
  const Vec2 on = string_constraint_force({{0, 0}, {0, -1}}, edge, 0.45, 3.0);
  CHECK(on.y > 0);
}

TEST_CASE("an enclosed attacker stays inside a closed net") {
  const double rho_sn = 1.5;
  const Net net = closed_net({0, 0}, 6, rho_sn);
  AttackerPolicyConfig pol;
  AttackerControlParams p;
  p.u_bar = 3.0;
  p.sensing_radius = 6.0;
  p.d_act = 0.45;

  AgentState a{{0.2, -0.1}, {0, 0}};
  double worst = 0.0;
  int crossed = 0;
  for (int i = 0; i < 10000; ++i) {
    AttackerView v;
    v.self = a;
    v.target = {0, -30};
    v.sensed_defenders = net.vertices;
    v.net_edges = net.edges;
    const auto next = step(a, {attacker_control(v, pol, p), p.u_bar}, 1.0, 0.01);
    crossed += crossings(a.r, next.r, net);
    a = next;
    worst = std::max(worst, a.r.norm());
  }
  CHECK(crossed == 0);
  CHECK(worst < rho_sn);
}

TEST_CASE("random wandering inside a closed net never crosses a string") {
  const Net net = closed_net({5, -2}, 7, 1.8);
  AttackerPolicyConfig pol;
  pol.wander_gain = 1.0;
  AttackerControlParams p;
  p.u_bar = 3.0;
  p.d_act = 0.45;
  std::mt19937_64 rng(61);
  AgentState a{{5, -2}, {0, 0}};
  int crossed = 0;
  for (int i = 0; i < 100000; ++i) {
    AttackerView v;
    v.self = a;
    v.target = {5.0 + 40.0 * std::cos(i * 1e-3), -2.0 + 40.0 * std::sin(i * 1e-3)};
    v.sensed_defenders = net.vertices;
    v.net_edges = net.edges;
    v.wander = unit_at(oracle::uniform(rng, 0, 2 * kPi));
    const auto next = step(a, {attacker_control(v, pol, p), p.u_bar}, 1.0, 0.01);
    crossed += crossings(a.r, next.r, net);
    a = next;
  }
  CHECK(crossed == 0);
  CHECK(point_in_polygon(a.r, net.vertices));
}
