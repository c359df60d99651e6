#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "oracles.hpp"
#include "stringnet/clustering.hpp"

using namespace stringnet;

namespace {

StatePoint at(double x, double y, double vx = 0, double vy = 0) { return {{x, y, vx, vy}}; }

}  // namespace

TEST_CASE("weighted_distance") {
  CHECK(weighted_distance(at(0, 0), at(3, 4), 0.25) == 5.0);
  CHECK(weighted_distance(at(0, 0), at(0, 0, 3, 4), 0.25) == 2.5);
  CHECK(weighted_distance(at(1, 1, 2, 0), at(2, 1, 0, 0), 0.5) == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("dbscan_eps") {
  CHECK(dbscan_eps(2, 4, 3, 3) == doctest::Approx(1.0));
  CHECK(dbscan_eps(2, 6, 5, 3) == doctest::Approx(std::sqrt(3.0) / 2));
  const double hp = oracle::dbscan_eps_hp("1.5", 18, 18, 3);
  CHECK(dbscan_eps(1.5, 18, 18, 3) == doctest::Approx(hp).epsilon(1e-14));
  CHECK(hp == doctest::Approx(0.5004).epsilon(1e-3));
  // HalfMinPts uses floor(m_pts / 2) in place of m_pts - 1.
  CHECK(dbscan_eps(2, 4, 3, 5, EpsRule::HalfMinPts) == doctest::Approx(1.0));
  CHECK(dbscan_eps(2, 4, 3, 5, EpsRule::Chain) == doctest::Approx(2.0));
  CHECK_THROWS_AS((void)dbscan_eps(2, 2, 3, 3), std::domain_error);
}

TEST_CASE("dbscan hand-executed cases") {
  const std::vector<StatePoint> line{at(0, 0), at(0.5, 0), at(1, 0)};
  auto p = dbscan(line, 0.6, 3, 0.25);
  REQUIRE(p.clusters.size() == 1);
  CHECK(p.clusters[0].members == std::vector<int>{0, 1, 2});
  CHECK(p.noise.empty());

  auto plus = line;
  plus.push_back(at(10, 0));
  p = dbscan(plus, 0.6, 3, 0.25);
  REQUIRE(p.clusters.size() == 1);
  CHECK(p.clusters[0].members.size() == 3);
  CHECK(p.noise == std::vector<int>{3});

  p = dbscan(std::vector<StatePoint>{at(0, 0), at(0.1, 0)}, 5.0, 3, 0.25);
  CHECK(p.clusters.empty());
  CHECK(p.noise == std::vector<int>{0, 1});
}

TEST_CASE("dbscan separates by velocity as well as position") {
  std::vector<StatePoint> pts;
  for (int i = 0; i < 4; ++i) pts.push_back(at(0.1 * i, 0, 1, 0));
  for (int i = 0; i < 4; ++i) pts.push_back(at(0.1 * i, 0.05, -1, 0));
  const auto p = dbscan(pts, 0.5, 3, 0.25);
  CHECK(p.clusters.size() == 2);
}

TEST_CASE("dbscan partitions its input and respects m_pts") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = oracle::uniform_int(rng, 1, 40);
    const int m_pts = oracle::uniform_int(rng, 2, 5);
    std::vector<StatePoint> pts;
    for (int i = 0; i < n; ++i)
      pts.push_back(at(oracle::uniform(rng, 0, 5), oracle::uniform(rng, 0, 5), oracle::uniform(rng, -1, 1),
                       oracle::uniform(rng, -1, 1)));
    const double eps = oracle::uniform(rng, 0.3, 1.5);
    const auto p = dbscan(pts, eps, m_pts, 0.25);
    auto is_core = [&](int i) {
      int k = 0;
      for (const auto &q : pts) k += weighted_distance(pts[static_cast<std::size_t>(i)], q, 0.25) <= eps;
      return k >= m_pts;
    };
    std::vector<int> all = p.noise;
    for (int i : p.noise) CHECK_FALSE(is_core(i));
    for (const auto &c : p.clusters) {
      // Border points go to the first cluster that reaches them, so a later
      // cluster can be smaller than m_pts; it always holds a core point.
      CHECK(std::any_of(c.members.begin(), c.members.end(), is_core));
      CHECK(std::is_sorted(c.members.begin(), c.members.end()));
      all.insert(all.end(), c.members.begin(), c.members.end());
    }
    std::sort(all.begin(), all.end());
    std::vector<int> expect(static_cast<std::size_t>(n));
    std::iota(expect.begin(), expect.end(), 0);
    CHECK(all == expect);
  }
}

TEST_CASE("swarm summary") {
  const std::vector<Vec2> pos{{0, 0}, {2, 0}, {2, 2}, {0, 2}, {0.2, 0.2}};
  const auto s = summarize_swarm(pos, {4, 0, 1, 2, 3});
  CHECK(s.members == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(s.hull_center.x == doctest::Approx(1.0));
  CHECK(s.hull_center.y == doctest::Approx(1.0));
  CHECK(s.center_of_mass.x == doctest::Approx(0.84));
  CHECK(s.radius == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("recluster_trigger") {
  Swarm s;
  s.members = {0, 1, 2};
  s.radius = 0.5;
  CHECK_FALSE(recluster_trigger(s, 2, 4, 4));
  s.radius = 0.7;
  CHECK(recluster_trigger(s, 2, 4, 4));

  Swarm all;
  all.members = {0, 1, 2, 3, 4, 5};
  all.radius = max_enclosable_radius(2, 6);
  CHECK_FALSE(recluster_trigger(all, 2, 6, 6));
  all.radius = std::nextafter(all.radius, 10.0);
  CHECK(recluster_trigger(all, 2, 6, 6));
}
