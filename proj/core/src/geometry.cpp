#include "stringnet/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace stringnet {

Vec2 normalized_or_zero(Vec2 v, double tiny) {
  const double n = v.norm();
  if (n < tiny) return {};
  return v / n;
}

Vec2 rotate(Vec2 v, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

double wrap_angle(double theta) {
  double t = std::remainder(theta, 2.0 * kPi);
  if (t <= -kPi) t += 2.0 * kPi;
  return t;
}

bool disks_overlap(const Disk &a, const Disk &b) {
  return distance(a.center, b.center) <= a.radius + b.radius;
}

Vec2 mean(std::span<const Vec2> pts) {
  if (pts.empty()) throw std::invalid_argument("mean of empty point set");
  Vec2 acc;
  for (const auto &p : pts) acc += p;
  return acc / static_cast<double>(pts.size());
}

Vec2 closest_point_on_segment(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squared_norm();
  if (len2 <= 0.0) return a;
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return a + ab * t;
}

namespace {

int orientation(Vec2 a, Vec2 b, Vec2 c) {
  const double v = cross(b - a, c - a);
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return 0;
}

bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

}  // namespace

bool segments_intersect(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

bool point_in_polygon(Vec2 p, std::span<const Vec2> polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) return false;
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = polygon[i];
    const Vec2 b = polygon[j];
    if (orientation(a, b, p) == 0 && on_segment(a, b, p)) return true;
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

std::vector<Vec2> convex_hull(std::span<const Vec2> pts) {
  std::vector<Vec2> p(pts.begin(), pts.end());
  std::sort(p.begin(), p.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) return p;

  std::vector<Vec2> hull(2 * p.size());
  std::size_t k = 0;
  for (const auto &q : p) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], q - hull[k - 2]) <= 0.0) --k;
    hull[k++] = q;
  }
  for (std::size_t i = p.size() - 1, lower = k + 1; i-- > 0;) {
    const Vec2 q = p[i];
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], q - hull[k - 2]) <= 0.0) --k;
    hull[k++] = q;
  }
  hull.resize(k - 1);
  return hull;
}

Vec2 hull_centroid(std::span<const Vec2> pts) {
  if (pts.empty()) throw std::invalid_argument("hull centroid of empty point set");
  // Work relative to the mean for conditioning.
  const Vec2 origin = mean(pts);
  std::vector<Vec2> rel;
  rel.reserve(pts.size());
  for (const auto &p : pts) rel.push_back(p - origin);

  const auto hull = convex_hull(rel);
  if (hull.size() == 1) return origin + hull[0];
  if (hull.size() == 2) return origin + (hull[0] + hull[1]) * 0.5;

  double area2 = 0.0;
  Vec2 acc;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Vec2 a = hull[i];
    const Vec2 b = hull[(i + 1) % hull.size()];
    const double w = cross(a, b);
    area2 += w;
    acc += (a + b) * w;
  }
  if (std::abs(area2) < 1e-14) {
    // Numerically flat: use the extreme pair.
    auto [lo, hi] = std::minmax_element(hull.begin(), hull.end(), [](Vec2 a, Vec2 b) {
      return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    return origin + (*lo + *hi) * 0.5;
  }
  return origin + acc / (3.0 * area2);
}

}  // namespace stringnet
